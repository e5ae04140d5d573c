#pragma once

#include <cmath>
#include <cstddef>
#include <vector>

#include "zerocycle/errors.hpp"
#include "zerocycle/rng.hpp"
#include "zerocycle/scalar.hpp"

namespace zerocycle {

/// Minimal dense matrix over a scalar mode.  Only what the geometry layer
/// needs: apply to a vector, identity, random unitary, determinant.
template <class C>
class Mat {
 public:
  Mat() : rows_(0), cols_(0) {}
  Mat(int rows, int cols)
      : rows_(rows), cols_(cols), data_(std::size_t(rows) * cols, scalar_ops<C>::from_int(0)) {
    require(rows >= 0 && cols >= 0, errc::bad_input, "negative matrix shape");
  }

  static Mat identity(int n) {
    Mat m(n, n);
    for (int i = 0; i < n; ++i) m(i, i) = scalar_ops<C>::from_int(1);
    return m;
  }

  int rows() const { return rows_; }
  int cols() const { return cols_; }

  C& operator()(int i, int j) { return data_[std::size_t(i) * cols_ + j]; }
  const C& operator()(int i, int j) const { return data_[std::size_t(i) * cols_ + j]; }

  std::vector<C> apply(const std::vector<C>& v) const {
    require(int(v.size()) == cols_, errc::dimension_mismatch, "matrix-vector size mismatch");
    std::vector<C> out(rows_, scalar_ops<C>::from_int(0));
    for (int i = 0; i < rows_; ++i)
      for (int j = 0; j < cols_; ++j) out[i] += (*this)(i, j) * v[j];
    return out;
  }

  bool is_identity(double tol = 0.0) const {
    if (rows_ != cols_) return false;
    for (int i = 0; i < rows_; ++i)
      for (int j = 0; j < cols_; ++j) {
        cdouble want(i == j ? 1.0 : 0.0, 0.0);
        if (std::abs(scalar_ops<C>::to_cdouble((*this)(i, j)) - want) > tol) return false;
      }
    return true;
  }

 private:
  int rows_, cols_;
  std::vector<C> data_;
};

/// Determinant by partial-pivoted Gaussian elimination.  Floating mode only.
inline cdouble det(Mat<cdouble> m) {
  require(m.rows() == m.cols(), errc::bad_input, "determinant of non-square matrix");
  int n = m.rows();
  cdouble d(1.0, 0.0);
  for (int k = 0; k < n; ++k) {
    int piv = k;
    for (int i = k + 1; i < n; ++i)
      if (std::abs(m(i, k)) > std::abs(m(piv, k))) piv = i;
    if (std::abs(m(piv, k)) == 0.0) return cdouble(0.0, 0.0);
    if (piv != k) {
      for (int j = k; j < n; ++j) std::swap(m(piv, j), m(k, j));
      d = -d;
    }
    d *= m(k, k);
    for (int i = k + 1; i < n; ++i) {
      cdouble f = m(i, k) / m(k, k);
      for (int j = k; j < n; ++j) m(i, j) -= f * m(k, j);
    }
  }
  return d;
}

/// Haar-ish random unitary: complex Gaussian entries, then modified
/// Gram-Schmidt.  Deterministic in the seed.
inline Mat<cdouble> random_unitary(int n, std::uint64_t seed) {
  require(n >= 1, errc::bad_input, "unitary dimension must be positive");
  SplitMix64 g(seed);
  Mat<cdouble> m(n, n);
  for (int attempt = 0; attempt < 16; ++attempt) {
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j) m(i, j) = g.gaussian_complex();
    bool ok = true;
    // Columns are orthonormalized in place.
    for (int j = 0; j < n && ok; ++j) {
      for (int k = 0; k < j; ++k) {
        cdouble dot(0.0, 0.0);
        for (int i = 0; i < n; ++i) dot += std::conj(m(i, k)) * m(i, j);
        for (int i = 0; i < n; ++i) m(i, j) -= dot * m(i, k);
      }
      double norm2 = 0.0;
      for (int i = 0; i < n; ++i) norm2 += std::norm(m(i, j));
      if (norm2 < 1e-8) {
        ok = false;
        break;
      }
      double inv = 1.0 / std::sqrt(norm2);
      for (int i = 0; i < n; ++i) m(i, j) *= inv;
    }
    if (ok) return m;
  }
  fail(errc::no_convergence, "could not orthonormalize random matrix");
}

}  // namespace zerocycle
