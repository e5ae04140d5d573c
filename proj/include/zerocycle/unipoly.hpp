#pragma once

#include <algorithm>
#include <cstdint>
#include <span>
#include <utility>
#include <vector>

#include "zerocycle/errors.hpp"
#include "zerocycle/scalar.hpp"

namespace zerocycle {

/// Dense univariate polynomial, coefficients in ascending degree order.
/// Canonical form: the leading stored coefficient is nonzero (the zero
/// polynomial stores no coefficients).  In floating mode, construction trims
/// leading coefficients below `trim_rel` times the largest magnitude; exact
/// mode trims exact zeros only.
template <class C>
class UniPoly {
 public:
  static constexpr double trim_rel = 1e-14;

  UniPoly() = default;

  explicit UniPoly(std::vector<C> coeffs) : c_(std::move(coeffs)) { trim(); }

  static UniPoly zero() { return UniPoly(); }

  static UniPoly constant(C v) { return UniPoly(std::vector<C>{std::move(v)}); }

  /// lead * prod (z - r_i).
  static UniPoly from_roots(std::span<const C> roots, C lead) {
    std::vector<C> c{std::move(lead)};
    for (const C& r : roots) {
      c.push_back(scalar_ops<C>::from_int(0));
      for (std::size_t j = c.size() - 1; j > 0; --j)
        c[j] = c[j - 1] - r * c[j];
      c[0] = (-r) * c[0];
    }
    return UniPoly(std::move(c));
  }

  bool is_zero() const { return c_.empty(); }

  /// Degree, or -1 for the zero polynomial.
  int degree() const { return int(c_.size()) - 1; }

  const std::vector<C>& coeffs() const { return c_; }

  C coeff(int k) const {
    return (k >= 0 && k < int(c_.size())) ? c_[std::size_t(k)] : scalar_ops<C>::from_int(0);
  }

  C lead() const {
    require(!is_zero(), errc::zero_polynomial, "leading coefficient of zero polynomial");
    return c_.back();
  }

  /// Horner evaluation.
  C operator()(const C& z) const {
    if (c_.empty()) return scalar_ops<C>::from_int(0);
    C acc = c_.back();
    for (std::size_t i = c_.size() - 1; i-- > 0;) acc = acc * z + c_[i];
    return acc;
  }

  UniPoly derivative() const {
    if (c_.size() <= 1) return UniPoly();
    std::vector<C> d(c_.size() - 1);
    for (std::size_t k = 1; k < c_.size(); ++k)
      d[k - 1] = c_[k] * scalar_ops<C>::from_int(long(k));
    return UniPoly(std::move(d));
  }

  /// Synthetic division by (z - r); returns {quotient, remainder}.
  std::pair<UniPoly, C> divide_linear(const C& r) const {
    if (c_.empty()) return {UniPoly(), scalar_ops<C>::from_int(0)};
    std::vector<C> q(c_.size() - 1);
    C carry = c_.back();
    for (std::size_t i = c_.size() - 1; i-- > 0;) {
      if (i < q.size()) q[i] = carry;
      carry = c_[i] + r * carry;
    }
    return {UniPoly(std::move(q)), carry};
  }

  /// Drops the k lowest coefficients (divides by z^k assuming they vanish,
  /// which callers must have checked).
  UniPoly shifted_down(int k) const {
    if (k <= 0) return *this;
    if (k >= int(c_.size())) return UniPoly();
    return UniPoly(std::vector<C>(c_.begin() + k, c_.end()));
  }

  UniPoly operator+(const UniPoly& o) const {
    std::vector<C> s(std::max(c_.size(), o.c_.size()), scalar_ops<C>::from_int(0));
    for (std::size_t i = 0; i < c_.size(); ++i) s[i] += c_[i];
    for (std::size_t i = 0; i < o.c_.size(); ++i) s[i] += o.c_[i];
    return UniPoly(std::move(s));
  }

  UniPoly operator-() const {
    std::vector<C> s(c_);
    for (auto& v : s) v = -v;
    UniPoly r;
    r.c_ = std::move(s);  // negation cannot create new leading zeros
    return r;
  }

  UniPoly operator-(const UniPoly& o) const { return *this + (-o); }

  UniPoly operator*(const UniPoly& o) const {
    if (c_.empty() || o.c_.empty()) return UniPoly();
    std::vector<C> p(c_.size() + o.c_.size() - 1, scalar_ops<C>::from_int(0));
    for (std::size_t i = 0; i < c_.size(); ++i)
      for (std::size_t j = 0; j < o.c_.size(); ++j) p[i + j] += c_[i] * o.c_[j];
    return UniPoly(std::move(p));
  }

  UniPoly operator*(const C& s) const {
    std::vector<C> p(c_);
    for (auto& v : p) v = v * s;
    return UniPoly(std::move(p));
  }

  UniPoly pow(unsigned e) const {
    UniPoly acc = constant(scalar_ops<C>::from_int(1));
    UniPoly base = *this;
    while (e) {
      if (e & 1u) acc = acc * base;
      base = base * base;
      e >>= 1u;
    }
    return acc;
  }

  /// Largest |coefficient| (floating view of exact coefficients).
  double max_abs_coeff() const {
    double m = 0.0;
    for (const C& c : c_) m = std::max(m, scalar_ops<C>::abs(c));
    return m;
  }

  /// sum_j |c_j| * |z|^j, the magnitude Horner sees at |z| and the natural
  /// scale for residual tests.  Using |z| rather than max(1,|z|) keeps the
  /// scale honest inside the unit disc, where distinct tiny roots would
  /// otherwise pass for one multiple root.
  double eval_scale(double zabs) const {
    double s = 0.0, p = 1.0;
    for (const C& c : c_) {
      s += scalar_ops<C>::abs(c) * p;
      p *= zabs;
    }
    return s;
  }

  UniPoly<cdouble> to_float() const {
    std::vector<cdouble> f(c_.size());
    for (std::size_t i = 0; i < c_.size(); ++i) f[i] = scalar_ops<C>::to_cdouble(c_[i]);
    return UniPoly<cdouble>(std::move(f));
  }

 private:
  void trim() {
    if constexpr (scalar_ops<C>::is_exact) {
      while (!c_.empty() && scalar_ops<C>::is_zero(c_.back())) c_.pop_back();
    } else {
      double m = 0.0;
      for (const C& c : c_) m = std::max(m, scalar_ops<C>::abs(c));
      if (m == 0.0) {
        c_.clear();
        return;
      }
      while (!c_.empty() && scalar_ops<C>::abs(c_.back()) <= trim_rel * m) c_.pop_back();
    }
  }

  std::vector<C> c_;
};

}  // namespace zerocycle
