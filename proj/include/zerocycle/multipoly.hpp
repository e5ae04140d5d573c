#pragma once

#include <algorithm>
#include <cstdint>
#include <map>
#include <numeric>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "zerocycle/errors.hpp"
#include "zerocycle/matrix.hpp"
#include "zerocycle/scalar.hpp"
#include "zerocycle/unipoly.hpp"

namespace zerocycle {

struct Monomial {
  std::vector<std::uint32_t> exp;
  std::uint32_t tdeg = 0;

  static Monomial of(std::vector<std::uint32_t> e) {
    Monomial m;
    m.tdeg = std::accumulate(e.begin(), e.end(), std::uint32_t{0});
    m.exp = std::move(e);
    return m;
  }
};

/// Graded lexicographic order: lower total degree first, lex within a degree.
/// The map ordering makes the first stored term realize the minimal total
/// degree, which is what order-of-vanishing queries read off.
struct MonomialLess {
  bool operator()(const Monomial& a, const Monomial& b) const {
    if (a.tdeg != b.tdeg) return a.tdeg < b.tdeg;
    return a.exp < b.exp;
  }
};

/// Sparse multivariate polynomial over scalar mode C (cdouble or CRat).
/// Terms live in a graded-lex ordered map; zero coefficients are never
/// stored.
template <class C>
class MultiPoly {
 public:
  using term_map = std::map<Monomial, C, MonomialLess>;

  explicit MultiPoly(int nvars) : nvars_(nvars) {
    require(nvars >= 1, errc::bad_input, "polynomial needs at least one variable");
  }

  static MultiPoly zero(int nvars) { return MultiPoly(nvars); }

  static MultiPoly constant(int nvars, C c) {
    MultiPoly p(nvars);
    p.add_term(std::vector<std::uint32_t>(nvars, 0), std::move(c));
    return p;
  }

  static MultiPoly variable(int nvars, int i) {
    MultiPoly p(nvars);
    require(i >= 0 && i < nvars, errc::bad_input, "variable index out of range");
    std::vector<std::uint32_t> e(nvars, 0);
    e[i] = 1;
    p.add_term(std::move(e), scalar_ops<C>::from_int(1));
    return p;
  }

  int nvars() const { return nvars_; }
  const term_map& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }
  std::size_t term_count() const { return terms_.size(); }

  /// Accumulates a coefficient onto a monomial; removes the term if the sum
  /// is exactly zero.
  void add_term(std::vector<std::uint32_t> e, C c) {
    require(int(e.size()) == nvars_, errc::dimension_mismatch, "exponent arity mismatch");
    if (scalar_ops<C>::is_zero(c)) return;
    Monomial m = Monomial::of(std::move(e));
    auto it = terms_.find(m);
    if (it == terms_.end()) {
      terms_.emplace(std::move(m), std::move(c));
    } else {
      it->second += c;
      if (scalar_ops<C>::is_zero(it->second)) terms_.erase(it);
    }
  }

  int total_degree() const { return terms_.empty() ? -1 : int(terms_.rbegin()->first.tdeg); }

  int degree_in_var(int var) const {
    check_var(var);
    int d = -1;
    for (const auto& [m, c] : terms_) d = std::max(d, int(m.exp[var]));
    return d;
  }

  double max_abs_coeff() const {
    double m = 0.0;
    for (const auto& [mono, c] : terms_) m = std::max(m, scalar_ops<C>::abs(c));
    return m;
  }

  MultiPoly operator+(const MultiPoly& o) const {
    require(nvars_ == o.nvars_, errc::dimension_mismatch, "mixed-arity sum");
    MultiPoly r = *this;
    for (const auto& [m, c] : o.terms_) r.add_term(m.exp, c);
    return r;
  }

  MultiPoly operator-() const {
    MultiPoly r(nvars_);
    for (const auto& [m, c] : terms_) r.terms_.emplace(m, -c);
    return r;
  }

  MultiPoly operator-(const MultiPoly& o) const { return *this + (-o); }

  MultiPoly operator*(const MultiPoly& o) const {
    require(nvars_ == o.nvars_, errc::dimension_mismatch, "mixed-arity product");
    MultiPoly r(nvars_);
    for (const auto& [ma, ca] : terms_)
      for (const auto& [mb, cb] : o.terms_) {
        std::vector<std::uint32_t> e(static_cast<std::size_t>(nvars_));
        for (int i = 0; i < nvars_; ++i) e[i] = ma.exp[i] + mb.exp[i];
        r.add_term(std::move(e), ca * cb);
      }
    return r;
  }

  MultiPoly operator*(const C& s) const {
    MultiPoly r(nvars_);
    for (const auto& [m, c] : terms_) r.add_term(m.exp, c * s);
    return r;
  }

  MultiPoly pow(unsigned e) const {
    MultiPoly acc = constant(nvars_, scalar_ops<C>::from_int(1));
    MultiPoly base = *this;
    while (e) {
      if (e & 1u) acc = acc * base;
      base = base * base;
      e >>= 1u;
    }
    return acc;
  }

  C evaluate(std::span<const C> z) const {
    require(int(z.size()) == nvars_, errc::dimension_mismatch, "evaluation point arity mismatch");
    // Per-variable power tables; summation follows map order, so results are
    // reproducible bit for bit.
    std::vector<std::vector<C>> pw(static_cast<std::size_t>(nvars_));
    for (int i = 0; i < nvars_; ++i) {
      int d = degree_in_var(i);
      pw[i].reserve(std::size_t(d + 1));
      pw[i].push_back(scalar_ops<C>::from_int(1));
      for (int k = 1; k <= d; ++k) pw[i].push_back(pw[i].back() * z[i]);
    }
    C acc = scalar_ops<C>::from_int(0);
    for (const auto& [m, c] : terms_) {
      C t = c;
      for (int i = 0; i < nvars_; ++i)
        if (m.exp[i]) t *= pw[i][m.exp[i]];
      acc += t;
    }
    return acc;
  }

  MultiPoly derivative(int var) const {
    check_var(var);
    MultiPoly r(nvars_);
    for (const auto& [m, c] : terms_) {
      if (m.exp[var] == 0) continue;
      std::vector<std::uint32_t> e = m.exp;
      e[var] -= 1;
      r.add_term(std::move(e), c * scalar_ops<C>::from_int(long(m.exp[var])));
    }
    return r;
  }

  /// Substitutes x = b + A y.  A must be square of size nvars.
  MultiPoly compose_affine(const Mat<C>& a, std::span<const C> b) const {
    require(a.rows() == nvars_ && a.cols() == nvars_, errc::dimension_mismatch,
            "affine map shape mismatch");
    require(int(b.size()) == nvars_, errc::dimension_mismatch, "affine offset arity mismatch");
    std::vector<MultiPoly> lin;
    lin.reserve(std::size_t(nvars_));
    for (int i = 0; i < nvars_; ++i) {
      MultiPoly li = constant(nvars_, b[i]);
      for (int j = 0; j < nvars_; ++j) {
        if (scalar_ops<C>::is_zero(a(i, j))) continue;
        li = li + variable(nvars_, j) * a(i, j);
      }
      lin.push_back(std::move(li));
    }
    // Power cache per variable, filled on demand.
    std::vector<std::vector<MultiPoly>> pw(static_cast<std::size_t>(nvars_));
    for (int i = 0; i < nvars_; ++i) pw[i].push_back(constant(nvars_, scalar_ops<C>::from_int(1)));
    MultiPoly r(nvars_);
    for (const auto& [m, c] : terms_) {
      MultiPoly t = constant(nvars_, c);
      for (int i = 0; i < nvars_; ++i) {
        while (pw[i].size() <= m.exp[i]) pw[i].push_back(pw[i].back() * lin[std::size_t(i)]);
        if (m.exp[i]) t = t * pw[i][m.exp[i]];
      }
      for (const auto& [mt, ct] : t.terms_) r.add_term(mt.exp, ct);
    }
    return r;
  }

  /// f(x + a).  Translation preserves the top-degree form exactly.
  MultiPoly shift(std::span<const C> a) const {
    return compose_affine(Mat<C>::identity(nvars_), a);
  }

  /// One-variable restriction s -> f(p + s v).
  UniPoly<C> restrict_to_line(std::span<const C> p, std::span<const C> v) const {
    require(int(p.size()) == nvars_ && int(v.size()) == nvars_, errc::dimension_mismatch,
            "line point/direction arity mismatch");
    bool all_zero = true;
    for (const C& vi : v)
      if (!scalar_ops<C>::is_zero(vi)) all_zero = false;
    require(!all_zero, errc::zero_direction, "line direction is zero");
    std::vector<std::vector<UniPoly<C>>> pw(static_cast<std::size_t>(nvars_));
    std::vector<UniPoly<C>> lin;
    lin.reserve(std::size_t(nvars_));
    for (int i = 0; i < nvars_; ++i) {
      lin.push_back(UniPoly<C>(std::vector<C>{p[i], v[i]}));
      pw[i].push_back(UniPoly<C>::constant(scalar_ops<C>::from_int(1)));
    }
    UniPoly<C> r;
    for (const auto& [m, c] : terms_) {
      UniPoly<C> t = UniPoly<C>::constant(c);
      for (int i = 0; i < nvars_; ++i) {
        while (pw[i].size() <= m.exp[i]) pw[i].push_back(pw[i].back() * lin[std::size_t(i)]);
        if (m.exp[i]) t = t * pw[i][m.exp[i]];
      }
      r = r + t;
    }
    return r;
  }

  /// Fixes one variable to a value; the result loses that variable slot.
  MultiPoly specialize_var(int var, const C& value) const {
    check_var(var);
    require(nvars_ >= 2, errc::bad_input, "cannot specialize the only variable");
    std::vector<C> pw{scalar_ops<C>::from_int(1)};
    int d = degree_in_var(var);
    for (int k = 1; k <= d; ++k) pw.push_back(pw.back() * value);
    MultiPoly r(nvars_ - 1);
    for (const auto& [m, c] : terms_) {
      std::vector<std::uint32_t> e;
      e.reserve(std::size_t(nvars_ - 1));
      for (int i = 0; i < nvars_; ++i)
        if (i != var) e.push_back(m.exp[i]);
      r.add_term(std::move(e), c * pw[m.exp[var]]);
    }
    return r;
  }

  /// Coefficient polynomials with respect to one variable: result[k] is the
  /// coefficient of var^k, a polynomial in the remaining variables.
  std::vector<MultiPoly> coeffs_in_var(int var) const {
    check_var(var);
    require(nvars_ >= 2, errc::bad_input, "coefficient split needs another variable");
    int d = degree_in_var(var);
    std::vector<MultiPoly> out(std::size_t(std::max(d, 0) + 1), MultiPoly(nvars_ - 1));
    for (const auto& [m, c] : terms_) {
      std::vector<std::uint32_t> e;
      e.reserve(std::size_t(nvars_ - 1));
      for (int i = 0; i < nvars_; ++i)
        if (i != var) e.push_back(m.exp[i]);
      out[m.exp[var]].add_term(std::move(e), c);
    }
    return out;
  }

  /// Coefficient-level upper bound for |f| on a polydisc:
  /// sum |c| * prod (|center_i| + r_i)^{e_i}.
  double sup_bound(std::span<const cdouble> center, std::span<const double> radii) const {
    require(int(center.size()) == nvars_ && int(radii.size()) == nvars_, errc::dimension_mismatch,
            "polydisc arity mismatch");
    double s = 0.0;
    for (const auto& [m, c] : terms_) {
      double t = scalar_ops<C>::abs(c);
      for (int i = 0; i < nvars_; ++i) {
        double b = std::abs(center[i]) + radii[i];
        for (std::uint32_t k = 0; k < m.exp[i]; ++k) t *= b;
      }
      s += t;
    }
    return s;
  }

  MultiPoly<cdouble> to_float() const {
    MultiPoly<cdouble> r(nvars_);
    for (const auto& [m, c] : terms_) r.add_term(m.exp, scalar_ops<C>::to_cdouble(c));
    return r;
  }

 private:
  void check_var(int var) const {
    require(var >= 0 && var < nvars_, errc::bad_input, "variable index out of range");
  }

  int nvars_;
  term_map terms_;
};

/// Order of vanishing of f at a: the minimal total degree of f(x + a).
/// Returns nullopt for the (numerically) zero polynomial, i.e. order +inf.
/// In floating mode, shifted terms with |coeff| <= drop_tol * max|coeff| are
/// discarded before the minimum is taken; exact mode ignores drop_tol.
template <class C>
std::optional<std::uint32_t> order_at(const MultiPoly<C>& f,
                                      std::span<const std::type_identity_t<C>> a,
                                      double drop_tol = 1e-12) {
  if (f.is_zero()) return std::nullopt;
  bool at_origin = true;
  for (const C& ai : a)
    if (!scalar_ops<C>::is_zero(ai)) at_origin = false;
  MultiPoly<C> g = at_origin ? f : f.shift(a);
  if constexpr (scalar_ops<C>::is_exact) {
    if (g.is_zero()) return std::nullopt;
    return g.terms().begin()->first.tdeg;
  } else {
    double cutoff = drop_tol * g.max_abs_coeff();
    std::optional<std::uint32_t> best;
    for (const auto& [m, c] : g.terms()) {
      if (scalar_ops<C>::abs(c) <= cutoff) continue;
      best = m.tdeg;  // map order: first surviving term has minimal tdeg
      break;
    }
    return best;
  }
}

template <class C>
std::optional<std::uint32_t> order_at_origin(const MultiPoly<C>& f, double drop_tol = 1e-12) {
  std::vector<C> a(std::size_t(f.nvars()), scalar_ops<C>::from_int(0));
  return order_at(f, a, drop_tol);
}

/// Dense view of a one-variable polynomial.
template <class C>
UniPoly<C> to_unipoly(const MultiPoly<C>& f) {
  require(f.nvars() == 1, errc::bad_input, "dense conversion needs a one-variable polynomial");
  std::vector<C> c(std::size_t(std::max(f.total_degree(), 0) + 1), scalar_ops<C>::from_int(0));
  for (const auto& [m, v] : f.terms()) c[m.exp[0]] = v;
  return UniPoly<C>(std::move(c));
}

}  // namespace zerocycle
