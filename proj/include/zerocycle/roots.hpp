#pragma once

#include <algorithm>
#include <cmath>
#include <complex>
#include <limits>
#include <numbers>
#include <vector>

#include "zerocycle/errors.hpp"
#include "zerocycle/unipoly.hpp"

namespace zerocycle {

struct RootSolveOptions {
  double tol = 1e-12;  // residual target relative to coefficient scale
  int max_iter = 200;
  int restarts = 3;
};

struct RootCluster {
  cdouble center;
  int multiplicity = 0;
  double radius = 0.0;    // max member distance from center
  double residual = 0.0;  // |p(center)|
};

namespace detail {

inline bool lex_less(const cdouble& a, const cdouble& b) {
  if (a.real() != b.real()) return a.real() < b.real();
  return a.imag() < b.imag();
}

/// Single-linkage grouping with a per-pair tolerance.  Returns group index
/// per element; runs O(n^2), fine at the degrees this library serves.
template <class TolFn>
inline std::vector<int> link_groups(const std::vector<cdouble>& z, TolFn&& tol) {
  int n = int(z.size());
  std::vector<int> parent(n);
  for (int i = 0; i < n; ++i) parent[i] = i;
  auto find = [&](int i) {
    while (parent[i] != i) i = parent[i] = parent[parent[i]];
    return i;
  };
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j)
      if (std::abs(z[i] - z[j]) <= tol(z[i], z[j])) {
        int a = find(i), b = find(j);
        if (a != b) parent[std::max(a, b)] = std::min(a, b);
      }
  std::vector<int> g(n);
  for (int i = 0; i < n; ++i) g[i] = find(i);
  return g;
}

/// Newton iteration on q from z0; returns the landing point (caller checks
/// residuals, no convergence promise here).
inline cdouble newton_polish(const UniPoly<cdouble>& q, cdouble z0, int iters = 48) {
  cdouble z = z0;
  const UniPoly<cdouble> dq = q.derivative();
  for (int it = 0; it < iters; ++it) {
    cdouble f = q(z);
    cdouble df = dq(z);
    if (std::abs(df) == 0.0) break;
    cdouble step = f / df;
    z -= step;
    if (std::abs(step) <= 1e-17 * std::max(1.0, std::abs(z))) break;
  }
  return z;
}

/// Residual floor reachable in double precision at z, Bini-style.
inline double machine_floor(const UniPoly<cdouble>& p, double zabs) {
  return 64.0 * double(std::max(p.degree(), 1)) * std::numeric_limits<double>::epsilon() *
         p.eval_scale(zabs);
}

/// Snaps groups of approximations that look like one multiple root onto a
/// Newton-refined root of the (m-1)-th derivative.  A snap is kept only when
/// the refined point drives |p| down to the machine floor; otherwise the
/// group is split at a tighter tolerance and retried, so genuinely distinct
/// close roots are left alone.
inline void polish_multiple_roots(const UniPoly<cdouble>& p, std::vector<cdouble>& roots,
                                  std::vector<int> idx, double coarse_tol_rel, int depth) {
  if (idx.size() < 2 || depth > 8) return;
  std::vector<cdouble> pts;
  pts.reserve(idx.size());
  for (int i : idx) pts.push_back(roots[std::size_t(i)]);
  auto tol = [&](const cdouble& a, const cdouble& b) {
    return coarse_tol_rel * std::max({1.0, std::abs(a), std::abs(b)});
  };
  std::vector<int> g = link_groups(pts, tol);
  // Representative -> member positions within idx.
  std::vector<std::vector<int>> groups(pts.size());
  for (std::size_t k = 0; k < pts.size(); ++k) groups[std::size_t(g[k])].push_back(int(k));
  bool single_group = false;
  for (auto& mem : groups)
    if (mem.size() == pts.size()) single_group = true;
  for (auto& mem : groups) {
    if (mem.size() < 2) continue;
    int m = int(mem.size());
    cdouble mean(0.0, 0.0);
    for (int k : mem) mean += pts[std::size_t(k)];
    mean /= double(m);
    UniPoly<cdouble> d = p;
    for (int j = 0; j < m - 1; ++j) d = d.derivative();
    cdouble z = newton_polish(d, mean);
    if (std::abs(p(z)) <= machine_floor(p, std::abs(z))) {
      for (int k : mem) roots[std::size_t(idx[std::size_t(k)])] = z;
    } else if (!(single_group && coarse_tol_rel <= 1e-15)) {
      std::vector<int> sub;
      for (int k : mem) sub.push_back(idx[std::size_t(k)]);
      polish_multiple_roots(p, roots, std::move(sub), coarse_tol_rel / 8.0, depth + 1);
    }
  }
}

}  // namespace detail

/// All complex roots with multiplicity (repeated entries), sorted by
/// (re, im).  Aberth-Ehrlich simultaneous iteration with deterministic
/// circular starts, followed by a multiple-root polish that restores
/// machine-precision locations for root clusters.  Throws no_convergence if
/// the iteration stalls across restarts.
inline std::vector<cdouble> all_roots(const UniPoly<cdouble>& p_in,
                                      const RootSolveOptions& opt = {}) {
  require(!p_in.is_zero(), errc::zero_polynomial, "root solve on the zero polynomial");
  require(p_in.degree() >= 1, errc::degree_zero, "root solve on a constant");
  const double eps = std::numeric_limits<double>::epsilon();

  // Exact zero low-order coefficients give roots at the origin; deflate them
  // before iterating.
  std::vector<cdouble> roots;
  UniPoly<cdouble> p = p_in;
  int zeros = 0;
  while (p.degree() >= 1 && std::abs(p.coeff(0)) == 0.0) {
    ++zeros;
    p = p.shifted_down(1);
  }
  roots.assign(std::size_t(zeros), cdouble(0.0, 0.0));

  int n = p.degree();
  if (n >= 1) {
    const auto& a = p.coeffs();
    double lead = std::abs(a.back());
    double cauchy = 0.0;
    for (int j = 0; j < n; ++j) cauchy = std::max(cauchy, std::abs(a[std::size_t(j)]));
    cauchy = 1.0 + cauchy / lead;
    double r0 = std::pow(std::abs(a[0]) / lead, 1.0 / double(n));
    r0 = std::clamp(r0, 1e-6 * cauchy, cauchy);

    UniPoly<cdouble> dp = p.derivative();
    std::vector<cdouble> z(static_cast<std::size_t>(n));
    bool done = false;
    for (int restart = 0; restart <= opt.restarts && !done; ++restart) {
      double radius = r0 * std::pow(3.0, restart);
      double phase = 0.4 + 0.7 * restart;
      for (int i = 0; i < n; ++i) {
        double th = 2.0 * std::numbers::pi * double(i) / double(n) + phase;
        z[std::size_t(i)] = radius * cdouble(std::cos(th), std::sin(th));
      }
      std::vector<bool> conv(std::size_t(n), false);
      for (int it = 0; it < opt.max_iter && !done; ++it) {
        int n_conv = 0;
        for (int i = 0; i < n; ++i) {
          if (conv[std::size_t(i)]) {
            ++n_conv;
            continue;
          }
          cdouble zi = z[std::size_t(i)];
          cdouble f = p(zi);
          double target =
              std::max(opt.tol, 4.0 * n * eps) * p.eval_scale(std::abs(zi));
          if (std::abs(f) <= target) {
            conv[std::size_t(i)] = true;
            ++n_conv;
            continue;
          }
          cdouble df = dp(zi);
          if (std::abs(df) == 0.0) {
            z[std::size_t(i)] += cdouble(1e-8 * (1.0 + std::abs(zi)), 1e-8);
            continue;
          }
          cdouble nw = f / df;
          cdouble s(0.0, 0.0);
          bool collision = false;
          for (int j = 0; j < n; ++j) {
            if (j == i) continue;
            cdouble dz = zi - z[std::size_t(j)];
            if (std::abs(dz) < 1e-300) {
              collision = true;
              break;
            }
            s += cdouble(1.0, 0.0) / dz;
          }
          if (collision) {
            z[std::size_t(i)] += cdouble(1e-8 * (1.0 + std::abs(zi)), -1e-8);
            continue;
          }
          cdouble denom = cdouble(1.0, 0.0) - nw * s;
          cdouble step = (std::abs(denom) < 1e-300) ? nw : nw / denom;
          z[std::size_t(i)] = zi - step;
        }
        if (n_conv == n) done = true;
      }
      // A final residual sweep: iteration may stop via small steps without
      // the convergence flags having caught up.
      if (!done) {
        done = true;
        for (int i = 0; i < n; ++i) {
          double target = std::max(opt.tol, 4.0 * n * eps) * p.eval_scale(std::abs(z[std::size_t(i)]));
          if (std::abs(p(z[std::size_t(i)])) > target) {
            done = false;
            break;
          }
        }
      }
    }
    require(done, errc::no_convergence, "root iteration did not converge");
    // Newton touch-up: simple roots land at machine precision, members of a
    // multiple cluster stay inside their fuzz ball (handled below).
    for (auto& zi : z) {
      cdouble refined = detail::newton_polish(p, zi, 8);
      if (std::abs(p(refined)) <= std::abs(p(zi))) zi = refined;
    }
    roots.insert(roots.end(), z.begin(), z.end());
  }

  // Multiple-root polish over the full set (deflated origin roots included,
  // so an origin cluster with strays is treated as one event).  The grouping
  // width tracks the stop tolerance: an m-fold root is only located to
  // (tol * scale)^(1/m) by the iteration itself.
  if (roots.size() >= 2) {
    int deg = p_in.degree();
    double stop_tol = std::max(opt.tol, 4.0 * deg * eps);
    double coarse = 8.0 * std::pow(stop_tol, 1.0 / double(deg));
    std::vector<int> idx(roots.size());
    for (std::size_t i = 0; i < roots.size(); ++i) idx[i] = int(i);
    detail::polish_multiple_roots(p_in, roots, std::move(idx), coarse, 0);
  }

  std::sort(roots.begin(), roots.end(), detail::lex_less);
  return roots;
}

/// Groups a root list (as from all_roots) into clusters at an absolute
/// tolerance; multiplicities sum to the input size.  Clusters are sorted by
/// (re, im) of their centers.
inline std::vector<RootCluster> cluster_roots(const std::vector<cdouble>& roots,
                                              double cluster_tol,
                                              const UniPoly<cdouble>* residual_of = nullptr) {
  require(cluster_tol >= 0.0, errc::bad_input, "negative cluster tolerance");
  std::vector<RootCluster> out;
  if (roots.empty()) return out;
  auto tol = [&](const cdouble&, const cdouble&) { return cluster_tol; };
  std::vector<int> g = detail::link_groups(roots, tol);
  std::vector<std::vector<int>> groups(roots.size());
  for (std::size_t i = 0; i < roots.size(); ++i) groups[std::size_t(g[i])].push_back(int(i));
  for (auto& mem : groups) {
    if (mem.empty()) continue;
    RootCluster c;
    cdouble mean(0.0, 0.0);
    for (int i : mem) mean += roots[std::size_t(i)];
    mean /= double(mem.size());
    c.center = mean;
    c.multiplicity = int(mem.size());
    for (int i : mem) c.radius = std::max(c.radius, std::abs(roots[std::size_t(i)] - mean));
    if (residual_of) c.residual = std::abs((*residual_of)(mean));
    out.push_back(c);
  }
  std::sort(out.begin(), out.end(),
            [](const RootCluster& a, const RootCluster& b) { return detail::lex_less(a.center, b.center); });
  return out;
}

/// Number of roots (with multiplicity) in the open disc, by trapezoid
/// quadrature of p'/p over the boundary circle.  Node count doubles from 512
/// until two consecutive estimates agree within 0.05; the final value must
/// sit within 0.1 of an integer.  Near-boundary roots are reported as errors
/// rather than guessed.
inline int count_roots_in_disc(const UniPoly<cdouble>& p, cdouble center, double radius,
                               double boundary_rel = 1e-8) {
  require(!p.is_zero(), errc::zero_polynomial, "root count on the zero polynomial");
  require(radius > 0.0 && std::isfinite(radius), errc::bad_input, "disc radius must be positive");
  if (p.degree() == 0) return 0;
  UniPoly<cdouble> dp = p.derivative();

  auto estimate = [&](int nodes, double& min_abs, double& max_abs) {
    cdouble acc(0.0, 0.0);
    min_abs = std::numeric_limits<double>::infinity();
    max_abs = 0.0;
    for (int k = 0; k < nodes; ++k) {
      double th = 2.0 * std::numbers::pi * double(k) / double(nodes);
      cdouble w = radius * cdouble(std::cos(th), std::sin(th));
      cdouble zk = center + w;
      cdouble f = p(zk);
      double af = std::abs(f);
      min_abs = std::min(min_abs, af);
      max_abs = std::max(max_abs, af);
      if (af == 0.0) fail(errc::root_near_boundary, "sampled zero on the counting circle");
      acc += w * dp(zk) / f;
    }
    return acc / double(nodes);
  };

  int nodes = 512;
  double mn = 0.0, mx = 0.0;
  cdouble prev = estimate(nodes, mn, mx);
  if (mx > 0.0 && mn < boundary_rel * mx)
    fail(errc::root_near_boundary, "polynomial nearly vanishes on the counting circle");
  cdouble cur = prev;
  bool settled = false;
  while (nodes < (1 << 16)) {
    nodes *= 2;
    cur = estimate(nodes, mn, mx);
    if (std::abs(cur - prev) <= 0.05) {
      settled = true;
      break;
    }
    prev = cur;
  }
  require(settled, errc::no_convergence, "winding estimate did not stabilize");
  double re = cur.real();
  long rounded = std::lround(re);
  require(std::abs(cur - cdouble(double(rounded), 0.0)) <= 0.1, errc::winding_not_integer,
          "winding number is not near an integer");
  require(rounded >= 0 && rounded <= p.degree(), errc::winding_not_integer,
          "winding number outside [0, degree]");
  return int(rounded);
}

/// Multiplicity of a known root: smallest k with |p^(k)(r)| above deriv_tol
/// relative to the k-th derivative's coefficient scale.
inline int multiplicity_at(const UniPoly<cdouble>& p, cdouble r, double deriv_tol = 1e-8) {
  require(!p.is_zero(), errc::zero_polynomial, "multiplicity on the zero polynomial");
  require(std::abs(p(r)) <= deriv_tol * p.eval_scale(std::abs(r)), errc::not_a_root,
          "point is not a root at the requested tolerance");
  UniPoly<cdouble> d = p;
  for (int k = 1; k <= p.degree(); ++k) {
    d = d.derivative();
    if (std::abs(d(r)) > deriv_tol * d.eval_scale(std::abs(r))) return k;
  }
  return p.degree();  // unreachable for nonzero p, kept for safety
}

/// Exact-mode multiplicity: derivatives until exactly nonzero.
inline int multiplicity_at(const UniPoly<CRat>& p, const CRat& r) {
  require(!p.is_zero(), errc::zero_polynomial, "multiplicity on the zero polynomial");
  require(p(r).is_zero(), errc::not_a_root, "point is not a root");
  UniPoly<CRat> d = p;
  for (int k = 1; k <= p.degree(); ++k) {
    d = d.derivative();
    if (!d(r).is_zero()) return k;
  }
  return p.degree();
}

}  // namespace zerocycle
