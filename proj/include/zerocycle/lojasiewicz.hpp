#pragma once

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <span>
#include <string>
#include <vector>

#include "zerocycle/errors.hpp"
#include "zerocycle/local_geometry.hpp"
#include "zerocycle/multipoly.hpp"
#include "zerocycle/region.hpp"
#include "zerocycle/rng.hpp"

namespace zerocycle {

struct ShellStat {
  double radius = 0.0;     // representative shell radius (scaled max radius)
  double min_ratio = 0.0;  // min |f| / dist^alpha over the shell
  int samples = 0;
};

struct LojReport {
  double alpha = 0.0;
  Region region;
  int n_samples_requested = 0;
  int n_samples_used = 0;
  double worst_ratio_c = std::numeric_limits<double>::infinity();
  std::vector<cdouble> worst_sample;
  std::vector<ShellStat> shell_profile;
  bool holds = false;
  std::uint64_t seed = 0;
  std::vector<std::string> notes;
};

struct LojOptions {
  int n_shells = 8;
  int dist_directions = 16;
  double decay_factor = 0.5;      // shell minima may not decay below this, pairwise
  double vanish_tol_rel = 1e-13;  // |f| below this (times shell scale) is "on the zero set"
  int nudge_retries = 8;
};

namespace detail {

/// Deterministic angle nudge used when a sample lands on the zero set.
inline double angle_nudge(int attempt) { return 2.0 * std::numbers::pi * 0.381966 * attempt; }

inline void check_anchor(const MultiPoly<cdouble>& f, std::span<const cdouble> a,
                         const Region& region) {
  require(!f.is_zero(), errc::zero_polynomial, "inequality check on the zero polynomial");
  require(region.dim() == f.nvars(), errc::dimension_mismatch, "region arity mismatch");
  require(int(a.size()) == f.nvars(), errc::dimension_mismatch, "anchor arity mismatch");
  for (double rad : region.radii)
    require(rad > 0.0 && std::isfinite(rad), errc::bad_input, "region radii must be positive");
  for (int i = 0; i < region.dim(); ++i)
    require(std::abs(region.center[std::size_t(i)] - a[std::size_t(i)]) <=
                1e-12 * std::max(1.0, std::abs(a[std::size_t(i)])),
            errc::bad_input, "region must be centered at the anchor point");
  auto ord = order_at(f, a);
  require(ord.has_value() && *ord >= 1, errc::not_a_root, "anchor point is not on the zero set");
}

}  // namespace detail

/// Samples the quotient |f(z)| / dist(z, f^{-1}(0))^alpha on dyadic shells
/// around a and reports the worst constant.  Shells reuse the same angle
/// tuples at shrinking radii, so shell minima are directly comparable.  The
/// verdict `holds` compares the deep half of the shell ladder against the
/// shallow half: with the right alpha the minima settle onto a positive
/// floor once the outer-shell corrections fade, with too small an alpha
/// they keep shrinking geometrically all the way down, so the deep-half
/// minimum falling below decay_factor times the shallow-half minimum means
/// the inequality fails at this exponent.
inline LojReport verify_inequality(const MultiPoly<cdouble>& f, std::span<const cdouble> a,
                                   double alpha, const Region& region, int n_samples = 512,
                                   std::uint64_t seed = 0, const LojOptions& opt = {}) {
  detail::check_anchor(f, a, region);
  require(alpha > 0.0 && std::isfinite(alpha), errc::bad_input, "alpha must be positive");
  require(opt.n_shells >= 2, errc::bad_input, "need at least two shells");
  require(n_samples >= opt.n_shells, errc::bad_input, "fewer samples than shells");
  const int m = f.nvars();
  const int per_shell = n_samples / opt.n_shells;

  LojReport rep;
  rep.alpha = alpha;
  rep.region = region;
  rep.n_samples_requested = n_samples;
  rep.seed = seed;

  // One angle tuple per sample slot, shared by every shell.
  std::vector<std::vector<double>> angles(static_cast<std::size_t>(per_shell));
  for (int j = 0; j < per_shell; ++j) {
    SplitMix64 g(derive_seed(seed, 10000 + std::uint64_t(j)));
    for (int i = 0; i < m; ++i) angles[std::size_t(j)].push_back(g.uniform(0.0, 2.0 * std::numbers::pi));
  }

  int shells_with_data = 0;
  std::vector<cdouble> z(static_cast<std::size_t>(m));
  for (int k = 0; k < opt.n_shells; ++k) {
    const double scale = std::pow(2.0, -double(k));
    std::vector<double> shell_radii(region.radii);
    for (double& r : shell_radii) r *= scale;
    const double shell_scale = f.sup_bound(region.center, shell_radii);
    ShellStat stat;
    stat.radius = region.max_radius() * scale;
    stat.min_ratio = std::numeric_limits<double>::infinity();
    for (int j = 0; j < per_shell; ++j) {
      double fv = 0.0;
      bool usable = false;
      for (int nudge = 0; nudge <= opt.nudge_retries; ++nudge) {
        for (int i = 0; i < m; ++i) {
          double th = angles[std::size_t(j)][std::size_t(i)] + detail::angle_nudge(nudge);
          z[std::size_t(i)] = a[std::size_t(i)] + shell_radii[std::size_t(i)] * cdouble(std::cos(th), std::sin(th));
        }
        fv = std::abs(f.evaluate(z));
        if (fv > opt.vanish_tol_rel * shell_scale) {
          usable = true;
          break;
        }
      }
      if (!usable) {
        rep.notes.push_back("sample on shell " + std::to_string(k) + " stayed on the zero set");
        continue;
      }
      auto dist = dist_to_zero_set(f, z, opt.dist_directions,
                                   derive_seed(seed, 20000 + std::uint64_t(k) * 4096 + std::uint64_t(j)));
      if (!dist.found || dist.value <= 0.0) {
        rep.notes.push_back("no zero-set witness for a sample on shell " + std::to_string(k));
        continue;
      }
      double ratio = fv / std::pow(dist.value, alpha);
      ++stat.samples;
      ++rep.n_samples_used;
      if (ratio < stat.min_ratio) stat.min_ratio = ratio;
      if (ratio < rep.worst_ratio_c) {
        rep.worst_ratio_c = ratio;
        rep.worst_sample = z;
      }
    }
    if (stat.samples > 0) ++shells_with_data;
    rep.shell_profile.push_back(stat);
  }
  require(shells_with_data >= 2, errc::insufficient_shells,
          "too few shells produced usable samples");

  // Non-decay verdict over the usable shells: geometric decay (alpha too
  // small) keeps shrinking the minima down the whole ladder, while the right
  // alpha lets them settle onto a positive floor once outer-shell
  // corrections fade.  Comparing the deep half against the shallow half
  // separates the two without tripping on that transient.
  std::vector<double> mins;
  for (const auto& s : rep.shell_profile)
    if (s.samples > 0) mins.push_back(s.min_ratio);
  const std::size_t half = mins.size() / 2;
  const double shallow = *std::min_element(mins.begin(), mins.begin() + std::ptrdiff_t(half));
  const double deep = *std::min_element(mins.begin() + std::ptrdiff_t(half), mins.end());
  rep.holds = deep >= opt.decay_factor * shallow;
  return rep;
}

/// Regression estimate of the vanishing exponent: per shell, takes the
/// sample minimizing |f| and fits log|f| against log dist over the deepest
/// half of the shells, where the scale corrections have died out.  Shared
/// angle tuples make per-shell minima track the same directional event, so
/// the slope recovers the order of vanishing.
inline double estimate_exponent(const MultiPoly<cdouble>& f, std::span<const cdouble> a,
                                const Region& region, int n_samples = 512, std::uint64_t seed = 0,
                                const LojOptions& opt = {}) {
  detail::check_anchor(f, a, region);
  require(opt.n_shells >= 4, errc::insufficient_shells, "exponent fit needs at least 4 shells");
  // The slope is asymptotic, so the fit ladder descends three times as deep
  // as the verdict shells; the regression later keeps only the deepest half,
  // where the fractional-power corrections to measured distances (and any
  // near-cancelling angle tuple's regime crossover) have died out.
  const int fit_shells = 3 * opt.n_shells;
  require(n_samples >= fit_shells, errc::bad_input, "fewer samples than shells");
  const int m = f.nvars();
  const int per_shell = n_samples / fit_shells;

  std::vector<std::vector<double>> angles(static_cast<std::size_t>(per_shell));
  for (int j = 0; j < per_shell; ++j) {
    SplitMix64 g(derive_seed(seed, 10000 + std::uint64_t(j)));
    for (int i = 0; i < m; ++i) angles[std::size_t(j)].push_back(g.uniform(0.0, 2.0 * std::numbers::pi));
  }

  std::vector<double> xs, ys;
  std::vector<cdouble> z(static_cast<std::size_t>(m)), zmin(static_cast<std::size_t>(m));
  for (int k = 0; k < fit_shells; ++k) {
    const double scale = std::pow(2.0, -double(k));
    std::vector<double> shell_radii(region.radii);
    for (double& r : shell_radii) r *= scale;
    const double shell_scale = f.sup_bound(region.center, shell_radii);
    double fmin = std::numeric_limits<double>::infinity();
    bool have = false;
    for (int j = 0; j < per_shell; ++j) {
      for (int nudge = 0; nudge <= opt.nudge_retries; ++nudge) {
        for (int i = 0; i < m; ++i) {
          double th = angles[std::size_t(j)][std::size_t(i)] + detail::angle_nudge(nudge);
          z[std::size_t(i)] = a[std::size_t(i)] + shell_radii[std::size_t(i)] * cdouble(std::cos(th), std::sin(th));
        }
        double fv = std::abs(f.evaluate(z));
        if (fv > opt.vanish_tol_rel * shell_scale) {
          if (fv < fmin) {
            fmin = fv;
            zmin = z;
            have = true;
          }
          break;
        }
      }
    }
    if (!have) continue;
    auto dist = dist_to_zero_set(f, zmin, 2 * opt.dist_directions,
                                 derive_seed(seed, 20000 + std::uint64_t(k)));
    if (!dist.found || dist.value <= 0.0) continue;
    xs.push_back(std::log(dist.value));
    ys.push_back(std::log(fmin));
  }
  require(int(xs.size()) >= 4, errc::insufficient_shells,
          "exponent fit needs at least 4 shells with usable samples");
  // The slope is an asymptotic quantity: outer shells still carry O(radius)
  // phase corrections in both coordinates, so the fit uses only the deepest
  // half of the usable shells (never fewer than four).
  const std::size_t tail = std::max<std::size_t>(4, xs.size() / 2);
  if (xs.size() > tail) {
    xs.erase(xs.begin(), xs.end() - std::ptrdiff_t(tail));
    ys.erase(ys.begin(), ys.end() - std::ptrdiff_t(tail));
  }
  double xbar = 0.0, ybar = 0.0;
  for (std::size_t i = 0; i < xs.size(); ++i) {
    xbar += xs[i];
    ybar += ys[i];
  }
  xbar /= double(xs.size());
  ybar /= double(xs.size());
  double num = 0.0, den = 0.0;
  for (std::size_t i = 0; i < xs.size(); ++i) {
    num += (xs[i] - xbar) * (ys[i] - ybar);
    den += (xs[i] - xbar) * (xs[i] - xbar);
  }
  require(den > 0.0, errc::insufficient_shells, "degenerate distance spread in exponent fit");
  return num / den;
}

/// Sharp slice inequality |f(z)| >= dist(z, f^{-1}(0))^delta with constant
/// one, for polynomials monic in the fibre variable whose zero set stays
/// inside the box fibre-wise (delta must equal the fibre degree).  Samples
/// the box uniformly; the distance sweep includes the fibre axis, which
/// certifies each sampled quotient from below.
inline LojReport verify_slice_inequality(const MultiPoly<cdouble>& f, const Region& box,
                                         const SliceCycleReport& slice, int n_samples = 4096,
                                         std::uint64_t seed = 0, const LojOptions& opt = {}) {
  require(!f.is_zero(), errc::zero_polynomial, "inequality check on the zero polynomial");
  require(box.dim() == f.nvars(), errc::dimension_mismatch, "box arity mismatch");
  const int m = f.nvars();
  const int fibre_deg = f.degree_in_var(m - 1);
  require(fibre_deg >= 1, errc::bad_input, "polynomial is constant in the fibre variable");

  // Monic in the fibre variable: the top fibre coefficient must be the
  // constant 1.
  if (m == 1) {
    require(std::abs(f.terms().rbegin()->second - cdouble(1.0, 0.0)) <= 1e-9, errc::non_monic,
            "leading fibre coefficient is not 1");
  } else {
    auto coeffs = f.coeffs_in_var(m - 1);
    const MultiPoly<cdouble>& top = coeffs.back();
    bool monic = top.term_count() == 1 && top.terms().begin()->first.tdeg == 0 &&
                 std::abs(top.terms().begin()->second - cdouble(1.0, 0.0)) <= 1e-9;
    require(monic, errc::non_monic, "leading fibre coefficient is not the constant 1");
  }
  require(slice.delta == fibre_deg, errc::bad_input,
          "slice degree differs from fibre degree: zero set leaves the box through dW");
  SliceOptions sopt;
  auto prop = slice_properness(f, box, derive_seed(seed, 1), sopt);
  require(prop.ok, errc::properness_violation, "zero set meets the fibre boundary of the box");

  LojReport rep;
  rep.alpha = double(slice.delta);
  rep.region = box;
  rep.n_samples_requested = n_samples;
  rep.seed = seed;

  const double box_scale = f.sup_bound(box.center, box.radii);
  std::vector<cdouble> z(static_cast<std::size_t>(m));
  for (int idx = 0; idx < n_samples; ++idx) {
    SplitMix64 g(derive_seed(seed, 30000 + std::uint64_t(idx)));
    double fv = 0.0;
    bool usable = false;
    for (int nudge = 0; nudge <= opt.nudge_retries && !usable; ++nudge) {
      for (int i = 0; i < m; ++i)
        z[std::size_t(i)] = box.center[std::size_t(i)] +
                            box.radii[std::size_t(i)] * std::sqrt(g.uniform()) * g.unit_complex();
      fv = std::abs(f.evaluate(z));
      usable = fv > opt.vanish_tol_rel * box_scale;
    }
    if (!usable) {
      rep.notes.push_back("sample " + std::to_string(idx) + " stayed on the zero set");
      continue;
    }
    auto dist = dist_to_zero_set(f, z, opt.dist_directions, derive_seed(seed, 40000 + std::uint64_t(idx)));
    if (!dist.found || dist.value <= 0.0) {
      rep.notes.push_back("no zero-set witness for sample " + std::to_string(idx));
      continue;
    }
    double ratio = fv / std::pow(dist.value, rep.alpha);
    ++rep.n_samples_used;
    if (ratio < rep.worst_ratio_c) {
      rep.worst_ratio_c = ratio;
      rep.worst_sample = z;
    }
  }
  require(rep.n_samples_used > 0, errc::insufficient_shells, "no usable samples in the box");
  ShellStat stat;
  stat.radius = box.max_radius();
  stat.min_ratio = rep.worst_ratio_c;
  stat.samples = rep.n_samples_used;
  rep.shell_profile.push_back(stat);
  rep.holds = rep.worst_ratio_c >= 1.0 - 1e-6;
  return rep;
}

}  // namespace zerocycle
