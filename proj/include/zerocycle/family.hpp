#pragma once

#include <algorithm>
#include <cmath>
#include <limits>
#include <map>
#include <numbers>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "zerocycle/errors.hpp"
#include "zerocycle/local_geometry.hpp"
#include "zerocycle/lojasiewicz.hpp"
#include "zerocycle/multipoly.hpp"
#include "zerocycle/region.hpp"
#include "zerocycle/rng.hpp"
#include "zerocycle/roots.hpp"

namespace zerocycle {

/// Polynomial family f_t(x): one distinguished parameter variable inside a
/// joint polynomial, a parameter center t0, and a base point in the space
/// variables (the point where local quantities are anchored).
struct ParamFamily {
  MultiPoly<cdouble> poly = MultiPoly<cdouble>(2);  // parameter + space variables
  int param_index = 0;
  cdouble t0 = cdouble(0.0, 0.0);
  std::vector<cdouble> base_point;  // dim = nvars - 1; defaults to the origin

  int space_dim() const { return poly.nvars() - 1; }
};

inline void validate_family(const ParamFamily& fam) {
  require(fam.poly.nvars() >= 2, errc::bad_input, "family needs a parameter and a space variable");
  require(fam.param_index >= 0 && fam.param_index < fam.poly.nvars(), errc::bad_input,
          "parameter index out of range");
  require(fam.base_point.empty() || int(fam.base_point.size()) == fam.space_dim(),
          errc::dimension_mismatch, "base point arity mismatch");
}

inline std::vector<cdouble> family_base(const ParamFamily& fam) {
  if (!fam.base_point.empty()) return fam.base_point;
  return std::vector<cdouble>(static_cast<std::size_t>(fam.space_dim()), cdouble(0.0, 0.0));
}

/// Member polynomial f_t in the space variables.
inline MultiPoly<cdouble> specialize_parameter(const ParamFamily& fam, cdouble t) {
  validate_family(fam);
  return fam.poly.specialize_var(fam.param_index, t);
}

/// True when f_t(base_point) vanishes identically in t, i.e. the base point
/// sits on every member's zero set.
inline bool is_base_anchored(const ParamFamily& fam, double tol_rel = 1e-10) {
  validate_family(fam);
  std::vector<cdouble> a = family_base(fam);
  MultiPoly<cdouble> g = fam.poly;
  // Substitute space variables from the highest index down: removing a slot
  // never disturbs the indices below it, so each original slot is still at
  // its own index when its turn comes.  The parameter slot is skipped and
  // survives as the single remaining variable.
  for (int s = fam.poly.nvars() - 1; s >= 0; --s) {
    if (s == fam.param_index) continue;
    int space_idx = s > fam.param_index ? s - 1 : s;
    g = g.specialize_var(s, a[std::size_t(space_idx)]);
  }
  double amax = 1.0;
  for (const cdouble& c : a) amax = std::max(amax, std::abs(c));
  double scale = fam.poly.max_abs_coeff() *
                 std::pow(amax, double(std::max(fam.poly.total_degree(), 0)));
  return g.max_abs_coeff() <= tol_rel * std::max(scale, 1e-300);
}

struct PerTEntry {
  cdouble t;
  double dist_from_t0 = 0.0;
  std::map<std::string, double> values;
  bool ok = true;
  std::string note;
};

struct ConvergenceReport {
  std::string check;
  std::vector<PerTEntry> per_t;  // t0 row first, then the grid in input order
  bool holds = false;
  double stabilization_threshold = 0.0;  // largest |t-t0| radius where the property held
  std::map<std::string, double> extras;
  std::uint64_t seed = 0;
  std::vector<std::string> notes;
};

namespace detail {

/// Threshold discovery for grid-style checks: sort the non-center entries by
/// |t - t0|, take the largest all-ok prefix (whole tie groups at a time).
/// The verdict wants the property to hold either on the entire grid or on a
/// prefix of at least three points.
inline void finish_grid_verdict(ConvergenceReport& rep) {
  std::vector<const PerTEntry*> grid;
  for (std::size_t i = 1; i < rep.per_t.size(); ++i) grid.push_back(&rep.per_t[i]);
  std::stable_sort(grid.begin(), grid.end(), [](const PerTEntry* a, const PerTEntry* b) {
    return a->dist_from_t0 < b->dist_from_t0;
  });
  double threshold = 0.0;
  std::size_t covered = 0;
  std::size_t i = 0;
  while (i < grid.size()) {
    std::size_t j = i;
    bool group_ok = true;
    while (j < grid.size() && grid[j]->dist_from_t0 == grid[i]->dist_from_t0) {
      group_ok = group_ok && grid[j]->ok;
      ++j;
    }
    if (!group_ok) break;
    threshold = grid[i]->dist_from_t0;
    covered = j;
    i = j;
  }
  rep.stabilization_threshold = threshold;
  bool center_ok = rep.per_t.empty() ? false : rep.per_t.front().ok;
  rep.holds = center_ok && (covered == grid.size() || covered >= 3);
}

/// Threshold discovery for sequence-style checks (a sequence converging to
/// t0, gaps expected to shrink): the verdict is computed by the caller from
/// the chain; here we record how far out the chain condition held, walking
/// back from the sequence tail.
inline void sequence_threshold(ConvergenceReport& rep) {
  double threshold = 0.0;
  for (std::size_t i = rep.per_t.size(); i-- > 1;) {
    if (!rep.per_t[i].ok) break;
    threshold = std::max(threshold, rep.per_t[i].dist_from_t0);
  }
  rep.stabilization_threshold = threshold;
}

inline PerTEntry make_entry(cdouble t, cdouble t0) {
  PerTEntry e;
  e.t = t;
  e.dist_from_t0 = std::abs(t - t0);
  return e;
}

}  // namespace detail

/// Order of vanishing along the family: ord(f_t at the base point) for every
/// grid parameter, compared against ord(f_t0).  Near t0 the member order can
/// only drop or stay equal; the verdict checks that on a neighbourhood of t0
/// discovered from the grid.
inline ConvergenceReport order_profile(const ParamFamily& fam, std::span<const cdouble> t_grid,
                                       double drop_tol = 1e-12) {
  validate_family(fam);
  std::vector<cdouble> a = family_base(fam);
  ConvergenceReport rep;
  rep.check = "order_profile";

  MultiPoly<cdouble> f0 = specialize_parameter(fam, fam.t0);
  auto ord0 = order_at(f0, a, drop_tol);
  require(ord0.has_value(), errc::zero_polynomial, "f at t0 is the zero polynomial");
  PerTEntry center = detail::make_entry(fam.t0, fam.t0);
  center.values["order"] = double(*ord0);
  rep.per_t.push_back(center);
  rep.extras["order_at_t0"] = double(*ord0);

  for (const cdouble& t : t_grid) {
    PerTEntry e = detail::make_entry(t, fam.t0);
    MultiPoly<cdouble> ft = specialize_parameter(fam, t);
    auto ord = order_at(ft, a, drop_tol);
    require(ord.has_value(), errc::zero_polynomial,
            "family member vanishes identically at a grid parameter");
    e.values["order"] = double(*ord);
    e.ok = *ord <= *ord0;
    if (!e.ok) e.note = "order exceeds the order at t0";
    rep.per_t.push_back(std::move(e));
  }
  detail::finish_grid_verdict(rep);
  return rep;
}

namespace detail {

inline double hausdorff_gap(const std::vector<std::vector<cdouble>>& a,
                            const std::vector<std::vector<cdouble>>& b) {
  auto one_sided = [](const std::vector<std::vector<cdouble>>& p,
                      const std::vector<std::vector<cdouble>>& q) {
    double worst = 0.0;
    for (const auto& x : p) {
      double best = std::numeric_limits<double>::infinity();
      for (const auto& y : q) {
        double d = 0.0;
        for (std::size_t i = 0; i < x.size(); ++i) d += std::norm(x[i] - y[i]);
        best = std::min(best, d);
      }
      worst = std::max(worst, std::sqrt(best));
    }
    return worst;
  };
  return std::max(one_sided(a, b), one_sided(b, a));
}

/// Point cloud of the zero set of f inside the window (last variable is the
/// fibre): fibre roots over a deterministic spiral grid of base points.
inline std::vector<std::vector<cdouble>> zero_set_cloud(const MultiPoly<cdouble>& f,
                                                        const Region& window, int grid_density) {
  const int m = f.nvars();
  SliceOptions sopt;
  auto prop = slice_properness(f, window, 0, sopt);
  require(prop.ok, errc::properness_violation,
          "zero set meets the fibre boundary of the window");
  std::vector<std::vector<cdouble>> cloud;
  std::vector<std::vector<cdouble>> bases;
  if (m == 1) {
    bases.push_back({});
  } else {
    // Deterministic spiral covering per base disc; product across variables.
    std::vector<std::vector<cdouble>> axes;
    for (int i = 0; i + 1 < m; ++i) {
      std::vector<cdouble> pts;
      for (int j = 0; j < grid_density; ++j) {
        double r = window.radii[std::size_t(i)] * std::sqrt((j + 0.5) / double(grid_density));
        double th = 2.0 * std::numbers::pi * 0.618034 * double(j);
        pts.push_back(window.center[std::size_t(i)] + r * cdouble(std::cos(th), std::sin(th)));
      }
      axes.push_back(std::move(pts));
    }
    bases.push_back({});
    for (const auto& axis : axes) {
      std::vector<std::vector<cdouble>> next;
      for (const auto& partial : bases)
        for (const cdouble& p : axis) {
          auto ext = partial;
          ext.push_back(p);
          next.push_back(std::move(ext));
        }
      bases = std::move(next);
    }
  }
  for (const auto& x : bases) {
    auto clusters = detail::fibre_roots(f, window, x, sopt);
    for (const auto& c : clusters) {
      std::vector<cdouble> pt(x);
      pt.push_back(c.center);
      cloud.push_back(std::move(pt));
    }
  }
  require(!cloud.empty(), errc::empty_zero_set, "zero set misses the window");
  return cloud;
}

}  // namespace detail

/// Set convergence of zero sets Z_{f_t} -> Z_{f_t0} inside a window,
/// measured by the symmetric Hausdorff gap between sampled point clouds.
/// The t_sequence is expected to approach t0; the verdict wants the gap
/// chain non-increasing (within a factor 1.5) and the final gap below the
/// cloud resolution.
inline ConvergenceReport kuratowski_check(const ParamFamily& fam,
                                          std::span<const cdouble> t_sequence,
                                          const Region& window, int grid_density = 24) {
  validate_family(fam);
  require(window.dim() == fam.space_dim(), errc::dimension_mismatch, "window arity mismatch");
  require(grid_density >= 2, errc::bad_input, "grid density too small");
  require(!t_sequence.empty(), errc::bad_input, "empty parameter sequence");

  ConvergenceReport rep;
  rep.check = "kuratowski";
  MultiPoly<cdouble> f0 = specialize_parameter(fam, fam.t0);
  auto cloud0 = detail::zero_set_cloud(f0, window, grid_density);
  PerTEntry center = detail::make_entry(fam.t0, fam.t0);
  center.values["hausdorff_gap"] = 0.0;
  rep.per_t.push_back(center);

  const double resolution = window.max_radius() / double(grid_density);
  rep.extras["resolution"] = resolution;
  const double eps_abs = 1e-12 * window.max_radius();

  double prev_gap = std::numeric_limits<double>::infinity();
  double final_gap = std::numeric_limits<double>::infinity();
  for (const cdouble& t : t_sequence) {
    PerTEntry e = detail::make_entry(t, fam.t0);
    MultiPoly<cdouble> ft = specialize_parameter(fam, t);
    auto cloud = detail::zero_set_cloud(ft, window, grid_density);
    double gap = detail::hausdorff_gap(cloud, cloud0);
    e.values["hausdorff_gap"] = gap;
    e.ok = gap <= 1.5 * prev_gap + eps_abs;
    if (!e.ok) e.note = "gap grew along the sequence";
    prev_gap = gap;
    final_gap = gap;
    rep.per_t.push_back(std::move(e));
  }
  bool chain = true;
  for (std::size_t i = 1; i < rep.per_t.size(); ++i) chain = chain && rep.per_t[i].ok;
  rep.holds = chain && final_gap < resolution;
  rep.extras["final_gap"] = final_gap;
  detail::sequence_threshold(rep);
  return rep;
}

/// Zero-cycle convergence through a testing disc: the line through `anchor`
/// in `direction` is restricted to each member, and roots are counted (with
/// multiplicity) in the disc of radius disc_radius around the anchor.  The
/// disc must be "testing" for f_t0: the anchor is its only zero inside.
/// Near t0 the count must stabilize at the t0 value.
inline ConvergenceReport tworzewski_check(const ParamFamily& fam, std::span<const cdouble> anchor,
                                          std::span<const cdouble> direction, double disc_radius,
                                          std::span<const cdouble> t_sequence) {
  validate_family(fam);
  require(int(anchor.size()) == fam.space_dim(), errc::dimension_mismatch, "anchor arity mismatch");
  require(int(direction.size()) == fam.space_dim(), errc::dimension_mismatch,
          "direction arity mismatch");
  require(disc_radius > 0.0, errc::bad_input, "disc radius must be positive");

  ConvergenceReport rep;
  rep.check = "tworzewski";
  MultiPoly<cdouble> f0 = specialize_parameter(fam, fam.t0);
  UniPoly<cdouble> u0 = f0.restrict_to_line(anchor, direction);
  require(!u0.is_zero(), errc::bad_input, "testing line lies inside the zero set at t0");
  require(std::abs(u0.coeff(0)) <= 1e-10 * std::max(u0.max_abs_coeff(), 1e-300), errc::not_a_root,
          "anchor is not on the zero set at t0");
  // Testing disc: all in-disc roots of the t0 restriction concentrate at the
  // anchor.
  if (u0.degree() >= 1) {
    for (const cdouble& s : all_roots(u0)) {
      if (std::abs(s) < disc_radius)
        require(std::abs(s) <= 1e-6 * disc_radius, errc::bad_input,
                "testing disc contains zeros away from the anchor");
    }
  }
  int deg0 = count_roots_in_disc(u0, cdouble(0.0, 0.0), disc_radius);
  PerTEntry center = detail::make_entry(fam.t0, fam.t0);
  center.values["degree"] = double(deg0);
  rep.per_t.push_back(center);
  rep.extras["degree_at_t0"] = double(deg0);

  for (const cdouble& t : t_sequence) {
    PerTEntry e = detail::make_entry(t, fam.t0);
    MultiPoly<cdouble> ft = specialize_parameter(fam, t);
    UniPoly<cdouble> ut = ft.restrict_to_line(anchor, direction);
    require(!ut.is_zero(), errc::bad_input, "testing line lies inside a member zero set");
    int deg = count_roots_in_disc(ut, cdouble(0.0, 0.0), disc_radius);
    e.values["degree"] = double(deg);
    e.ok = deg == deg0;
    if (!e.ok) e.note = "disc count differs from the t0 count";
    rep.per_t.push_back(std::move(e));
  }
  detail::finish_grid_verdict(rep);
  return rep;
}

/// Convergence of fibre cycles [g^{-1}(s)] -> [g^{-1}(s0)] near a point of
/// the central fibre, reduced to the disc-count check on the family
/// g(x) - s.
inline ConvergenceReport fibre_cycle_convergence(const MultiPoly<cdouble>& g, cdouble s0,
                                                 std::span<const cdouble> anchor,
                                                 std::span<const cdouble> direction,
                                                 double disc_radius,
                                                 std::span<const cdouble> s_sequence) {
  require(g.total_degree() >= 1, errc::bad_input, "fibre map must be nonconstant");
  ParamFamily fam;
  MultiPoly<cdouble> lifted(g.nvars() + 1);
  for (const auto& [m, c] : g.terms()) {
    std::vector<std::uint32_t> e;
    e.reserve(m.exp.size() + 1);
    e.push_back(0);
    e.insert(e.end(), m.exp.begin(), m.exp.end());
    lifted.add_term(std::move(e), c);
  }
  std::vector<std::uint32_t> se(static_cast<std::size_t>(g.nvars() + 1), 0);
  se[0] = 1;
  lifted.add_term(std::move(se), cdouble(-1.0, 0.0));
  fam.poly = std::move(lifted);
  fam.param_index = 0;
  fam.t0 = s0;
  fam.base_point.assign(anchor.begin(), anchor.end());
  // The report is returned exactly as the disc check produced it, so a fibre
  // run and a hand-lifted family run are bit-identical given the same seed.
  return tworzewski_check(fam, anchor, direction, disc_radius, s_sequence);
}

/// Local degree semicontinuity at a shared base point: every member passes
/// through the base point, and near t0 its local degree there cannot exceed
/// the t0 degree.
inline ConvergenceReport local_degree_semicontinuity(const ParamFamily& fam,
                                                     std::span<const cdouble> t_grid,
                                                     double probe_radius, int trials = 3,
                                                     std::uint64_t seed = 0) {
  validate_family(fam);
  require(is_base_anchored(fam), errc::not_a_root,
          "base point must lie on every member zero set");
  std::vector<cdouble> a = family_base(fam);

  ConvergenceReport rep;
  rep.check = "local_degree";
  rep.seed = seed;
  MultiPoly<cdouble> f0 = specialize_parameter(fam, fam.t0);
  int deg0 = local_degree_cycle(f0, a, probe_radius, trials, derive_seed(seed, 0));
  PerTEntry center = detail::make_entry(fam.t0, fam.t0);
  center.values["degree"] = double(deg0);
  rep.per_t.push_back(center);
  rep.extras["degree_at_t0"] = double(deg0);

  std::uint64_t idx = 1;
  for (const cdouble& t : t_grid) {
    PerTEntry e = detail::make_entry(t, fam.t0);
    MultiPoly<cdouble> ft = specialize_parameter(fam, t);
    int deg = local_degree_cycle(ft, a, probe_radius, trials, derive_seed(seed, idx++));
    e.values["degree"] = double(deg);
    e.ok = deg <= deg0;
    if (!e.ok) e.note = "local degree exceeds the t0 degree";
    rep.per_t.push_back(std::move(e));
  }
  detail::finish_grid_verdict(rep);
  return rep;
}

/// Continuity of the distance functions dist(., Z_{f_t}) at fixed probe
/// points as t -> t0; sequence-style verdict on the sup gap over the probes.
inline ConvergenceReport distance_continuity_check(const ParamFamily& fam,
                                                   std::span<const std::vector<cdouble>> probes,
                                                   std::span<const cdouble> t_sequence,
                                                   int n_directions = 16, std::uint64_t seed = 0,
                                                   double final_tol = -1.0) {
  validate_family(fam);
  require(!probes.empty(), errc::bad_input, "need at least one probe point");
  require(!t_sequence.empty(), errc::bad_input, "empty parameter sequence");
  double scale = 1.0;
  for (const auto& p : probes) {
    require(int(p.size()) == fam.space_dim(), errc::dimension_mismatch, "probe arity mismatch");
    for (const cdouble& c : p) scale = std::max(scale, std::abs(c));
  }
  if (final_tol <= 0.0) final_tol = 1e-3 * scale;

  ConvergenceReport rep;
  rep.check = "distance_continuity";
  rep.seed = seed;
  MultiPoly<cdouble> f0 = specialize_parameter(fam, fam.t0);
  std::vector<double> d0;
  for (std::size_t p = 0; p < probes.size(); ++p) {
    auto est = dist_to_zero_set(f0, probes[p], n_directions, derive_seed(seed, p));
    require(est.found, errc::empty_zero_set, "no zero found from a probe at t0");
    d0.push_back(est.value);
  }
  PerTEntry center = detail::make_entry(fam.t0, fam.t0);
  center.values["gap"] = 0.0;
  rep.per_t.push_back(center);
  rep.extras["final_tol"] = final_tol;

  const double eps_abs = 1e-12 * scale;
  double prev_gap = std::numeric_limits<double>::infinity();
  double final_gap = std::numeric_limits<double>::infinity();
  std::uint64_t tix = 0;
  for (const cdouble& t : t_sequence) {
    PerTEntry e = detail::make_entry(t, fam.t0);
    MultiPoly<cdouble> ft = specialize_parameter(fam, t);
    double gap = 0.0;
    for (std::size_t p = 0; p < probes.size(); ++p) {
      auto est = dist_to_zero_set(ft, probes[p], n_directions,
                                  derive_seed(seed, 1000 + tix * probes.size() + p));
      require(est.found, errc::empty_zero_set, "no zero found from a probe at a grid parameter");
      gap = std::max(gap, std::abs(est.value - d0[p]));
    }
    ++tix;
    e.values["gap"] = gap;
    e.ok = gap <= 1.5 * prev_gap + eps_abs;
    if (!e.ok) e.note = "distance gap grew along the sequence";
    prev_gap = gap;
    final_gap = gap;
    rep.per_t.push_back(std::move(e));
  }
  bool chain = true;
  for (std::size_t i = 1; i < rep.per_t.size(); ++i) chain = chain && rep.per_t[i].ok;
  rep.holds = chain && final_gap < final_tol;
  rep.extras["final_gap"] = final_gap;
  detail::sequence_threshold(rep);
  return rep;
}

struct CurveIntersections {
  bool common_component = false;
  std::vector<std::vector<cdouble>> points;  // dim-2 points inside the window
};

/// Finite intersection points of two plane curves inside a window, via a
/// numeric resultant: the Sylvester determinant in y is sampled on a circle
/// of x nodes and interpolated back to a polynomial in x.  An identically
/// vanishing resultant signals a common component.
inline CurveIntersections plane_curve_intersections(const MultiPoly<cdouble>& x_curve,
                                                    const MultiPoly<cdouble>& y_curve,
                                                    const Region& window) {
  require(x_curve.nvars() == 2 && y_curve.nvars() == 2, errc::bad_input,
          "plane-curve intersection needs two variables");
  require(window.dim() == 2, errc::dimension_mismatch, "window arity mismatch");
  MultiPoly<cdouble> p = x_curve, q = y_curve;
  int dp = p.degree_in_var(1), dq = q.degree_in_var(1);
  bool swapped = false;
  if (dp < 1 || dq < 1) {
    // Eliminate x instead when either curve ignores y.
    swapped = true;
    auto transpose = [](const MultiPoly<cdouble>& f) {
      MultiPoly<cdouble> g(2);
      for (const auto& [m, c] : f.terms()) g.add_term({m.exp[1], m.exp[0]}, c);
      return g;
    };
    p = transpose(p);
    q = transpose(q);
    dp = p.degree_in_var(1);
    dq = q.degree_in_var(1);
    require(dp >= 1 && dq >= 1, errc::bad_input,
            "curves do not both depend on a common elimination variable");
  }
  const Region win = swapped ? Region({window.center[1], window.center[0]},
                                      {window.radii[1], window.radii[0]})
                             : window;

  const int bound = dp * std::max(q.degree_in_var(0), 0) + dq * std::max(p.degree_in_var(0), 0) + 1;
  const int nodes = bound + 1;
  const double r_node = std::max(1.0, std::abs(win.center[0]) + 2.0 * win.radii[0]);

  auto coeffs_p = p.coeffs_in_var(1);
  auto coeffs_q = q.coeffs_in_var(1);
  auto eval_col = [&](const std::vector<MultiPoly<cdouble>>& cs, cdouble x) {
    std::vector<cdouble> out;
    out.reserve(cs.size());
    std::vector<cdouble> pt{x};
    for (const auto& c : cs) out.push_back(c.evaluate(pt));
    return out;
  };

  std::vector<cdouble> dets(static_cast<std::size_t>(nodes));
  double max_det = 0.0;
  for (int j = 0; j < nodes; ++j) {
    double th = 2.0 * std::numbers::pi * double(j) / double(nodes);
    cdouble x = r_node * cdouble(std::cos(th), std::sin(th));
    std::vector<cdouble> a = eval_col(coeffs_p, x);  // ascending in y, size dp+1
    std::vector<cdouble> b = eval_col(coeffs_q, x);
    Mat<cdouble> syl(dp + dq, dp + dq);
    for (int r = 0; r < dq; ++r)
      for (int k = 0; k <= dp; ++k) syl(r, r + k) = a[std::size_t(dp - k)];
    for (int r = 0; r < dp; ++r)
      for (int k = 0; k <= dq; ++k) syl(dq + r, r + k) = b[std::size_t(dq - k)];
    dets[std::size_t(j)] = det(syl);
    max_det = std::max(max_det, std::abs(dets[std::size_t(j)]));
  }

  // Scale of a Sylvester determinant with these coefficient sizes; used to
  // decide whether the sampled determinants are "identically zero".
  std::vector<cdouble> zero2(2, cdouble(0.0, 0.0));
  std::vector<double> rad2{r_node, r_node};
  double sp = std::max(p.sup_bound(zero2, rad2), 1e-300);
  double sq = std::max(q.sup_bound(zero2, rad2), 1e-300);
  double ref = std::pow(sp, double(dq)) * std::pow(sq, double(dp));
  CurveIntersections out;
  if (max_det <= 1e-10 * ref) {
    out.common_component = true;
    return out;
  }

  // Inverse DFT on the node circle recovers the resultant's coefficients.
  std::vector<cdouble> rc(static_cast<std::size_t>(nodes), cdouble(0.0, 0.0));
  for (int k = 0; k < nodes; ++k) {
    cdouble acc(0.0, 0.0);
    for (int j = 0; j < nodes; ++j) {
      double th = -2.0 * std::numbers::pi * double(j) * double(k) / double(nodes);
      acc += dets[std::size_t(j)] * cdouble(std::cos(th), std::sin(th));
    }
    rc[std::size_t(k)] = acc / (double(nodes) * std::pow(r_node, double(k)));
  }
  double cmax = 0.0;
  for (const cdouble& c : rc) cmax = std::max(cmax, std::abs(c));
  for (cdouble& c : rc)
    if (std::abs(c) <= 1e-9 * cmax) c = cdouble(0.0, 0.0);
  UniPoly<cdouble> res(std::move(rc));
  if (res.degree() < 1) return out;  // constant resultant: empty intersection

  for (const cdouble& x : all_roots(res)) {
    if (std::abs(x - win.center[0]) > win.radii[0] * (1.0 + 1e-9)) continue;
    MultiPoly<cdouble> p_at = p.specialize_var(0, x);
    MultiPoly<cdouble> q_at = q.specialize_var(0, x);
    UniPoly<cdouble> up = to_unipoly(p_at);
    if (up.degree() < 1) continue;
    double sq_at = std::max(to_unipoly(q_at).eval_scale(std::abs(win.center[1]) + win.radii[1]),
                            1e-300);
    double sp_at = std::max(up.eval_scale(std::abs(win.center[1]) + win.radii[1]), 1e-300);
    for (const cdouble& y : all_roots(up)) {
      if (std::abs(y - win.center[1]) > win.radii[1] * (1.0 + 1e-9)) continue;
      cdouble qv = to_unipoly(q_at)(y);
      cdouble pv = up(y);
      if (std::abs(qv) > 1e-6 * sq_at || std::abs(pv) > 1e-6 * sp_at) continue;
      std::vector<cdouble> pt = swapped ? std::vector<cdouble>{y, x} : std::vector<cdouble>{x, y};
      bool dup = false;
      for (const auto& seen : out.points) {
        double d = std::hypot(std::abs(seen[0] - pt[0]), std::abs(seen[1] - pt[1]));
        if (d <= 1e-7 * (1.0 + std::abs(pt[0]) + std::abs(pt[1]))) dup = true;
      }
      if (!dup) out.points.push_back(std::move(pt));
    }
  }
  return out;
}

/// Persistence of proper (finite) intersection for a pair of plane-curve
/// families: the member curves at t0 must meet in finitely many points
/// inside the window, and the same must hold for parameters near t0.  A
/// member pair sharing a component is reported per-t rather than thrown.
inline ConvergenceReport properness_persistence_check(const ParamFamily& fam_x,
                                                      const ParamFamily& fam_y,
                                                      const Region& window,
                                                      std::span<const cdouble> t_sequence) {
  validate_family(fam_x);
  validate_family(fam_y);
  require(fam_x.space_dim() == 2 && fam_y.space_dim() == 2, errc::bad_input,
          "properness persistence is implemented for plane curves");
  require(std::abs(fam_x.t0 - fam_y.t0) == 0.0, errc::bad_input,
          "families must share the parameter center");

  ConvergenceReport rep;
  rep.check = "properness_persistence";
  auto at_t0 = plane_curve_intersections(specialize_parameter(fam_x, fam_x.t0),
                                                 specialize_parameter(fam_y, fam_y.t0), window);
  require(!at_t0.common_component, errc::improper_intersection,
          "curves share a component at t0");
  PerTEntry center = detail::make_entry(fam_x.t0, fam_x.t0);
  center.values["count"] = double(at_t0.points.size());
  rep.per_t.push_back(center);
  rep.extras["count_at_t0"] = double(at_t0.points.size());

  for (const cdouble& t : t_sequence) {
    PerTEntry e = detail::make_entry(t, fam_x.t0);
    auto isec = plane_curve_intersections(specialize_parameter(fam_x, t),
                                                  specialize_parameter(fam_y, t), window);
    if (isec.common_component) {
      e.ok = false;
      e.note = "curves share a component at this parameter";
      e.values["count"] = -1.0;
    } else {
      e.values["count"] = double(isec.points.size());
      e.ok = true;
    }
    rep.per_t.push_back(std::move(e));
  }
  detail::finish_grid_verdict(rep);
  return rep;
}

struct UniformLojOptions {
  LojOptions loj;
  FrameOptions frame;
  int slice_base_points = 3;
};

/// The parametric inequality with a uniform exponent: alpha is the order of
/// vanishing of f_t0 at the base point, a Weierstrass frame for f_t0 is
/// fixed once, and every member near t0 is checked against that alpha on
/// that frame box, recording its own constant c(t).  Slice degrees of the
/// members must coincide with alpha on the discovered neighbourhood.
inline ConvergenceReport uniform_exponent_verify(const ParamFamily& fam,
                                                 std::span<const cdouble> t_grid,
                                                 int n_samples = 512, std::uint64_t seed = 0,
                                                 const UniformLojOptions& opt = {}) {
  validate_family(fam);
  require(is_base_anchored(fam), errc::not_a_root,
          "base point must lie on every member zero set");

  // Anchor the base point at the origin once and for all.
  ParamFamily shifted = fam;
  std::vector<cdouble> a = family_base(fam);
  bool nonzero_base = false;
  for (const cdouble& c : a)
    if (std::abs(c) != 0.0) nonzero_base = true;
  if (nonzero_base) {
    std::vector<cdouble> full(static_cast<std::size_t>(fam.poly.nvars()), cdouble(0.0, 0.0));
    for (int i = 0, j = 0; i < fam.poly.nvars(); ++i)
      if (i != fam.param_index) full[std::size_t(i)] = a[std::size_t(j++)];
    shifted.poly = fam.poly.shift(full);
    shifted.base_point.assign(static_cast<std::size_t>(fam.space_dim()), cdouble(0.0, 0.0));
  }

  ConvergenceReport rep;
  rep.check = "uniform_lojasiewicz";
  rep.seed = seed;
  MultiPoly<cdouble> f0 = specialize_parameter(shifted, shifted.t0);
  std::vector<cdouble> origin(static_cast<std::size_t>(shifted.space_dim()), cdouble(0.0, 0.0));
  auto ord0 = order_at(f0, origin);
  require(ord0.has_value(), errc::zero_polynomial, "f at t0 is the zero polynomial");
  require(*ord0 >= 1, errc::not_a_root, "f at t0 does not vanish at the base point");
  const int alpha = int(*ord0);
  rep.extras["alpha"] = double(alpha);

  WeierstrassFrame frame = choose_weierstrass_frame(f0, origin, derive_seed(seed, 1), opt.frame);
  rep.extras["frame_w_radius"] = frame.box.radii.back();
  rep.extras["frame_v_radius"] = frame.box.radii.front();
  rep.extras["frame_identity"] = frame.basis.is_identity(1e-14) ? 1.0 : 0.0;

  std::vector<cdouble> ts;
  ts.push_back(shifted.t0);
  ts.insert(ts.end(), t_grid.begin(), t_grid.end());
  int properness_passes = 0;
  for (std::size_t i = 0; i < ts.size(); ++i) {
    PerTEntry e = detail::make_entry(ts[i], shifted.t0);
    MultiPoly<cdouble> ft = specialize_parameter(shifted, ts[i]);
    require(!ft.is_zero(), errc::zero_polynomial,
            "family member vanishes identically at a grid parameter");
    MultiPoly<cdouble> gt = in_frame(ft, frame);
    try {
      SliceOptions sopt;
      auto prop = slice_properness(gt, frame.box, derive_seed(seed, 100 + i), sopt);
      require(prop.ok, errc::properness_violation,
              "member zero set meets the fibre boundary of the frame box");
      auto slice = weierstrass_slice_degree(gt, frame.box, opt.slice_base_points,
                                            derive_seed(seed, 200 + i), sopt);
      e.values["slice_degree"] = double(slice.delta);
      std::vector<cdouble> zero_origin(static_cast<std::size_t>(shifted.space_dim()),
                                       cdouble(0.0, 0.0));
      auto loj = verify_inequality(gt, zero_origin, double(alpha), frame.box, n_samples,
                                   derive_seed(seed, 300 + i), opt.loj);
      e.values["c_of_t"] = loj.worst_ratio_c;
      e.values["loj_holds"] = loj.holds ? 1.0 : 0.0;
      e.ok = loj.holds && slice.delta == alpha;
      if (!e.ok)
        e.note = slice.delta != alpha ? "slice degree differs from alpha"
                                      : "quotient decayed across shells";
      ++properness_passes;
    } catch (const error& err) {
      e.ok = false;
      e.note = err.what();
    }
    rep.per_t.push_back(std::move(e));
  }
  require(properness_passes > 0, errc::properness_violation,
          "no parameter passed the properness check on the frame box");
  detail::finish_grid_verdict(rep);
  return rep;
}

}  // namespace zerocycle
