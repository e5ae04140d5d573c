#pragma once

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <span>
#include <vector>

#include "zerocycle/errors.hpp"
#include "zerocycle/matrix.hpp"
#include "zerocycle/multipoly.hpp"
#include "zerocycle/region.hpp"
#include "zerocycle/rng.hpp"
#include "zerocycle/roots.hpp"

namespace zerocycle {

struct DistanceEstimate {
  double value = std::numeric_limits<double>::infinity();
  std::vector<cdouble> witness;  // zero-set point realizing value; empty if none found
  int directions_used = 0;
  int directions_failed = 0;  // line solves that did not converge (skipped)
  bool found = false;
  std::uint64_t seed = 0;
};

struct ProbeOptions {
  double offset_frac = 0.02;        // probe line offset, relative to radius
  double boundary_margin_rel = 1e-3;  // exclusion band around the probe sphere
  double cluster_tol_rel = 1e-5;    // set-count clustering, relative to radius
  int max_retries = 6;
  int max_shrinks = 6;  // radius halvings allowed until the count stabilizes
};

struct SliceOptions {
  double cluster_tol_rel = 1e-6;   // fibre-root clustering, relative to W radius
  double boundary_margin_rel = 1e-6;
  double properness_tol_rel = 1e-8;
  double properness_margin_rel = 0.02;  // fibre roots this close to dW flag a crossing
  int properness_base_samples = 12;
  int properness_angle_samples = 64;
  double drop_tol = 1e-12;
};

struct PropernessReport {
  bool ok = false;
  double min_boundary_abs = 0.0;  // min |f| over sampled boundary fibres
  double max_sample_abs = 0.0;    // max |f| over all samples (scale reference)
  double tol_used = 0.0;
};

struct SliceCycleReport {
  std::vector<cdouble> base_point;   // generic base point used (dim m-1)
  std::vector<RootCluster> roots;    // fibre roots over that base point
  int delta = 0;                     // total intersection count with multiplicity
  int covering_number = 0;           // distinct fibre points at a generic base point
  std::uint64_t seed = 0;
};

struct WeierstrassFrame {
  std::vector<cdouble> origin;
  Mat<cdouble> basis;  // unitary change of coordinates, x = origin + basis * y
  Region box;          // polydisc in frame coordinates, centered at 0; last var is the fibre
  int order = 0;       // slice degree of f on the box (= order of vanishing at origin)
  std::uint64_t seed = 0;
};

struct FrameOptions {
  double max_w_radius = 1.0;
  double max_v_radius = 1.0;
  int max_attempts = 24;
  int max_shrink = 40;
  int n_base_points = 4;
  double drop_tol = 1e-12;
  // Headroom demanded of an accepted box: fibre roots must clear the fibre
  // boundary by this fraction, so nearby family members keep a proper box.
  double properness_margin_rel = 0.2;
};

/// Distance from z to the zero set of f, estimated from above by sweeping
/// lines through z and taking the nearest root over all of them.  The
/// direction list starts with the coordinate axes and the ray back through
/// the origin, then appends `n_directions` seeded random directions; growing
/// n_directions under the same seed extends that list, so the estimate can
/// only decrease.
inline DistanceEstimate dist_to_zero_set(const MultiPoly<cdouble>& f, std::span<const cdouble> z,
                                         int n_directions = 16, std::uint64_t seed = 0) {
  require(!f.is_zero(), errc::zero_polynomial, "distance to the zero set of 0");
  require(int(z.size()) == f.nvars(), errc::dimension_mismatch, "point arity mismatch");
  require(n_directions >= 0, errc::bad_input, "negative direction count");
  const int m = f.nvars();

  std::vector<std::vector<cdouble>> dirs;
  for (int i = 0; i < m; ++i) {
    std::vector<cdouble> e(static_cast<std::size_t>(m), cdouble(0.0, 0.0));
    e[std::size_t(i)] = cdouble(1.0, 0.0);
    dirs.push_back(std::move(e));
  }
  double znorm = 0.0;
  for (const cdouble& zi : z) znorm += std::norm(zi);
  znorm = std::sqrt(znorm);
  if (znorm > 0.0) {
    std::vector<cdouble> back(z.begin(), z.end());
    for (cdouble& c : back) c *= cdouble(-1.0 / znorm, 0.0);
    dirs.push_back(std::move(back));
  }
  for (int k = 0; k < n_directions; ++k) {
    SplitMix64 g(derive_seed(seed, 100 + std::uint64_t(k)));
    dirs.push_back(random_unit_vector(g, m));
  }

  DistanceEstimate est;
  est.seed = seed;
  est.directions_used = int(dirs.size());
  for (const auto& v : dirs) {
    UniPoly<cdouble> u = f.restrict_to_line(z, v);
    if (u.is_zero()) {
      // The whole line lies in the zero set; z itself is a zero.
      est.value = 0.0;
      est.witness.assign(z.begin(), z.end());
      est.found = true;
      return est;
    }
    if (u.degree() < 1) continue;
    std::vector<cdouble> rs;
    try {
      rs = all_roots(u);
    } catch (const error&) {
      ++est.directions_failed;
      continue;
    }
    for (const cdouble& s : rs) {
      double d = std::abs(s);
      if (d < est.value) {
        est.value = d;
        est.witness.resize(std::size_t(m));
        for (int i = 0; i < m; ++i) est.witness[std::size_t(i)] = z[std::size_t(i)] + s * v[std::size_t(i)];
        est.found = true;
      }
    }
  }
  if (!est.found) est.witness.clear();
  return est;
}

namespace detail {

inline double ball_dist(std::span<const cdouble> q, std::span<const cdouble> a) {
  double s = 0.0;
  for (std::size_t i = 0; i < q.size(); ++i) s += std::norm(q[i] - a[i]);
  return std::sqrt(s);
}

struct ProbeCounts {
  int with_multiplicity = 0;
  int distinct = 0;
};

/// One probe line near a: intersections of the zero set with the line,
/// restricted to the ball B(a, radius).  Throws unstable_count if boundary
/// ambiguity persists across retries.
inline ProbeCounts probe_ball_counts(const MultiPoly<cdouble>& f, std::span<const cdouble> a,
                                     double radius, std::uint64_t seed, const ProbeOptions& opt) {
  const int m = f.nvars();
  for (int attempt = 0; attempt <= opt.max_retries; ++attempt) {
    SplitMix64 g(derive_seed(seed, std::uint64_t(attempt)));
    std::vector<cdouble> v = random_unit_vector(g, m);
    std::vector<cdouble> off = random_unit_vector(g, m);
    std::vector<cdouble> p(a.begin(), a.end());
    for (int i = 0; i < m; ++i) p[std::size_t(i)] += opt.offset_frac * radius * off[std::size_t(i)];
    UniPoly<cdouble> u = f.restrict_to_line(p, v);
    if (u.is_zero() || u.degree() < 1) continue;  // degenerate line, try another
    std::vector<cdouble> rs;
    try {
      rs = all_roots(u);
    } catch (const error&) {
      continue;
    }
    bool ambiguous = false;
    std::vector<cdouble> inside;
    std::vector<cdouble> q(static_cast<std::size_t>(m));
    for (const cdouble& s : rs) {
      for (int i = 0; i < m; ++i) q[std::size_t(i)] = p[std::size_t(i)] + s * v[std::size_t(i)];
      double d = ball_dist(q, a);
      if (std::abs(d - radius) <= opt.boundary_margin_rel * radius) {
        ambiguous = true;
        break;
      }
      if (d < radius) inside.push_back(s);
    }
    if (ambiguous) continue;
    ProbeCounts c;
    c.with_multiplicity = int(inside.size());
    c.distinct = int(cluster_roots(inside, opt.cluster_tol_rel * radius).size());
    return c;
  }
  fail(errc::unstable_count, "probe lines kept hitting the ball boundary");
}

/// Probe count stabilized over dyadic radii.  A far-away branch of the zero
/// set can drift through the probe ball and inflate a single line count, and
/// for some directions it does so at every scale, so agreement between raw
/// counts is the wrong test.  Contamination only ever adds intersections:
/// each radius level therefore takes the minimum count over several
/// independent lines, and the result is accepted once two consecutive levels
/// report the same minimum.
inline int stable_probe_count(const MultiPoly<cdouble>& f, std::span<const cdouble> a,
                              double probe_radius, int trials, std::uint64_t seed,
                              const ProbeOptions& opt, bool with_multiplicity) {
  const int per_level = 2 * trials + 2;
  int prev = -1;
  for (int level = 0; level <= opt.max_shrinks; ++level) {
    const double rho = probe_radius / double(1 << level);
    int level_min = -1;
    for (int k = 0; k < per_level; ++k) {
      auto c = probe_ball_counts(
          f, a, rho, derive_seed(seed, std::uint64_t(level) * 64 + std::uint64_t(k)), opt);
      int v = with_multiplicity ? c.with_multiplicity : c.distinct;
      if (level_min < 0 || v < level_min) level_min = v;
    }
    if (level_min == prev) return level_min;
    prev = level_min;
  }
  fail(errc::unstable_count, with_multiplicity
                                 ? "intersection count varies across probes"
                                 : "distinct intersection count varies across probes");
}

}  // namespace detail

/// Local degree of the zero cycle of f at a: intersections (with
/// multiplicity) of the zero set with a generic line through a small
/// perturbation of a, counted inside B(a, probe_radius).  Far branches of
/// the zero set passing through the ball can only inflate a count, so each
/// dyadic radius takes the minimum over a batch of independent lines and the
/// count is accepted when two consecutive radii agree; radii run out at
/// probe_radius / 2^max_shrinks and the probe throws unstable_count.
inline int local_degree_cycle(const MultiPoly<cdouble>& f, std::span<const cdouble> a,
                              double probe_radius, int trials = 3, std::uint64_t seed = 0,
                              const ProbeOptions& opt = {}) {
  auto ord = order_at(f, a);
  require(ord.has_value(), errc::zero_polynomial, "local degree of the zero polynomial");
  require(*ord >= 1, errc::not_a_root, "base point is not on the zero set");
  require(probe_radius > 0.0, errc::bad_input, "probe radius must be positive");
  require(trials >= 1, errc::bad_input, "need at least one trial");
  return detail::stable_probe_count(f, a, probe_radius, trials, seed, opt, true);
}

/// Same probe, counting distinct intersection points instead of
/// multiplicities.
inline int local_degree_set(const MultiPoly<cdouble>& f, std::span<const cdouble> a,
                            double probe_radius, int trials = 3, std::uint64_t seed = 0,
                            const ProbeOptions& opt = {}) {
  auto ord = order_at(f, a);
  require(ord.has_value(), errc::zero_polynomial, "local degree of the zero polynomial");
  require(*ord >= 1, errc::not_a_root, "base point is not on the zero set");
  require(probe_radius > 0.0, errc::bad_input, "probe radius must be positive");
  require(trials >= 1, errc::bad_input, "need at least one trial");
  return detail::stable_probe_count(f, a, probe_radius, trials, seed, opt, false);
}

/// Properness of the fibre projection over a polydisc box V x W (W = last
/// variable).  Two sampled certificates must both pass: |f| stays above
/// tol_rel * (sampled max |f|) on the fibre boundary V x dW, and the fibre
/// roots over every sampled base point keep away from dW with an inside
/// count (with multiplicity) that does not vary across base points.  Base
/// points cover the center, interior and the distinguished boundary of V.
inline PropernessReport slice_properness(const MultiPoly<cdouble>& f, const Region& box,
                                         std::uint64_t seed = 0, const SliceOptions& opt = {}) {
  require(box.dim() == f.nvars(), errc::dimension_mismatch, "box arity mismatch");
  const int m = f.nvars();
  const int nb = m == 1 ? 1 : std::max(3, opt.properness_base_samples);
  const double rho_w = box.radii.back();
  const cdouble cw = box.center.back();

  std::vector<std::vector<cdouble>> xs;
  if (m == 1) {
    xs.push_back({});
  } else {
    std::vector<cdouble> center(box.center.begin(), box.center.end() - 1);
    xs.push_back(center);
    SplitMix64 g(derive_seed(seed, 0));
    for (int k = 1; k < nb; ++k) {
      std::vector<cdouble> x(center);
      bool on_boundary = (k % 2) == 0;  // alternate interior / distinguished boundary
      for (int i = 0; i + 1 < m; ++i) {
        double r = on_boundary ? box.radii[std::size_t(i)]
                               : box.radii[std::size_t(i)] * std::sqrt(g.uniform());
        x[std::size_t(i)] += r * g.unit_complex();
      }
      xs.push_back(std::move(x));
    }
  }

  PropernessReport rep;
  rep.min_boundary_abs = std::numeric_limits<double>::infinity();
  std::vector<cdouble> pt(static_cast<std::size_t>(m));
  for (const auto& x : xs) {
    for (int i = 0; i + 1 < m; ++i) pt[std::size_t(i)] = x[std::size_t(i)];
    for (int k = 0; k < opt.properness_angle_samples; ++k) {
      double th = 2.0 * std::numbers::pi * double(k) / double(opt.properness_angle_samples);
      pt[std::size_t(m - 1)] = cw + rho_w * cdouble(std::cos(th), std::sin(th));
      double av = std::abs(f.evaluate(pt));
      rep.min_boundary_abs = std::min(rep.min_boundary_abs, av);
      rep.max_sample_abs = std::max(rep.max_sample_abs, av);
    }
    // Interior fibre samples only feed the scale reference.
    for (int k = 0; k < 8; ++k) {
      pt[std::size_t(m - 1)] = cw + rho_w * (double(k) / 8.0) * cdouble(std::cos(2.4 * k), std::sin(2.4 * k));
      rep.max_sample_abs = std::max(rep.max_sample_abs, std::abs(f.evaluate(pt)));
    }
  }

  // Fibre-root certificate.  A zero set crossing V x dW shows up either as a
  // root inside the margin band around rho_w or as an inside count that
  // differs between base points.
  bool roots_ok = true;
  int inside_count = -1;
  std::vector<cdouble> fibre_dir(static_cast<std::size_t>(m), cdouble(0.0, 0.0));
  fibre_dir[std::size_t(m - 1)] = cdouble(1.0, 0.0);
  for (const auto& x : xs) {
    std::vector<cdouble> p(x.begin(), x.end());
    p.push_back(cw);
    UniPoly<cdouble> u = f.restrict_to_line(p, fibre_dir);
    if (u.is_zero()) {
      roots_ok = false;  // a whole fibre lies in the zero set
      break;
    }
    int inside = 0;
    if (u.degree() >= 1) {
      std::vector<cdouble> rs;
      try {
        rs = all_roots(u);
      } catch (const error&) {
        roots_ok = false;
        break;
      }
      for (const cdouble& s : rs) {
        double d = std::abs(s);
        if (std::abs(d - rho_w) <= opt.properness_margin_rel * rho_w) roots_ok = false;
        if (d < rho_w) ++inside;
      }
    }
    if (!roots_ok) break;
    if (inside_count < 0) inside_count = inside;
    roots_ok = inside == inside_count;
    if (!roots_ok) break;
  }

  rep.tol_used = opt.properness_tol_rel * rep.max_sample_abs;
  rep.ok = roots_ok && rep.max_sample_abs > 0.0 && rep.min_boundary_abs > rep.tol_used;
  return rep;
}

namespace detail {

/// Fibre roots of f over base point x, inside the W disc of the box.
inline std::vector<RootCluster> fibre_roots(const MultiPoly<cdouble>& f, const Region& box,
                                            std::span<const cdouble> x, const SliceOptions& opt) {
  const int m = f.nvars();
  std::vector<cdouble> p(x.begin(), x.end());
  p.push_back(box.center.back());
  std::vector<cdouble> v(static_cast<std::size_t>(m), cdouble(0.0, 0.0));
  v[std::size_t(m - 1)] = cdouble(1.0, 0.0);
  UniPoly<cdouble> u = f.restrict_to_line(p, v);
  require(!u.is_zero(), errc::properness_violation, "a whole fibre lies in the zero set");
  const double rho_w = box.radii.back();
  std::vector<cdouble> inside;
  if (u.degree() >= 1) {
    for (const cdouble& s : all_roots(u)) {
      double d = std::abs(s);
      require(std::abs(d - rho_w) > opt.boundary_margin_rel * rho_w, errc::root_near_boundary,
              "fibre root on the W boundary");
      if (d < rho_w) inside.push_back(s);
    }
  }
  auto clusters = cluster_roots(inside, opt.cluster_tol_rel * rho_w, nullptr);
  for (auto& c : clusters) c.center += box.center.back();  // back to absolute fibre coordinate
  return clusters;
}

}  // namespace detail

/// Weierstrass-type slice degree over a product box V x W (last variable is
/// the fibre).  Checks properness, then counts fibre roots with multiplicity
/// over several base points of V; the multiplicity total delta must agree
/// across base points.  The covering number is the largest distinct-root
/// count seen (base points on the branch locus see fewer).
inline SliceCycleReport weierstrass_slice_degree(const MultiPoly<cdouble>& f, const Region& box,
                                                 int n_base_points = 4, std::uint64_t seed = 0,
                                                 const SliceOptions& opt = {}) {
  require(box.dim() == f.nvars(), errc::dimension_mismatch, "box arity mismatch");
  require(n_base_points >= 1, errc::bad_input, "need at least one base point");
  require(!f.is_zero(), errc::zero_polynomial, "slice degree of the zero polynomial");
  const int m = f.nvars();

  PropernessReport prop = slice_properness(f, box, derive_seed(seed, 1), opt);
  require(prop.ok, errc::properness_violation,
          "zero set meets the fibre boundary over the base box");

  std::vector<std::vector<cdouble>> xs;
  if (m == 1) {
    xs.push_back({});
  } else {
    std::vector<cdouble> center(box.center.begin(), box.center.end() - 1);
    xs.push_back(center);
    SplitMix64 g(derive_seed(seed, 2));
    for (int k = 1; k < n_base_points; ++k) {
      std::vector<cdouble> x(center);
      for (int i = 0; i + 1 < m; ++i)
        x[std::size_t(i)] += 0.7 * box.radii[std::size_t(i)] * std::sqrt(g.uniform()) * g.unit_complex();
      xs.push_back(std::move(x));
    }
  }

  SliceCycleReport rep;
  rep.seed = seed;
  int delta = -1;
  for (const auto& x : xs) {
    auto clusters = detail::fibre_roots(f, box, x, opt);
    int dsum = 0;
    for (const auto& c : clusters) dsum += c.multiplicity;
    if (delta < 0) delta = dsum;
    require(delta == dsum, errc::inconsistent_slice_degree,
            "fibre multiplicity total varies across base points");
    if (int(clusters.size()) >= rep.covering_number) {
      rep.covering_number = int(clusters.size());
      rep.base_point = x;
      rep.roots = clusters;
    }
  }
  rep.delta = delta;
  return rep;
}

/// Picks a unitary frame and a product box at `a` in which f is
/// Weierstrass-ready: the fibre direction leaves the tangent cone (slice
/// order equals the order of vanishing k), and the box is proper with slice
/// degree exactly k.  The identity frame is tried first so axis-aligned
/// inputs keep their coordinates.
inline WeierstrassFrame choose_weierstrass_frame(const MultiPoly<cdouble>& f,
                                                 std::span<const cdouble> a, std::uint64_t seed = 0,
                                                 const FrameOptions& opt = {}) {
  require(!f.is_zero(), errc::zero_polynomial, "frame for the zero polynomial");
  const int m = f.nvars();
  auto ord = order_at(f, a, opt.drop_tol);
  require(ord.has_value(), errc::zero_polynomial, "frame for a numerically zero polynomial");
  require(*ord >= 1, errc::not_a_root, "base point is not on the zero set");
  const int k = int(*ord);

  std::vector<cdouble> zero_pt(static_cast<std::size_t>(m), cdouble(0.0, 0.0));
  std::vector<cdouble> e_last(static_cast<std::size_t>(m), cdouble(0.0, 0.0));
  e_last[std::size_t(m - 1)] = cdouble(1.0, 0.0);

  for (int attempt = 0; attempt < opt.max_attempts; ++attempt) {
    Mat<cdouble> u_mat = attempt == 0 ? Mat<cdouble>::identity(m)
                                      : random_unitary(m, derive_seed(seed, std::uint64_t(attempt)));
    MultiPoly<cdouble> g = f.compose_affine(u_mat, a);
    UniPoly<cdouble> u = g.restrict_to_line(zero_pt, e_last);
    if (u.is_zero()) continue;
    double cmax = u.max_abs_coeff();
    int ord_u = -1;
    for (int j = 0; j <= u.degree(); ++j)
      if (std::abs(u.coeff(j)) > opt.drop_tol * cmax) {
        ord_u = j;
        break;
      }
    if (ord_u != k) continue;  // fibre direction sits in the tangent cone

    UniPoly<cdouble> w = u.shifted_down(k);
    double rho_w = opt.max_w_radius;
    if (w.degree() >= 1) {
      double r1 = std::numeric_limits<double>::infinity();
      bool solved = true;
      std::vector<cdouble> wr;
      try {
        wr = all_roots(w);
      } catch (const error&) {
        solved = false;
      }
      if (!solved) continue;
      for (const cdouble& r : wr) r1 = std::min(r1, std::abs(r));
      rho_w = std::min(opt.max_w_radius, 0.45 * r1);
      if (!(rho_w > 0.0)) continue;  // deflated slice still vanishes at 0
    }

    double rho_v = std::min(rho_w, opt.max_v_radius);
    for (int shrink = 0; shrink <= opt.max_shrink; ++shrink) {
      std::vector<double> radii(static_cast<std::size_t>(m), rho_v);
      radii.back() = rho_w;
      Region box(std::vector<cdouble>(static_cast<std::size_t>(m), cdouble(0.0, 0.0)), radii);
      try {
        SliceOptions sopt;
        sopt.drop_tol = opt.drop_tol;
        sopt.properness_margin_rel = opt.properness_margin_rel;
        auto rep = weierstrass_slice_degree(
            g, box, opt.n_base_points,
            derive_seed(seed, 1000 + std::uint64_t(attempt) * 64 + std::uint64_t(shrink)), sopt);
        if (rep.delta == k) {
          WeierstrassFrame frame;
          frame.origin.assign(a.begin(), a.end());
          frame.basis = u_mat;
          frame.box = box;
          frame.order = k;
          frame.seed = seed;
          return frame;
        }
      } catch (const error&) {
        // properness or consistency failed at this size; shrink and retry
      }
      if (m == 1) break;  // nothing to shrink: W was sized off the slice roots
      rho_v *= 0.5;
    }
  }
  fail(errc::frame_search_failed, "no unitary frame produced a proper Weierstrass box");
}

/// f expressed in frame coordinates: y -> f(origin + basis * y).
inline MultiPoly<cdouble> in_frame(const MultiPoly<cdouble>& f, const WeierstrassFrame& frame) {
  return f.compose_affine(frame.basis, frame.origin);
}

}  // namespace zerocycle
