#include <catch2/catch_amalgamated.hpp>

#include <zerocycle/zerocycle.hpp>

#include "fixtures.hpp"

#include <cmath>
#include <vector>

using namespace zerocycle;
using zcfix::P;
using zcfix::c2;

TEST_CASE("distance to a hyperplane matches the projection formula") {
  // f = x + 2y + 3: dist(p, f^{-1}(0)) = |p_1 + 2 p_2 + 3| / sqrt(1 + 4).
  // The sweep takes a minimum over lines, so it attains the formula exactly
  // where one of its deterministic directions is the projection direction:
  // probe along the normal line lambda (1, 2), where the nearest hyperplane
  // point lies on the ray back through the origin.  Elsewhere the sweep
  // upper-bounds the formula.
  P x = P::variable(2, 0), y = P::variable(2, 1);
  P f = x + c2(2) * y + c2(3);
  SplitMix64 g(5150);
  for (int i = 0; i < 12; ++i) {
    cdouble lam = g.unit_complex() * g.uniform(0.2, 2.0);
    std::vector<cdouble> p = {lam, 2.0 * lam};
    double expect = std::abs(p[0] + 2.0 * p[1] + 3.0) / std::sqrt(5.0);
    DistanceEstimate d = dist_to_zero_set(f, p, 24, 7);
    REQUIRE(d.found);
    REQUIRE(std::abs(d.value - expect) < 1e-10 * (1.0 + expect));
  }
  for (int i = 0; i < 12; ++i) {
    std::vector<cdouble> p = {g.unit_complex() * g.uniform(0.0, 2.0),
                              g.unit_complex() * g.uniform(0.0, 2.0)};
    double formula = std::abs(p[0] + 2.0 * p[1] + 3.0) / std::sqrt(5.0);
    DistanceEstimate d = dist_to_zero_set(f, p, 24, 7);
    REQUIRE(d.found);
    REQUIRE(d.value >= formula - 1e-10 * (1.0 + formula));
  }
}

TEST_CASE("distance to the coordinate axes is the smaller coordinate") {
  P x = P::variable(2, 0), y = P::variable(2, 1);
  P f = x * y;
  SplitMix64 g(86);
  for (int i = 0; i < 12; ++i) {
    std::vector<cdouble> p = {g.unit_complex() * g.uniform(0.05, 1.5),
                              g.unit_complex() * g.uniform(0.05, 1.5)};
    double expect = std::min(std::abs(p[0]), std::abs(p[1]));
    DistanceEstimate d = dist_to_zero_set(f, p, 8, 3);
    REQUIRE(d.found);
    REQUIRE(std::abs(d.value - expect) < 1e-10 * (1.0 + expect));
  }
}

TEST_CASE("distance to a parabola matches a dense scan") {
  // Z = {(x, x^2)}; query q = (0, c). Compare against a grid scan over the
  // parameter x with local refinement.
  P x = P::variable(2, 0), y = P::variable(2, 1);
  P f = y - x.pow(2);
  for (double c : {0.2, 0.45}) {
    std::vector<cdouble> q = {cdouble(0.0, 0.0), cdouble(c, 0.0)};
    auto dist_to_graph = [&](cdouble t) {
      return std::sqrt(std::norm(t - q[0]) + std::norm(t * t - q[1]));
    };
    double best = dist_to_graph(cdouble(0.0, 0.0));
    cdouble best_t(0.0, 0.0);
    for (int a = -60; a <= 60; ++a)
      for (int b = -60; b <= 60; ++b) {
        cdouble t(a / 40.0, b / 40.0);
        if (double v = dist_to_graph(t); v < best) {
          best = v;
          best_t = t;
        }
      }
    double step = 1.0 / 40.0;
    for (int level = 0; level < 24; ++level) {
      step *= 0.5;
      cdouble improved = best_t;
      for (int a = -2; a <= 2; ++a)
        for (int b = -2; b <= 2; ++b) {
          cdouble t = best_t + cdouble(a * step, b * step);
          if (double v = dist_to_graph(t); v < best) {
            best = v;
            improved = t;
          }
        }
      best_t = improved;
    }
    DistanceEstimate d = dist_to_zero_set(f, q, 48, 12);
    REQUIRE(d.found);
    INFO("offset " << c);
    REQUIRE(d.value >= best - 1e-9);      // line sweep upper-bounds the distance
    REQUIRE(d.value - best < 1e-4);       // and comes close to the scan optimum
  }
}

TEST_CASE("distance estimates never increase with more directions") {
  P x = P::variable(2, 0), y = P::variable(2, 1);
  P f = (y - x.pow(2)) * (x + y - c2(1));
  std::vector<cdouble> q = {cdouble(0.3, 0.1), cdouble(0.4, -0.2)};
  double prev = std::numeric_limits<double>::infinity();
  for (int n : {4, 8, 16, 32, 64}) {
    DistanceEstimate d = dist_to_zero_set(f, q, n, 99);
    REQUIRE(d.found);
    REQUIRE(d.value <= prev + 1e-15);
    prev = d.value;
  }
}

TEST_CASE("distance witnesses lie on the zero set at the reported distance") {
  for (const auto& fx : zcfix::corpus()) {
    const int m = fx.poly.nvars();
    SplitMix64 g(400 + std::uint64_t(m));
    std::vector<cdouble> q;
    for (int i = 0; i < m; ++i) q.push_back(g.unit_complex() * g.uniform(0.2, 0.8));
    DistanceEstimate d = dist_to_zero_set(fx.poly, q, 16, 12345);
    INFO(fx.name);
    REQUIRE(d.found);
    REQUIRE(d.witness.size() == q.size());
    double gap = 0.0, scale = 1.0;
    for (std::size_t i = 0; i < q.size(); ++i) {
      gap += std::norm(d.witness[i] - q[i]);
      scale = std::max(scale, std::abs(d.witness[i]));
    }
    REQUIRE(std::abs(std::sqrt(gap) - d.value) < 1e-9 * (1.0 + d.value));
    double fw = std::abs(fx.poly.evaluate(d.witness));
    REQUIRE(fw <= 1e-7 * fx.poly.sup_bound(d.witness, std::vector<double>(q.size(), 0.1)));
  }
}

TEST_CASE("probed cycle degree equals the vanishing order") {
  for (const auto& fx : zcfix::corpus()) {
    std::vector<cdouble> origin(std::size_t(fx.poly.nvars()), cdouble(0.0, 0.0));
    INFO(fx.name);
    REQUIRE(local_degree_cycle(fx.poly, origin, 0.3, 2, 21) == fx.ord);
  }
}

TEST_CASE("set degree ignores multiplicity while cycle degree keeps it") {
  P x = P::variable(2, 0), y = P::variable(2, 1);
  std::vector<cdouble> origin(2, cdouble(0.0, 0.0));

  P double_line = (x + y).pow(2);
  REQUIRE(local_degree_cycle(double_line, origin, 0.3, 2, 5) == 2);
  REQUIRE(local_degree_set(double_line, origin, 0.3, 2, 5) == 1);

  P axes = x * y;
  REQUIRE(local_degree_cycle(axes, origin, 0.3, 2, 5) == 2);
  REQUIRE(local_degree_set(axes, origin, 0.3, 2, 5) == 2);

  P mixed = x.pow(2) * y.pow(3);
  REQUIRE(local_degree_cycle(mixed, origin, 0.3, 2, 5) == 5);
  REQUIRE(local_degree_set(mixed, origin, 0.3, 2, 5) == 2);
}

TEST_CASE("cycle degree times set degree dominates the order") {
  for (const auto& fx : zcfix::corpus()) {
    std::vector<cdouble> origin(std::size_t(fx.poly.nvars()), cdouble(0.0, 0.0));
    int cyc = local_degree_cycle(fx.poly, origin, 0.3, 2, 77);
    int set = local_degree_set(fx.poly, origin, 0.3, 2, 77);
    INFO(fx.name);
    REQUIRE(cyc * set >= fx.ord);
  }
}

TEST_CASE("slice properness detects fibres escaping the box") {
  P x = P::variable(2, 0), t = P::variable(2, 1);
  P f = t.pow(2) - x;
  PropernessReport good = slice_properness(f, zcfix::slice_box(0.04, 0.5));
  REQUIRE(good.ok);
  // over |x| <= 1 the fibre roots reach |t| = 1 > 0.5: zero set crosses V x dW
  PropernessReport bad = slice_properness(f, zcfix::slice_box(1.0, 0.5));
  REQUIRE(!bad.ok);
}

TEST_CASE("slice degree fixtures match explicit fibre roots") {
  for (const auto& fx : zcfix::slice_corpus()) {
    SliceCycleReport rep = weierstrass_slice_degree(fx.poly, fx.box, 4, 9);
    INFO(fx.name);
    REQUIRE(rep.delta == fx.delta);
    REQUIRE(rep.covering_number == fx.covering);
    int total = 0;
    for (const auto& c : rep.roots) total += c.multiplicity;
    REQUIRE(total == rep.delta);
  }
}

TEST_CASE("frame search straightens a degenerate fibre direction") {
  // f = xy vanishes identically along the fibre axis, so the identity frame
  // is unusable and a rotation must be found.
  P x = P::variable(2, 0), y = P::variable(2, 1);
  std::vector<cdouble> origin(2, cdouble(0.0, 0.0));
  WeierstrassFrame frame = choose_weierstrass_frame(x * y, origin, 17);
  REQUIRE(frame.order == 2);
  REQUIRE(!frame.basis.is_identity(1e-10));
  P g = in_frame(x * y, frame);
  SliceCycleReport rep = weierstrass_slice_degree(g, frame.box, 4, 17);
  REQUIRE(rep.delta == 2);
}

TEST_CASE("frame search keeps the identity when the fibre is already regular") {
  P x = P::variable(2, 0), y = P::variable(2, 1);
  std::vector<cdouble> origin(2, cdouble(0.0, 0.0));
  P cusp = y.pow(2) - x.pow(3);
  WeierstrassFrame frame = choose_weierstrass_frame(cusp, origin, 3);
  REQUIRE(frame.order == 2);
  REQUIRE(frame.basis.is_identity(1e-12));
  REQUIRE(frame.box.radii.size() == 2);
  for (double r : frame.box.radii) REQUIRE(r > 0.0);
}

TEST_CASE("frame slice degree equals the vanishing order on two-variable fixtures") {
  int done = 0;
  for (const auto& fx : zcfix::corpus()) {
    if (fx.poly.nvars() != 2 || fx.ord < 1) continue;
    if (done == 6) break;
    std::vector<cdouble> origin(2, cdouble(0.0, 0.0));
    WeierstrassFrame frame = choose_weierstrass_frame(fx.poly, origin, 29);
    INFO(fx.name);
    REQUIRE(frame.order == fx.ord);
    done++;
  }
  REQUIRE(done == 6);
}
