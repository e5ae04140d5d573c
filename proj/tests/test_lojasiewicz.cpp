#include <catch2/catch_amalgamated.hpp>

#include <zerocycle/zerocycle.hpp>

#include "fixtures.hpp"

#include <cmath>
#include <vector>

using namespace zerocycle;
using zcfix::P;
using zcfix::c1;
using zcfix::c2;

namespace {

Region disc_at_origin(int dim, double radius) {
  Region r;
  r.center.assign(std::size_t(dim), cdouble(0.0, 0.0));
  r.radii.assign(std::size_t(dim), radius);
  return r;
}

}  // namespace

TEST_CASE("pure powers meet the inequality with constant one") {
  P x1 = P::variable(1, 0);
  std::vector<cdouble> origin(1, cdouble(0.0, 0.0));
  for (int k = 1; k <= 4; ++k) {
    LojReport rep = verify_inequality(x1.pow(unsigned(k)), origin, double(k),
                                      disc_at_origin(1, 0.5), 256, 13);
    INFO("k = " << k);
    REQUIRE(rep.holds);
    REQUIRE(rep.worst_ratio_c >= 1.0 - 1e-12);
    REQUIRE(rep.worst_ratio_c <= 1.0 + 1e-9);
  }
}

TEST_CASE("the coordinate product holds at exponent two") {
  P x = P::variable(2, 0), y = P::variable(2, 1);
  std::vector<cdouble> origin(2, cdouble(0.0, 0.0));
  LojReport rep = verify_inequality(x * y, origin, 2.0, disc_at_origin(2, 0.5), 512, 7);
  REQUIRE(rep.holds);
  REQUIRE(rep.worst_ratio_c >= 1.0 - 1e-9);
}

TEST_CASE("an exponent below the order decays across shells") {
  P x1 = P::variable(1, 0);
  std::vector<cdouble> origin(1, cdouble(0.0, 0.0));
  LojReport rep = verify_inequality(x1.pow(2), origin, 1.5, disc_at_origin(1, 0.5), 512, 7);
  REQUIRE(!rep.holds);
  // the ratio behaves like |x|^{0.5}: shell minima halve every two shells
  double first = -1.0, last = -1.0;
  for (const auto& s : rep.shell_profile)
    if (s.samples > 0) {
      if (first < 0.0) first = s.min_ratio;
      last = s.min_ratio;
    }
  REQUIRE(first > 0.0);
  REQUIRE(last <= 0.3 * first);
}

TEST_CASE("exponent estimates recover the order") {
  P x1 = P::variable(1, 0);
  P x = P::variable(2, 0), y = P::variable(2, 1);
  std::vector<cdouble> o1(1, cdouble(0.0, 0.0)), o2(2, cdouble(0.0, 0.0));
  REQUIRE(std::abs(estimate_exponent(x1.pow(3), o1, disc_at_origin(1, 0.5), 512, 3) - 3.0) <= 0.1);
  REQUIRE(std::abs(estimate_exponent(x * y, o2, disc_at_origin(2, 0.5), 512, 3) - 2.0) <= 0.1);
  REQUIRE(std::abs(estimate_exponent(y.pow(2) - x.pow(3), o2, disc_at_origin(2, 0.5), 512, 3) -
                   2.0) <= 0.1);
}

TEST_CASE("the order is the sharp exponent on sample fixtures") {
  int checked = 0;
  for (const auto& fx : zcfix::corpus()) {
    if (fx.poly.nvars() == 3 || fx.ord < 1) continue;
    if (checked == 6) break;
    checked++;
    std::vector<cdouble> origin(std::size_t(fx.poly.nvars()), cdouble(0.0, 0.0));
    Region region = disc_at_origin(fx.poly.nvars(), 0.5);
    LojReport at_ord = verify_inequality(fx.poly, origin, double(fx.ord), region, 512, 23);
    LojReport below = verify_inequality(fx.poly, origin, double(fx.ord) - 0.5, region, 512, 23);
    INFO(fx.name);
    REQUIRE(at_ord.holds);
    REQUIRE(!below.holds);
  }
  REQUIRE(checked == 6);
}

TEST_CASE("the worst ratio never decreases in the exponent on a fixed sample set") {
  P x = P::variable(2, 0), y = P::variable(2, 1);
  std::vector<cdouble> origin(2, cdouble(0.0, 0.0));
  Region region = disc_at_origin(2, 0.5);  // all sampled distances stay below one
  P f = x * y;
  double prev = -1.0;
  for (double alpha : {1.0, 1.5, 2.0, 2.5}) {
    LojReport rep = verify_inequality(f, origin, alpha, region, 512, 57);
    REQUIRE(rep.worst_ratio_c >= prev);
    prev = rep.worst_ratio_c;
  }
}

TEST_CASE("the worst ratio is the smallest shell minimum") {
  P x = P::variable(2, 0), y = P::variable(2, 1);
  std::vector<cdouble> origin(2, cdouble(0.0, 0.0));
  LojReport rep = verify_inequality(y.pow(2) - x.pow(3), origin, 2.0, disc_at_origin(2, 0.4),
                                    512, 3);
  double min_shell = std::numeric_limits<double>::infinity();
  for (const auto& s : rep.shell_profile)
    if (s.samples > 0) min_shell = std::min(min_shell, s.min_ratio);
  REQUIRE(rep.worst_ratio_c == min_shell);
}

TEST_CASE("slice fixtures hold with constant one and survive box shrinking") {
  for (const auto& fx : zcfix::slice_corpus()) {
    SliceCycleReport slice = weierstrass_slice_degree(fx.poly, fx.box, 4, 9);
    LojReport rep = verify_slice_inequality(fx.poly, fx.box, slice, 4096, 11);
    INFO(fx.name);
    REQUIRE(rep.holds);
    REQUIRE(rep.worst_ratio_c >= 1.0 - 1e-6);

    Region smaller = fx.box.scaled(0.5);
    SliceCycleReport sub = weierstrass_slice_degree(fx.poly, smaller, 4, 9);
    REQUIRE(sub.delta == slice.delta);
    LojReport rep2 = verify_slice_inequality(fx.poly, smaller, sub, 4096, 11);
    REQUIRE(rep2.holds);
  }
}

TEST_CASE("the slice inequality rejects non-monic fibre polynomials") {
  P x = P::variable(2, 0), t = P::variable(2, 1);
  P f = (c2(1) + x) * t.pow(2) - x;
  Region box = zcfix::slice_box(0.04, 0.5);
  SliceCycleReport slice;
  slice.delta = 2;
  REQUIRE_THROWS_AS(verify_slice_inequality(f, box, slice, 256, 1), error);
  try {
    verify_slice_inequality(f, box, slice, 256, 1);
  } catch (const error& e) {
    REQUIRE(e.code() == errc::non_monic);
  }
}

TEST_CASE("estimates ignore nonvanishing factors") {
  P x = P::variable(2, 0), y = P::variable(2, 1);
  std::vector<cdouble> origin(2, cdouble(0.0, 0.0));
  Region region = disc_at_origin(2, 0.2);
  P f = y.pow(2) - x.pow(3);
  P g = f * (c2(1) + x * c2(0.1));
  double ef = estimate_exponent(f, origin, region, 512, 19);
  double eg = estimate_exponent(g, origin, region, 512, 19);
  REQUIRE(std::abs(ef - 2.0) <= 0.1);
  REQUIRE(std::abs(eg - 2.0) <= 0.1);
}

TEST_CASE("degenerate inputs are rejected with specific codes") {
  P x = P::variable(2, 0), y = P::variable(2, 1);
  std::vector<cdouble> origin(2, cdouble(0.0, 0.0));
  REQUIRE_THROWS_AS(verify_inequality(P::zero(2), origin, 1.0, disc_at_origin(2, 0.5), 64, 0),
                    error);
  // center off the zero set
  REQUIRE_THROWS_AS(verify_inequality(x * y + c2(1), origin, 1.0, disc_at_origin(2, 0.5), 64, 0),
                    error);
  Region degenerate;
  degenerate.center.assign(2, cdouble(0.0, 0.0));
  degenerate.radii = {0.5, 0.0};
  REQUIRE_THROWS_AS(verify_inequality(x * y, origin, 2.0, degenerate, 64, 0), error);
}
