#include <catch2/catch_amalgamated.hpp>

#include <zerocycle/zerocycle.hpp>

#include "fixtures.hpp"

using namespace zerocycle;
using zcfix::P;
using zcfix::c2;

namespace {

cdouble random_point(SplitMix64& g, double scale) {
  return scale * g.unit_complex() * g.uniform(0.1, 1.0);
}

}  // namespace

TEST_CASE("univariate products and derivatives evaluate consistently") {
  UniPoly<cdouble> one_plus{{cdouble(1), cdouble(1)}};   // 1 + z
  UniPoly<cdouble> one_minus{{cdouble(1), cdouble(-1)}}; // 1 - z
  UniPoly<cdouble> prod = one_plus * one_minus;
  REQUIRE(prod.degree() == 2);
  SplitMix64 g(42);
  for (int i = 0; i < 20; ++i) {
    cdouble z = random_point(g, 2.0);
    REQUIRE(std::abs(prod(z) - (cdouble(1) - z * z)) < 1e-12);
  }
  UniPoly<cdouble> d = prod.derivative();
  for (int i = 0; i < 20; ++i) {
    cdouble z = random_point(g, 2.0);
    REQUIRE(std::abs(d(z) + 2.0 * z) < 1e-12);
  }
}

TEST_CASE("synthetic division strips a known root") {
  std::vector<cdouble> roots = {cdouble(1), cdouble(2), cdouble(-0.5, 0.25)};
  UniPoly<cdouble> p = UniPoly<cdouble>::from_roots(roots, cdouble(3));
  auto [q, rem] = p.divide_linear(roots[1]);
  REQUIRE(q.degree() == 2);
  REQUIRE(std::abs(rem) < 1e-12);
  SplitMix64 g(7);
  for (int i = 0; i < 10; ++i) {
    cdouble z = random_point(g, 2.0);
    REQUIRE(std::abs(q(z) * (z - roots[1]) - p(z)) < 1e-10 * (1.0 + std::abs(p(z))));
  }
}

TEST_CASE("from_roots reproduces evaluations against the factored form") {
  SplitMix64 g(99);
  for (int trial = 0; trial < 25; ++trial) {
    int n = 1 + int(g.next() % 6);
    std::vector<cdouble> roots;
    for (int i = 0; i < n; ++i) roots.push_back(random_point(g, 1.5));
    cdouble lead = g.unit_complex() * g.uniform(0.5, 2.0);
    UniPoly<cdouble> p = UniPoly<cdouble>::from_roots(roots, lead);
    cdouble z = random_point(g, 2.0);
    cdouble expect = lead;
    for (const cdouble& r : roots) expect *= (z - r);
    REQUIRE(std::abs(p(z) - expect) < 1e-10 * (1.0 + std::abs(expect)));
  }
}

TEST_CASE("restricting to a line matches direct evaluation") {
  for (const auto& fx : zcfix::corpus()) {
    const int m = fx.poly.nvars();
    SplitMix64 g(1234 + std::uint64_t(m));
    std::vector<cdouble> a(static_cast<std::size_t>(m));
    std::vector<cdouble> v(static_cast<std::size_t>(m));
    for (int i = 0; i < m; ++i) {
      a[std::size_t(i)] = random_point(g, 0.5);
      v[std::size_t(i)] = g.unit_complex();
    }
    UniPoly<cdouble> u = fx.poly.restrict_to_line(a, v);
    for (int i = 0; i < 5; ++i) {
      cdouble s = random_point(g, 1.0);
      std::vector<cdouble> z(a);
      for (int j = 0; j < m; ++j) z[std::size_t(j)] += s * v[std::size_t(j)];
      cdouble direct = fx.poly.evaluate(z);
      REQUIRE(std::abs(u(s) - direct) < 1e-10 * (1.0 + std::abs(direct)));
    }
  }
}

TEST_CASE("translation shifts evaluate exactly and invert") {
  P x = P::variable(2, 0), y = P::variable(2, 1);
  P f = (x + y).pow(2) * (y - x.pow(3)) + x;
  std::vector<cdouble> a = {cdouble(0.3, -0.1), cdouble(-0.2, 0.05)};
  std::vector<cdouble> neg_a = {-a[0], -a[1]};
  P shifted = f.shift(a);
  P back = shifted.shift(neg_a);
  SplitMix64 g(5);
  for (int i = 0; i < 20; ++i) {
    std::vector<cdouble> z = {random_point(g, 1.0), random_point(g, 1.0)};
    std::vector<cdouble> zpa = {z[0] + a[0], z[1] + a[1]};
    REQUIRE(std::abs(shifted.evaluate(z) - f.evaluate(zpa)) < 1e-12 * (1.0 + std::abs(f.evaluate(zpa))));
    REQUIRE(std::abs(back.evaluate(z) - f.evaluate(z)) < 1e-12 * (1.0 + std::abs(f.evaluate(z))));
  }
}

TEST_CASE("vanishing order at the origin matches closed forms") {
  for (const auto& fx : zcfix::corpus()) {
    auto ord = order_at_origin(fx.poly);
    INFO(fx.name);
    REQUIRE(ord.has_value());
    REQUIRE(int(*ord) == fx.ord);
  }
}

TEST_CASE("order is zero off the zero set and absent for the zero polynomial") {
  P x = P::variable(2, 0), y = P::variable(2, 1);
  P f = x * y + c2(1);
  auto ord = order_at_origin(f);
  REQUIRE(ord.has_value());
  REQUIRE(*ord == 0);
  REQUIRE(!order_at_origin(P::zero(2)).has_value());
}

namespace {

MultiPoly<CRat> random_exact_poly(SplitMix64& g, int nvars, int min_tdeg) {
  MultiPoly<CRat> f(nvars);
  int terms = 2 + int(g.next() % 4);
  for (int t = 0; t < terms; ++t) {
    std::vector<std::uint32_t> e(std::size_t(nvars), 0);
    int budget = min_tdeg + int(g.next() % 3);
    for (int b = 0; b < budget; ++b) e[g.next() % std::uint64_t(nvars)]++;
    long num = long(g.next() % 9) - 4;
    if (num == 0) num = 1;
    f.add_term(std::move(e), scalar_ops<CRat>::from_int(num));
  }
  if (f.is_zero()) f.add_term(std::vector<std::uint32_t>(std::size_t(nvars), 1),
                              scalar_ops<CRat>::from_int(1));
  return f;
}

}  // namespace

TEST_CASE("order adds under products in exact arithmetic") {
  SplitMix64 g(2024);
  for (int trial = 0; trial < 50; ++trial) {
    MultiPoly<CRat> f = random_exact_poly(g, 2, int(g.next() % 3));
    MultiPoly<CRat> h = random_exact_poly(g, 2, int(g.next() % 3));
    auto of = order_at_origin(f), oh = order_at_origin(h), ofh = order_at_origin(f * h);
    REQUIRE(of.has_value());
    REQUIRE(oh.has_value());
    REQUIRE(ofh.has_value());
    REQUIRE(*ofh == *of + *oh);
  }
}

TEST_CASE("order of a sum is at least the smaller order") {
  SplitMix64 g(777);
  for (int trial = 0; trial < 50; ++trial) {
    MultiPoly<CRat> f = random_exact_poly(g, 2, int(g.next() % 3));
    MultiPoly<CRat> h = random_exact_poly(g, 2, int(g.next() % 3));
    auto of = order_at_origin(f), oh = order_at_origin(h);
    auto osum = order_at_origin(f + h);
    if (!osum.has_value()) continue;  // exact cancellation to zero
    REQUIRE(*osum >= std::min(*of, *oh));
  }
}

TEST_CASE("order is invariant under unitary coordinate changes") {
  std::vector<cdouble> zero2(2, cdouble(0.0, 0.0));
  for (const auto& fx : zcfix::corpus()) {
    if (fx.poly.nvars() != 2) continue;
    for (std::uint64_t s = 1; s <= 3; ++s) {
      Mat<cdouble> u_mat = random_unitary(2, s);
      P g = fx.poly.compose_affine(u_mat, zero2);
      auto ord = order_at_origin(g);
      INFO(fx.name << " seed " << s);
      REQUIRE(ord.has_value());
      REQUIRE(int(*ord) == fx.ord);
    }
  }
}

TEST_CASE("coefficient extraction in one variable reassembles the polynomial") {
  P x = P::variable(2, 0), y = P::variable(2, 1);
  P f = x.pow(2) * y + y.pow(3) - x + c2(2) * x * y;
  auto coeffs = f.coeffs_in_var(1);
  SplitMix64 g(31);
  for (int i = 0; i < 10; ++i) {
    std::vector<cdouble> z = {random_point(g, 1.0), random_point(g, 1.0)};
    cdouble acc(0.0, 0.0);
    cdouble ypow(1.0, 0.0);
    std::vector<cdouble> zx = {z[0]};  // the split variable is removed
    for (const auto& c : coeffs) {
      acc += c.evaluate(zx) * ypow;
      ypow *= z[1];
    }
    REQUIRE(std::abs(acc - f.evaluate(z)) < 1e-12 * (1.0 + std::abs(f.evaluate(z))));
  }
}

TEST_CASE("specializing one variable matches evaluation") {
  P x = P::variable(2, 0), y = P::variable(2, 1);
  P f = x.pow(3) - c2(2) * x * y + y.pow(2);
  cdouble v(0.4, -0.3);
  P g0 = f.specialize_var(0, v);
  REQUIRE(g0.nvars() == 1);
  SplitMix64 g(8);
  for (int i = 0; i < 10; ++i) {
    cdouble w = random_point(g, 1.0);
    std::vector<cdouble> zw = {w};
    std::vector<cdouble> zvw = {v, w};
    REQUIRE(std::abs(g0.evaluate(zw) - f.evaluate(zvw)) < 1e-12);
  }
}

TEST_CASE("the polydisc bound dominates sampled values") {
  P x = P::variable(2, 0), y = P::variable(2, 1);
  P f = (x + y).pow(2) * (y - x.pow(3)) - c2(3) * x;
  std::vector<cdouble> center = {cdouble(0.1, 0.0), cdouble(-0.2, 0.1)};
  std::vector<double> radii = {0.7, 0.4};
  double bound = f.sup_bound(center, radii);
  SplitMix64 g(64);
  for (int i = 0; i < 200; ++i) {
    std::vector<cdouble> z = {center[0] + radii[0] * g.unit_complex() * g.uniform(),
                              center[1] + radii[1] * g.unit_complex() * g.uniform()};
    REQUIRE(std::abs(f.evaluate(z)) <= bound * (1.0 + 1e-12));
  }
}

TEST_CASE("exact rationals round trip strings and reject junk") {
  CRat a = CRat::from_strings("2/3", "-1/7");
  CRat b = CRat::from_strings("-4/9", "0");
  CRat prod = a * b;
  CRat quot = prod / b;
  REQUIRE(quot == a);
  REQUIRE_THROWS_AS(CRat::from_strings("2/3/4", "0"), error);
  REQUIRE_THROWS_AS(CRat::from_strings("x", "0"), error);
  REQUIRE_THROWS_AS(a / CRat{}, error);
}

TEST_CASE("graded ordering puts lower total degree first") {
  P x = P::variable(2, 0), y = P::variable(2, 1);
  P f = y.pow(5) + x * y + x.pow(4);
  REQUIRE(f.terms().begin()->first.tdeg == 2);
  auto ord = order_at_origin(f);
  REQUIRE(ord.has_value());
  REQUIRE(*ord == 2);
}
