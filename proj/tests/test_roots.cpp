#include <catch2/catch_amalgamated.hpp>

#include <zerocycle/zerocycle.hpp>

#include <algorithm>
#include <complex>
#include <vector>

using namespace zerocycle;

namespace {

// Roots with pairwise separation, so reconstruction comparisons are stable.
std::vector<cdouble> separated_roots(SplitMix64& g, int n, double min_sep) {
  std::vector<cdouble> roots;
  while (int(roots.size()) < n) {
    cdouble cand = 2.0 * g.uniform(0.1, 1.0) * g.unit_complex();
    bool ok = true;
    for (const cdouble& r : roots) ok = ok && std::abs(cand - r) >= min_sep;
    if (ok) roots.push_back(cand);
  }
  return roots;
}

void sort_points(std::vector<cdouble>& v) {
  std::sort(v.begin(), v.end(), [](cdouble a, cdouble b) {
    if (a.real() != b.real()) return a.real() < b.real();
    return a.imag() < b.imag();
  });
}

double match_error(std::vector<cdouble> found, std::vector<cdouble> expected) {
  sort_points(found);
  sort_points(expected);
  REQUIRE(found.size() == expected.size());
  double worst = 0.0;
  for (std::size_t i = 0; i < found.size(); ++i) {
    double scale = std::max(1.0, std::abs(expected[i]));
    worst = std::max(worst, std::abs(found[i] - expected[i]) / scale);
  }
  return worst;
}

}  // namespace

TEST_CASE("small closed-form root sets are reproduced") {
  std::vector<cdouble> expected = {cdouble(1), cdouble(2), cdouble(3)};
  UniPoly<cdouble> p = UniPoly<cdouble>::from_roots(expected, cdouble(2));
  REQUIRE(match_error(all_roots(p), expected) < 1e-12);

  UniPoly<cdouble> circle({cdouble(-1), cdouble(0), cdouble(0), cdouble(0), cdouble(0), cdouble(0), cdouble(1)});
  std::vector<cdouble> sixth;
  for (int k = 0; k < 6; ++k) {
    double th = 2.0 * std::numbers::pi * k / 6.0;
    sixth.emplace_back(std::cos(th), std::sin(th));
  }
  REQUIRE(match_error(all_roots(circle), sixth) < 1e-10);
}

TEST_CASE("a quadruple root collapses to one cluster") {
  std::vector<cdouble> rep(4, cdouble(0.5));
  UniPoly<cdouble> p = UniPoly<cdouble>::from_roots(rep, cdouble(1));
  std::vector<cdouble> roots = all_roots(p);
  REQUIRE(roots.size() == 4);
  for (const cdouble& r : roots) REQUIRE(std::abs(r - cdouble(0.5)) < 1e-10);
  auto clusters = cluster_roots(roots, 1e-6, &p);
  REQUIRE(clusters.size() == 1);
  REQUIRE(clusters[0].multiplicity == 4);
}

TEST_CASE("random polynomials reconstruct their roots") {
  SplitMix64 g(314159);
  for (int trial = 0; trial < 60; ++trial) {
    int n = 1 + int(g.next() % 8);
    std::vector<cdouble> expected = separated_roots(g, n, 0.15);
    cdouble lead = g.unit_complex() * g.uniform(0.5, 2.0);
    UniPoly<cdouble> p = UniPoly<cdouble>::from_roots(expected, lead);
    INFO("trial " << trial << " degree " << n);
    REQUIRE(match_error(all_roots(p), expected) < 1e-8);
  }
}

TEST_CASE("repeated factors keep their multiplicities") {
  SplitMix64 g(2718);
  for (int trial = 0; trial < 20; ++trial) {
    std::vector<cdouble> distinct = separated_roots(g, 3, 0.5);
    std::vector<int> mult = {2, 3, 1};
    std::vector<cdouble> expected;
    for (std::size_t i = 0; i < distinct.size(); ++i)
      expected.insert(expected.end(), std::size_t(mult[i]), distinct[i]);
    UniPoly<cdouble> p = UniPoly<cdouble>::from_roots(expected, cdouble(1));
    auto clusters = cluster_roots(all_roots(p), 1e-5, &p);
    REQUIRE(clusters.size() == 3);
    int total = 0;
    for (const auto& c : clusters) {
      total += c.multiplicity;
      bool matched = false;
      for (std::size_t i = 0; i < distinct.size(); ++i)
        if (std::abs(c.center - distinct[i]) < 1e-5 * std::max(1.0, std::abs(distinct[i])))
          matched = (c.multiplicity == mult[i]);
      INFO("trial " << trial);
      REQUIRE(matched);
    }
    REQUIRE(total == 6);
  }
}

TEST_CASE("disc counts match known root locations") {
  SplitMix64 g(11);
  for (int trial = 0; trial < 40; ++trial) {
    int n = 2 + int(g.next() % 6);
    std::vector<cdouble> roots = separated_roots(g, n, 0.2);
    UniPoly<cdouble> p = UniPoly<cdouble>::from_roots(roots, g.unit_complex());
    cdouble center = 0.5 * g.unit_complex();
    // pick a radius clearly separated from every root modulus
    double radius = 0.9;
    for (const cdouble& r : roots)
      while (std::abs(std::abs(r - center) - radius) < 0.05) radius += 0.07;
    int expected = 0;
    for (const cdouble& r : roots)
      if (std::abs(r - center) < radius) expected++;
    INFO("trial " << trial);
    REQUIRE(count_roots_in_disc(p, center, radius) == expected);
  }
}

TEST_CASE("a root sitting on the disc boundary is rejected") {
  UniPoly<cdouble> p({cdouble(-1), cdouble(1)});  // z - 1
  REQUIRE_THROWS_AS(count_roots_in_disc(p, cdouble(0), 1.0), error);
  try {
    count_roots_in_disc(p, cdouble(0), 1.0);
  } catch (const error& e) {
    REQUIRE(e.code() == errc::root_near_boundary);
  }
}

TEST_CASE("winding counts agree with cluster counts on random polynomials") {
  SplitMix64 g(909090);
  for (int trial = 0; trial < 60; ++trial) {
    int n = 1 + int(g.next() % 7);
    std::vector<cdouble> roots = separated_roots(g, n, 0.12);
    UniPoly<cdouble> p = UniPoly<cdouble>::from_roots(roots, g.unit_complex() * g.uniform(0.5, 2.0));
    double radius = 2.6;  // all roots live in |z| <= 2
    int counted = count_roots_in_disc(p, cdouble(0), radius);
    REQUIRE(counted == n);
  }
}

TEST_CASE("derivative-based multiplicity agrees with exact division") {
  std::vector<cdouble> rep(4, cdouble(0.5));
  rep.push_back(cdouble(-1));
  UniPoly<cdouble> p = UniPoly<cdouble>::from_roots(rep, cdouble(1));
  REQUIRE(multiplicity_at(p, cdouble(0.5)) == 4);
  REQUIRE(multiplicity_at(p, cdouble(-1)) == 1);

  // exact: (z - 1/3)^3 (z + 2)
  CRat third = CRat::from_strings("1/3", "0");
  CRat two = CRat::from_strings("2", "0");
  CRat one = CRat::from_strings("1", "0");
  std::vector<CRat> lin = {CRat{} - third, one};
  UniPoly<CRat> factor(lin);
  UniPoly<CRat> q = factor * factor * factor * UniPoly<CRat>(std::vector<CRat>{two, one});
  REQUIRE(multiplicity_at(q, third) == 3);
}

TEST_CASE("root residuals stay within the solver tolerance") {
  // coefficients spanning several magnitudes
  std::vector<cdouble> c = {cdouble(3e-4), cdouble(-2.0), cdouble(0.5, 1.5), cdouble(40.0),
                            cdouble(0, -7.0), cdouble(1e-3), cdouble(2.0), cdouble(-0.25),
                            cdouble(0.125), cdouble(0, 1.0), cdouble(5.0)};
  UniPoly<cdouble> p(c);
  std::vector<cdouble> roots = all_roots(p);
  REQUIRE(int(roots.size()) == p.degree());
  for (const cdouble& r : roots) {
    double scale = p.eval_scale(std::abs(r));
    REQUIRE(std::abs(p(r)) <= 1e4 * std::numeric_limits<double>::epsilon() * scale);
  }
}
