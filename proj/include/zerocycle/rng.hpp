#pragma once

#include <cmath>
#include <cstdint>
#include <numbers>
#include <vector>

#include "zerocycle/scalar.hpp"

namespace zerocycle {

/// Deterministic 64-bit generator (splitmix64).  Every randomized routine in
/// the library draws from one of these, seeded explicitly, so identical
/// inputs give identical outputs across platforms and run orders.
class SplitMix64 {
 public:
  explicit SplitMix64(std::uint64_t seed) : state_(seed) {}

  std::uint64_t next() {
    std::uint64_t z = (state_ += 0x9e3779b97f4a7c15ull);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
    return z ^ (z >> 31);
  }

  /// Uniform in [0, 1).
  double uniform() { return double(next() >> 11) * 0x1.0p-53; }

  double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }

  /// Unit-modulus complex number with uniform angle.
  cdouble unit_complex() {
    double th = uniform(0.0, 2.0 * std::numbers::pi);
    return cdouble(std::cos(th), std::sin(th));
  }

  /// Standard complex Gaussian (Box-Muller).
  cdouble gaussian_complex() {
    double u1 = uniform();
    while (u1 <= 0.0) u1 = uniform();
    double r = std::sqrt(-2.0 * std::log(u1));
    double th = uniform(0.0, 2.0 * std::numbers::pi);
    return cdouble(r * std::cos(th), r * std::sin(th));
  }

 private:
  std::uint64_t state_;
};

/// Derives an independent sub-stream seed.  Sub-seeded draws do not perturb
/// the parent stream, which keeps sampling order-independent.
inline std::uint64_t derive_seed(std::uint64_t master, std::uint64_t stream) {
  SplitMix64 g(master ^ (0x9e3779b97f4a7c15ull * (stream + 1)));
  g.next();
  return g.next();
}

/// Unit vector in C^n, Gaussian direction.  n >= 1; the result has 2-norm 1.
inline std::vector<cdouble> random_unit_vector(SplitMix64& g, int n) {
  std::vector<cdouble> v(n);
  double norm2 = 0.0;
  do {
    norm2 = 0.0;
    for (int i = 0; i < n; ++i) {
      v[i] = g.gaussian_complex();
      norm2 += std::norm(v[i]);
    }
  } while (norm2 < 1e-12);
  double inv = 1.0 / std::sqrt(norm2);
  for (auto& c : v) c *= inv;
  return v;
}

}  // namespace zerocycle
