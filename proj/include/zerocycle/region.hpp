#pragma once

#include <algorithm>
#include <cmath>
#include <span>
#include <vector>

#include "zerocycle/errors.hpp"
#include "zerocycle/scalar.hpp"

namespace zerocycle {

/// Closed polydisc: product of discs |z_i - center_i| <= radii_i.
struct Region {
  std::vector<cdouble> center;
  std::vector<double> radii;

  Region() = default;
  Region(std::vector<cdouble> c, std::vector<double> r)
      : center(std::move(c)), radii(std::move(r)) {
    require(center.size() == radii.size(), errc::dimension_mismatch,
            "region center/radii arity mismatch");
    require(!center.empty(), errc::bad_input, "region needs at least one variable");
    for (double rad : radii)
      require(rad > 0.0 && std::isfinite(rad), errc::bad_input, "region radii must be positive");
  }

  static Region ball(std::vector<cdouble> c, double r) {
    std::vector<double> rr(c.size(), r);
    return Region(std::move(c), std::move(rr));
  }

  int dim() const { return int(center.size()); }

  double max_radius() const { return *std::max_element(radii.begin(), radii.end()); }
  double min_radius() const { return *std::min_element(radii.begin(), radii.end()); }

  bool contains(std::span<const cdouble> z, double slack_rel = 0.0) const {
    if (int(z.size()) != dim()) return false;
    for (int i = 0; i < dim(); ++i)
      if (std::abs(z[i] - center[i]) > radii[i] * (1.0 + slack_rel)) return false;
    return true;
  }

  /// Scaled copy: same center, radii multiplied by s.
  Region scaled(double s) const {
    Region r = *this;
    for (double& rad : r.radii) rad *= s;
    return r;
  }
};

}  // namespace zerocycle
