#pragma once

#include <vector>

#include "sphsamp/point.hpp"

namespace sphsamp {

/// A positive-weight quadrature rule. Zonal (1-D) rules fill `nodes`,
/// surface rules fill `points`; exactly one of the two is non-empty.
struct QuadratureRule {
  std::vector<double> nodes;
  std::vector<SpherePoint> points;
  std::vector<double> weights;
  int exactness_degree = 0;

  bool is_surface() const { return !points.empty(); }
  std::size_t size() const { return weights.size(); }
  double weight_sum() const;
};

}  // namespace sphsamp
