#pragma once

#include <span>
#include <vector>

namespace sphsamp {

/// A unit vector in R^{d+1}. The constructor normalizes its input.
class SpherePoint {
 public:
  SpherePoint() = default;
  explicit SpherePoint(std::vector<double> coords);
  SpherePoint(std::initializer_list<double> coords)
      : SpherePoint(std::vector<double>(coords)) {}

  /// Dimension of the sphere (number of coordinates minus one).
  int dim() const { return static_cast<int>(coords_.size()) - 1; }
  std::span<const double> coords() const { return coords_; }
  double operator[](std::size_t i) const { return coords_[i]; }

  /// North pole e_{d+1} of S^d.
  static SpherePoint north(int d);

 private:
  std::vector<double> coords_;
};

double dot(const SpherePoint& u, const SpherePoint& v);

}  // namespace sphsamp
