#include "sphsamp/point.hpp"

#include <cmath>
#include <limits>
#include <numeric>

#include "sphsamp/error.hpp"
#include "sphsamp/quadrature.hpp"

namespace sphsamp {

SpherePoint::SpherePoint(std::vector<double> coords) : coords_(std::move(coords)) {
  if (coords_.size() < 2) throw InputError("SpherePoint needs at least 2 coordinates");
  double n2 = 0.0;
  for (double x : coords_) {
    if (!std::isfinite(x)) throw InputError("SpherePoint coordinate is not finite");
    n2 += x * x;
  }
  if (n2 == 0.0) throw InputError("SpherePoint from the zero vector");
  // already unit length to rounding: leave the bits alone so files round-trip
  if (std::abs(n2 - 1.0) <= 4 * std::numeric_limits<double>::epsilon()) return;
  const double inv = 1.0 / std::sqrt(n2);
  for (double& x : coords_) x *= inv;
}

SpherePoint SpherePoint::north(int d) {
  std::vector<double> c(static_cast<std::size_t>(d) + 1, 0.0);
  c.back() = 1.0;
  return SpherePoint(std::move(c));
}

double dot(const SpherePoint& u, const SpherePoint& v) {
  if (u.dim() != v.dim()) throw InputError("dimension mismatch between sphere points");
  auto a = u.coords();
  auto b = v.coords();
  return std::inner_product(a.begin(), a.end(), b.begin(), 0.0);
}

double QuadratureRule::weight_sum() const {
  return std::accumulate(weights.begin(), weights.end(), 0.0);
}

}  // namespace sphsamp
