#include <doctest.h>

#include <cmath>
#include <numbers>
#include <sstream>

#include "sphsamp/families.hpp"
#include "sphsamp/harmonic.hpp"
#include "sphsamp/sphere.hpp"

using namespace sphsamp;
using std::numbers::pi;

TEST_CASE("geodesic distance") {
  const SpherePoint n = SpherePoint::north(2);
  CHECK(geodesic_distance(n, n) == 0.0);
  CHECK(geodesic_distance(n, SpherePoint{0.0, 0.0, -1.0}) == doctest::Approx(pi));
  CHECK(geodesic_distance(SpherePoint{1.0, 0.0, 0.0}, SpherePoint{0.0, 1.0, 0.0}) == doctest::Approx(pi / 2));
}

TEST_CASE("areas") {
  CHECK(surface_area(1) == doctest::Approx(2 * pi));
  CHECK(surface_area(2) == doctest::Approx(4 * pi));
  CHECK(surface_area(3) == doctest::Approx(2 * pi * pi));
  for (int d : {1, 2, 3, 5}) CHECK(cap_area(d, pi) == doctest::Approx(surface_area(d)).epsilon(1e-12));
  CHECK(cap_area(2, pi / 3) == doctest::Approx(pi).epsilon(1e-13));
  CHECK(cap_area(2, 1e-3) / (2 * pi * 1e-6 / 2) == doctest::Approx(1.0).epsilon(1e-5));
  CHECK(cap_area(3, 0.7) == doctest::Approx(4 * pi * (0.35 - std::sin(1.4) / 4)).epsilon(1e-12));
}

TEST_CASE("zonal rules") {
  const QuadratureRule r3 = zonal_rule(3, 4);
  double acc = 0.0;
  for (std::size_t i = 0; i < r3.size(); ++i) acc += r3.weights[i];
  CHECK(std::abs(acc - pi / 2) < 1e-12);
  for (int d : {2, 3, 4})
    CHECK(surface_area(d - 1) * zonal_rule(d, 7).weight_sum() == doctest::Approx(surface_area(d)).epsilon(1e-13));
}

TEST_CASE("surface rule on S^2") {
  const int lx = 12;
  const QuadratureRule rule = sphere_rule_s2(lx);
  CHECK(std::abs(rule.weight_sum() - 4 * pi) < 1e-12);
  const HarmonicBasis basis(lx);
  std::vector<double> sums(basis.size(), 0.0);
  for (std::size_t i = 0; i < rule.size(); ++i) {
    const auto y = basis_eval_s2(lx, rule.points[i]);
    for (std::size_t k = 0; k < y.size(); ++k) sums[k] += rule.weights[i] * y[k];
  }
  for (std::size_t k = 1; k < sums.size(); ++k) CHECK(std::abs(sums[k]) < 1e-10);
}

TEST_CASE("cap rule") {
  const Cap cap(SpherePoint{0.3, -0.5, 0.8}, 0.9);
  const QuadratureRule r = cap_rule_s2(cap, 10);
  CHECK(r.weight_sum() == doctest::Approx(cap_area(2, 0.9)).epsilon(1e-10));
  for (const auto& p : r.points) CHECK(geodesic_distance(p, cap.center) <= 0.9 + 1e-12);

  const Cap hemi(SpherePoint::north(2), pi / 2);
  const QuadratureRule h = cap_rule_s2(hemi, 4);
  double acc = 0.0;
  for (std::size_t i = 0; i < h.size(); ++i) acc += h.weights[i] * h.points[i][2];
  CHECK(acc == doctest::Approx(pi).epsilon(1e-12));
}

TEST_CASE("reflections and rotations") {
  const SpherePoint target{1.0, 2.0, -2.0};
  const Matrix q = reflection_to(target);
  const SpherePoint img = apply_map(q, SpherePoint::north(2));
  for (int i = 0; i < 3; ++i) CHECK(img[i] == doctest::Approx(target[i]));
  const Matrix r = random_rotation(3, 42);
  const Matrix rtr = gram_cols(r);
  for (std::size_t i = 0; i < 4; ++i)
    for (std::size_t j = 0; j < 4; ++j) CHECK(rtr(i, j) == doctest::Approx(i == j ? 1.0 : 0.0));
  // target = N needs no reflection
  const Matrix id = reflection_to(SpherePoint::north(2));
  for (std::size_t i = 0; i < 3; ++i) CHECK(id(i, i) == doctest::Approx(1.0));
}

TEST_CASE("point files round trip exactly") {
  const auto pts = gen_random(3, 25, 9);
  std::stringstream ss;
  write_points(ss, pts, 3, 7);
  const PointFile pf = read_points(ss);
  CHECK(pf.d == 3);
  CHECK(pf.L == 7);
  REQUIRE(pf.points.size() == pts.size());
  for (std::size_t i = 0; i < pts.size(); ++i)
    for (int k = 0; k < 4; ++k) CHECK(pf.points[i][k] == pts[i][k]);
}

TEST_CASE("zonal integrals") {
  // int_{S^2} t^2 = 4 pi / 3
  const double v = zonal_integral_pieces([](double t) { return t * t; }, 2, {}, 20);
  CHECK(v == doctest::Approx(4 * pi / 3).epsilon(1e-13));
  const auto c = zonal_integral_converged([](double t) { return std::abs(t); }, 2, {0.0}, 8, 1e-12);
  CHECK(c.value == doctest::Approx(2 * pi).epsilon(1e-12));
}
