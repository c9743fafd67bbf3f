#include <doctest.h>

#include <cmath>
#include <numbers>
#include <random>
#include <sstream>

#include "sphsamp/families.hpp"
#include "sphsamp/harmonic.hpp"
#include "sphsamp/mz.hpp"
#include "sphsamp/sphere.hpp"

using namespace sphsamp;
using std::numbers::pi;

TEST_CASE("dimensions") {
  CHECK(dim_h(2, 0) == 1);
  CHECK(dim_h(2, 3) == 7);
  CHECK(dim_h(3, 2) == 9);
  CHECK(dim_pi(5, 0) == 1);
  CHECK(dim_pi(2, 10) == 121);
  CHECK(dim_pi(3, 2) == 14);
  for (int d : {1, 2, 3, 4, 6}) {
    std::int64_t acc = 0;
    for (int ell = 0; ell <= 12; ++ell) acc += dim_h(d, ell);
    CHECK(dim_pi(d, 12) == acc);
  }
}

TEST_CASE("kernel constants") {
  for (int L : {0, 1, 7, 40}) CHECK(kernel_constant(2, L) == doctest::Approx(L + 1.0));
  CHECK(kernel_constant(3, 1) == doctest::Approx(2.0));
  CHECK(kernel_constant_scaling(2, {32, 64, 128, 256}).slope == doctest::Approx(1.0).epsilon(0.1));
  CHECK(kernel_constant_scaling(3, {32, 64, 128, 256}).slope == doctest::Approx(1.5).epsilon(0.1));
}

TEST_CASE("kernel values") {
  const SpherePoint u{0.2, -0.4, 0.7};
  CHECK(eval_kernel(2, 4, u, u) == doctest::Approx(25.0 / (4 * pi)));
  const SpherePoint v{-0.2, 0.4, -0.7};
  CHECK(eval_kernel(2, 1, u, v) == doctest::Approx(-2.0 / (4 * pi)));
  // addition theorem with Legendre polynomials from the standard library
  const SpherePoint w{0.9, 0.1, -0.3};
  double ref = 0.0;
  for (int ell = 0; ell <= 9; ++ell) ref += (2 * ell + 1) / (4 * pi) * std::legendre(ell, dot(u, w));
  CHECK(eval_kernel(2, 9, u, w) == doctest::Approx(ref).epsilon(1e-12));
}

TEST_CASE("basis against std::sph_legendre") {
  const int L = 12;
  const SpherePoint u{0.3, 0.5, -0.6};
  const double theta = std::acos(u[2]);
  const double phi = std::atan2(u[1], u[0]);
  const auto y = basis_eval_s2(L, u);
  CHECK(y[0] == doctest::Approx(1.0 / std::sqrt(4 * pi)));
  for (int ell = 0; ell <= L; ++ell) {
    CHECK(y[HarmonicBasis::index_of(ell, 0, false)] ==
          doctest::Approx(std::sph_legendre(ell, 0, theta)).epsilon(1e-12));
    for (int m = 1; m <= ell; ++m) {
      // std::sph_legendre includes the Condon-Shortley phase
      const double q = (m % 2 ? -1.0 : 1.0) * std::sph_legendre(ell, m, theta) * std::sqrt(2.0);
      CHECK(y[HarmonicBasis::index_of(ell, m, false)] == doctest::Approx(q * std::cos(m * phi)).epsilon(1e-11));
      CHECK(y[HarmonicBasis::index_of(ell, m, true)] == doctest::Approx(q * std::sin(m * phi)).epsilon(1e-11));
    }
  }
}

TEST_CASE("addition theorem and orthonormality") {
  const auto pts = gen_random(2, 10, 4);
  for (int L : {1, 10, 25, 40})
    for (const auto& u : pts) {
      double s = 0.0;
      for (double v : basis_eval_s2(L, u)) s += v * v;
      CHECK(s == doctest::Approx(eval_kernel(2, L, u, u)).epsilon(1e-9));
    }
  const int L = 10;
  const QuadratureRule rule = sphere_rule_s2(2 * L);
  const HarmonicBasis basis(L);
  const Matrix e = evaluation_matrix(basis, rule.points);
  Matrix we = e;
  for (std::size_t i = 0; i < e.rows(); ++i)
    for (std::size_t k = 0; k < e.cols(); ++k) we(i, k) *= rule.weights[i];
  const Matrix g = e.transpose() * we;
  double off = 0.0;
  for (std::size_t i = 0; i < g.rows(); ++i)
    for (std::size_t k = 0; k < g.cols(); ++k) off = std::max(off, std::abs(g(i, k) - (i == k)));
  CHECK(off < 1e-12);
}

TEST_CASE("evaluation matrix") {
  const HarmonicBasis b0(0);
  const Matrix e0 = evaluation_matrix(b0, {SpherePoint::north(2)});
  CHECK(e0(0, 0) == doctest::Approx(1.0 / std::sqrt(4 * pi)));

  const int L = 6;
  const HarmonicBasis basis(L);
  const auto pts = gen_random(2, 15, 5);
  const Matrix e = evaluation_matrix(basis, pts);
  const CoefficientVector q = random_polynomial(L, 77);
  const auto vals = e * std::span<const double>(q.coeffs);
  for (std::size_t j = 0; j < pts.size(); ++j) {
    double row = 0.0;
    for (double v : e.row(j)) row += v * v;
    CHECK(row == doctest::Approx(49.0 / (4 * pi)));
    CHECK(vals[j] == doctest::Approx(synthesize(q, pts[j])).epsilon(1e-12));
  }
}

TEST_CASE("fourier projection") {
  const int L = 5;
  const QuadratureRule rule = sphere_rule_s2(2 * L + 4);
  const CoefficientVector one = fourier_project([](const SpherePoint&) { return 1.0; }, L, rule);
  CHECK(one.coeffs[0] == doctest::Approx(std::sqrt(4 * pi)));
  for (std::size_t k = 1; k < one.coeffs.size(); ++k) CHECK(std::abs(one.coeffs[k]) < 1e-12);

  const std::size_t k7 = HarmonicBasis::index_of(3, 2, true);
  const CoefficientVector e7 = fourier_project([&](const SpherePoint& u) { return basis_eval_s2(L, u)[k7]; }, L, rule);
  for (std::size_t k = 0; k < e7.coeffs.size(); ++k) CHECK(e7.coeffs[k] == doctest::Approx(k == k7 ? 1.0 : 0.0));

  // degree 8 input projected to degree 5 loses exactly the high coefficients
  const CoefficientVector hi = random_polynomial(8, 3);
  const QuadratureRule big = sphere_rule_s2(20);
  const CoefficientVector lo = fourier_project([&](const SpherePoint& u) { return synthesize(hi, u); }, L, big);
  double tail = 0.0;
  for (std::size_t k = lo.coeffs.size(); k < hi.coeffs.size(); ++k) tail += hi.coeffs[k] * hi.coeffs[k];
  double err = 0.0;
  for (std::size_t i = 0; i < big.size(); ++i) {
    const double r = synthesize(hi, big.points[i]) - synthesize(lo, big.points[i]);
    err += big.weights[i] * r * r;
  }
  CHECK(err == doctest::Approx(tail).epsilon(1e-10));
}

TEST_CASE("dilation") {
  const CoefficientVector q = random_polynomial(32, 9);
  const CoefficientVector same = dilate_coeffs(q, 1.0);
  for (std::size_t k = 0; k < q.coeffs.size(); ++k) CHECK(same.coeffs[k] == q.coeffs[k]);
  const double rho = 2.0, L = 32;
  for (double r : {1 - rho / L, 1.0, 1 + rho / L}) {
    const double ratio = dilated_norm_sq(q, r) / q.norm_sq();
    CHECK(ratio >= std::exp(-2 * rho));
    CHECK(ratio <= std::exp(2 * rho));
  }
  CoefficientVector top{32, std::vector<double>(q.coeffs.size(), 0.0)};
  top.coeffs.back() = 1.0;
  CHECK(std::sqrt(dilated_norm_sq(top, 1 + rho / L)) <= std::exp(rho));
}

TEST_CASE("coefficient files") {
  const CoefficientVector q = random_polynomial(4, 1);
  std::stringstream ss;
  write_coefficients(ss, q);
  const CoefficientVector r = read_coefficients(ss);
  CHECK(r.L == 4);
  CHECK(r.coeffs == q.coeffs);
}

TEST_CASE("kernel L2 norm matches the reproducing identity") {
  // int P_L^2 = pi_L sigma / C^2 because int K_L(N, .)^2 = K_L(N, N)
  for (int d : {2, 3}) {
    for (int L : {4, 20}) {
      const double c = kernel_constant(d, L);
      const double expect = static_cast<double>(dim_pi(d, L)) * surface_area(d) / (c * c);
      CHECK(kernel_jacobi_lp(d, L, 2.0) == doctest::Approx(expect).epsilon(1e-9));
    }
  }
}
