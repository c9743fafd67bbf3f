#include <doctest.h>

#include <cmath>
#include <numbers>
#include <random>

#include "sphsamp/linalg.hpp"

using namespace sphsamp;

namespace {

Matrix random_matrix(std::size_t r, std::size_t c, unsigned seed) {
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> g;
  Matrix a(r, c);
  for (std::size_t i = 0; i < r; ++i)
    for (std::size_t j = 0; j < c; ++j) a(i, j) = g(rng);
  return a;
}

}  // namespace

TEST_CASE("symmetric eigensolver") {
  const auto id = sym_eigen(SymMatrix(Matrix::identity(5)), false).eigenvalues;
  for (double v : id) CHECK(v == doctest::Approx(1.0));

  Matrix m(2, 2);
  m(0, 0) = 2;
  m(0, 1) = 1;
  m(1, 0) = 1;
  m(1, 1) = 2;
  const auto ev = sym_eigen(SymMatrix(m), false).eigenvalues;
  CHECK(ev[0] == doctest::Approx(1.0));
  CHECK(ev[1] == doctest::Approx(3.0));

  const Matrix r = random_matrix(50, 50, 5);
  Matrix s(50, 50);
  for (std::size_t i = 0; i < 50; ++i)
    for (std::size_t j = 0; j < 50; ++j) s(i, j) = r(i, j) + r(j, i);
  const EigenDecomposition e = sym_eigen(SymMatrix(s), true);
  const Matrix av = s * e.eigenvectors;
  double resid = 0.0, ortho = 0.0;
  for (std::size_t i = 0; i < 50; ++i)
    for (std::size_t k = 0; k < 50; ++k) resid = std::max(resid, std::abs(av(i, k) - e.eigenvalues[k] * e.eigenvectors(i, k)));
  const Matrix vtv = gram_cols(e.eigenvectors);
  for (std::size_t i = 0; i < 50; ++i)
    for (std::size_t k = 0; k < 50; ++k) ortho = std::max(ortho, std::abs(vtv(i, k) - (i == k)));
  CHECK(resid < 1e-10 * s.max_abs() * 50);
  CHECK(ortho < 1e-12);
  for (std::size_t k = 1; k < 50; ++k) CHECK(e.eigenvalues[k - 1] <= e.eigenvalues[k]);
}

TEST_CASE("minimum norm least squares") {
  const std::vector<double> v{3.0, -1.0, 2.5};
  const LstsqResult idr = min_norm_lstsq(Matrix::identity(3), v);
  for (int i = 0; i < 3; ++i) CHECK(idr.c[i] == doctest::Approx(v[i]));
  CHECK(idr.residual < 1e-15);

  const Matrix row(1, 2, 1.0);
  const std::vector<double> two{2.0};
  const LstsqResult r = min_norm_lstsq(row, two);
  CHECK(r.c[0] == doctest::Approx(1.0));
  CHECK(r.c[1] == doctest::Approx(1.0));
  CHECK(r.residual < 1e-15);

  const Matrix wide = random_matrix(10, 25, 7);
  std::vector<double> rhs(10);
  for (std::size_t i = 0; i < 10; ++i) rhs[i] = std::sin(1.0 + i);
  const LstsqResult w = min_norm_lstsq(wide, rhs);
  CHECK(w.residual <= 1e-10 * norm2(rhs));
  CHECK(w.rank == 10);

  // overdetermined consistent system recovers the generator
  const Matrix tall = random_matrix(30, 6, 8);
  const std::vector<double> x{1, -2, 3, -4, 5, -6};
  const LstsqResult t = min_norm_lstsq(tall, tall * std::span<const double>(x));
  for (int i = 0; i < 6; ++i) CHECK(t.c[i] == doctest::Approx(x[i]).epsilon(1e-10));
}

TEST_CASE("golub welsch") {
  const QuadratureRule g2 = golub_welsch(2, JacobiIndex(0.0, 0.0));
  CHECK(g2.nodes[0] == doctest::Approx(-1.0 / std::sqrt(3.0)));
  CHECK(g2.nodes[1] == doctest::Approx(1.0 / std::sqrt(3.0)));
  CHECK(g2.weights[0] == doctest::Approx(1.0));
  CHECK(g2.weights[1] == doctest::Approx(1.0));
  for (int n : {1, 5, 17, 64}) CHECK(golub_welsch(n, JacobiIndex(0, 0)).weight_sum() == doctest::Approx(2.0));

  const QuadratureRule half = golub_welsch(4, JacobiIndex(0.5, 0.5));
  double acc = 0.0;
  for (std::size_t i = 0; i < half.size(); ++i) acc += half.weights[i] * half.nodes[i] * half.nodes[i];
  CHECK(std::abs(acc - std::numbers::pi / 8) < 1e-12);

  // a + b = -1 exercises the cancelled first off-diagonal
  const QuadratureRule cheb = golub_welsch(6, JacobiIndex(-0.5, -0.5));
  CHECK(cheb.weight_sum() == doctest::Approx(std::numbers::pi));
  for (std::size_t i = 0; i < 6; ++i)
    CHECK(cheb.nodes[i] == doctest::Approx(-std::cos((2.0 * i + 1) * std::numbers::pi / 12)));

  const QuadratureRule gl = gauss_legendre(5, 0.0, 2.0);
  double x8 = 0.0;
  for (std::size_t i = 0; i < gl.size(); ++i) x8 += gl.weights[i] * std::pow(gl.nodes[i], 8);
  CHECK(x8 == doctest::Approx(512.0 / 9.0).epsilon(1e-13));
}

TEST_CASE("line fit") {
  const std::vector<double> x{1, 2, 3, 4}, y{3, 5, 7, 9};
  const LineFit f = fit_line(x, y);
  CHECK(f.slope == doctest::Approx(2.0));
  CHECK(f.intercept == doctest::Approx(1.0));
}
