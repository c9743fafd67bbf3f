#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <numbers>

#include "sphsamp/concentration.hpp"
#include "sphsamp/families.hpp"
#include "sphsamp/harmonic.hpp"
#include "sphsamp/sphere.hpp"

using namespace sphsamp;
using std::numbers::pi;

TEST_CASE("cap gram") {
  const CapGram whole = cap_gram_s2(6, pi);
  const SymMatrix g = whole.dense();
  for (std::size_t i = 0; i < g.order(); ++i)
    for (std::size_t j = 0; j < g.order(); ++j) CHECK(g(i, j) == doctest::Approx(i == j ? 1.0 : 0.0));

  const CapGram zero = cap_gram_s2(0, 0.8);
  CHECK(zero.trace() == doctest::Approx((1 - std::cos(0.8)) / 2));

  for (int L : {1, 13, 40})
    for (double th : {0.2, 0.5, 1.0})
      CHECK(cap_gram_s2(L, th).trace() == doctest::Approx((L + 1.0) * (L + 1) * (1 - std::cos(th)) / 2).epsilon(1e-9));

  // dense form agrees with the block form
  const CapGram cg = cap_gram_s2(5, 0.7);
  const SymMatrix d = cg.dense();
  double tr = 0.0, fr = 0.0;
  for (std::size_t i = 0; i < d.order(); ++i) {
    tr += d(i, i);
    for (std::size_t j = 0; j < d.order(); ++j) fr += d(i, j) * d(i, j);
  }
  CHECK(tr == doctest::Approx(cg.trace()));
  CHECK(fr == doctest::Approx(cg.frobenius_sq()));
}

TEST_CASE("cap gram matches surface quadrature") {
  const int L = 7;
  const double th = 0.9;
  const Cap cap(SpherePoint::north(2), th);
  const QuadratureRule rule = cap_rule_s2(cap, 2 * L + 2);
  const HarmonicBasis basis(L);
  const Matrix e = evaluation_matrix(basis, rule.points);
  const SymMatrix g = cap_gram_s2(L, th).dense();
  for (std::size_t a = 0; a < basis.size(); a += 5)
    for (std::size_t b = 0; b < basis.size(); b += 3) {
      double acc = 0.0;
      for (std::size_t i = 0; i < rule.size(); ++i) acc += rule.weights[i] * e(i, a) * e(i, b);
      CHECK(g(a, b) == doctest::Approx(acc).epsilon(1e-10).scale(1.0));
    }
}

TEST_CASE("spectrum") {
  const SpectrumReport full = spectrum(5, pi, RadiusMode::kTheta);
  for (double v : full.eigenvalues) CHECK(v == doctest::Approx(1.0));
  for (double th : {0.2, 0.5, 1.0}) {
    const SpectrumReport sp = spectrum(40, th, RadiusMode::kTheta);
    CHECK(sp.eigenvalues.front() <= 1.0);
    CHECK(sp.eigenvalues.back() >= 0.0);
    CHECK(std::is_sorted(sp.eigenvalues.rbegin(), sp.eigenvalues.rend()));
  }
  // complementary caps
  const SpectrumReport a = spectrum(12, 1.1, RadiusMode::kTheta);
  const SpectrumReport b = spectrum(12, pi - 1.1, RadiusMode::kTheta);
  REQUIRE(a.eigenvalues.size() == b.eigenvalues.size());
  const std::size_t n = a.eigenvalues.size();
  for (std::size_t i = 0; i < n; ++i) CHECK(std::abs(a.eigenvalues[i] + b.eigenvalues[n - 1 - i] - 1.0) < 1e-8);

  const SpectrumReport byalpha = spectrum(24, 6, RadiusMode::kAlpha);
  CHECK(byalpha.eigenvalues.size() == 625);
  CHECK(byalpha.theta == doctest::Approx(6.0 / 25));
}

TEST_CASE("closed form trace") {
  CHECK(trace_closed_form(2, 9, 10 * pi / 3) == doctest::Approx(25.0));
  CHECK(trace_closed_form(3, 4, 5 * pi) == doctest::Approx(static_cast<double>(dim_pi(3, 4))));
  for (int L : {3, 17, 40}) {
    const SpectrumReport sp = spectrum(L, 4.0, RadiusMode::kAlpha);
    CHECK(trace_closed_form(2, L, 4.0) == doctest::Approx(sp.trace).epsilon(1e-8));
  }
}

TEST_CASE("trace of the square") {
  CHECK(trace_square(2, 10, 11 * pi).value == doctest::Approx(121.0));
  // the nested rule at d >= 3 over the whole sphere integrates a projector
  for (int d : {3, 4}) {
    const TraceSquare t = trace_square(d, 6, 7 * pi);
    CHECK(t.method == TraceSquareMethod::kNestedQuadrature);
    CHECK(t.value == doctest::Approx(static_cast<double>(dim_pi(d, 6))).epsilon(1e-8));
  }
  for (int d : {2, 3})
    for (double alpha : {2.0, 6.0})
      CHECK(trace_square(d, 12, alpha).value <= trace_closed_form(d, 12, alpha) * (1 + 1e-12));
  const double s = trace_square(2, 40, 8, TraceSquareMethod::kSpectral).value;
  const double q = trace_square(2, 40, 8, TraceSquareMethod::kNestedQuadrature).value;
  CHECK(std::abs(s - q) <= 1e-5 * s);
}

TEST_CASE("plunge counts") {
  const SpectrumReport full = spectrum(7, pi, RadiusMode::kTheta);
  CHECK(plunge_count(full, 0.5).count == 64);
  const SpectrumReport sp = spectrum(30, 8, RadiusMode::kAlpha);
  long prev = 1 << 30;
  for (double g = 0.05; g < 1.0; g += 0.05) {
    const PlungeCount pc = plunge_count(sp, g);
    CHECK(pc.count <= prev);
    CHECK(pc.lower_bound <= pc.count + 1e-9);
    CHECK(pc.count <= pc.upper_bound + 1e-9);
    prev = pc.count;
  }
}

TEST_CASE("trace deficit") {
  const TraceDeficitFit fit = trace_deficit_slope(2, 60, {4, 6, 8, 12, 16});
  CHECK(fit.slope >= 0.75);
  CHECK(fit.slope <= 1.35);
  double prev_ratio = 1.0;
  for (const auto& r : fit.rows) {
    CHECK(r.deficit > 0.0);
    CHECK_FALSE(r.excluded);
    CHECK(r.deficit / r.trace < prev_ratio);
    prev_ratio = r.deficit / r.trace;
  }
}

TEST_CASE("landau comparison") {
  const LandauComparison empty = landau_compare({}, 10, 4.0, 0.5, 0.5, 0.5);
  CHECK(empty.n_plus == 0);
  CHECK(empty.n_minus == 0);
  CHECK(empty.lambda_1 > 0.0);
  CHECK_FALSE(empty.lambda_lower.has_value());

  const LandauComparison dense = landau_compare(gen_fibonacci(24, 2.0), 24, 6.0, 0.5, 0.5, 0.5);
  CHECK(dense.separation_ok);
  REQUIRE(dense.upper_holds.has_value());
  CHECK(*dense.upper_holds);

  std::vector<SpherePoint> cluster;
  for (int i = 0; i < 5; ++i) cluster.push_back(SpherePoint{1e-4 * i, 0.0, 1.0});
  const LandauComparison bad = landau_compare(cluster, 10, 4.0, 0.5, 0.5, 0.5);
  CHECK_FALSE(bad.separation_ok);
  CHECK_FALSE(bad.upper_holds.has_value());
}
