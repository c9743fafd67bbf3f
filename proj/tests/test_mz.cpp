#include <doctest.h>

#include <cmath>
#include <numbers>
#include <random>

#include "sphsamp/error.hpp"
#include "sphsamp/families.hpp"
#include "sphsamp/mz.hpp"
#include "sphsamp/sphere.hpp"

using namespace sphsamp;
using std::numbers::pi;

TEST_CASE("frame bounds") {
  const FrameBounds t = frame_bounds_l2(tetrahedron(), 1);
  CHECK(std::abs(t.A - 1 / (4 * pi)) < 1e-10);
  CHECK(std::abs(t.B - 1 / (4 * pi)) < 1e-10);

  const FrameBounds few = frame_bounds_l2(gen_fibonacci(8, 0.8), 8);
  CHECK(few.A == 0.0);

  auto pts = gen_fibonacci(6, 1.5);
  const FrameBounds once = frame_bounds_l2(pts, 6);
  const auto copy = pts;
  pts.insert(pts.end(), copy.begin(), copy.end());
  const FrameBounds twice = frame_bounds_l2(pts, 6);
  CHECK(twice.A == doctest::Approx(2 * once.A));
  CHECK(twice.B == doctest::Approx(2 * once.B));
  CHECK(twice.condition == doctest::Approx(once.condition));
}

TEST_CASE("mz sweep") {
  TriangularFamily dense;
  for (int L : {8, 16, 32}) dense.generations[L] = gen_fibonacci(L, 1.5);
  const MzSweep ok = mz_sweep(dense, {8, 16, 32, 64});
  CHECK(ok.mz_consistent);
  CHECK(ok.skipped == std::vector<int>{64});
  for (const auto& r : ok.rows) CHECK(r.bounds.condition <= 100.0);

  TriangularFamily sparse;
  for (int L : {8, 16, 32}) sparse.generations[L] = gen_fibonacci(L, 0.8);
  const MzSweep bad = mz_sweep(sparse, {8, 16, 32});
  CHECK_FALSE(bad.mz_consistent);
  for (const auto& r : bad.rows) {
    CHECK(r.bounds.A == 0.0);
    CHECK(r.undersampled);
  }
}

TEST_CASE("Lp Monte Carlo") {
  const auto pts = gen_fibonacci(6, 2.0);
  const FrameBounds fb = frame_bounds_l2(pts, 6);
  const CpEstimate two = cp_monte_carlo(pts, 6, 2.0, 10, 4);
  for (double r : two.ratios) {
    // continuous norm is unnormalized, discrete one is divided by pi_L
    CHECK(r >= fb.A * (1 - 1e-9));
    CHECK(r <= fb.B * (1 + 1e-9));
  }
  const CpEstimate sup = cp_monte_carlo(gen_fibonacci(8, 4.0), 8, INFINITY, 5, 2);
  CHECK(sup.lower_A_est >= 0.8);
  CHECK(sup.upper_B_est <= 1.0 + 1e-9);

  const CpEstimate a = cp_monte_carlo(pts, 6, 1.0, 1, 99), b = cp_monte_carlo(pts, 6, 1.0, 1, 99);
  CHECK(a.ratios == b.ratios);
  CHECK(seed_for_trial(1, 0) != seed_for_trial(1, 1));
}

TEST_CASE("continuous norms") {
  CoefficientVector one{0, {std::sqrt(4 * pi)}};
  CHECK(continuous_lp(one, 3.0) == doctest::Approx(4 * pi).epsilon(1e-6));
  CHECK(continuous_sup(one) == doctest::Approx(1.0));
  const CoefficientVector q = random_polynomial(5, 12);
  CHECK(continuous_lp(q, 2.0) == doctest::Approx(q.norm_sq()).epsilon(1e-12));
}

TEST_CASE("interpolation") {
  const auto pts = gen_fibonacci(8, 1.5);
  const InterpolationResult r = interpolate_min_norm(pts, 8, std::vector<double>(pts.size(), 1.0));
  CHECK(r.residual <= 1e-12);
  CHECK(r.coefficients.coeffs[0] == doctest::Approx(std::sqrt(4 * pi)));
  for (std::size_t k = 1; k < r.coefficients.coeffs.size(); ++k) CHECK(std::abs(r.coefficients.coeffs[k]) < 1e-10);

  const InterpolationResult t = interpolate_min_norm(tetrahedron(), 1, {0.3, -1.2, 2.0, 0.7});
  CHECK(t.residual <= 1e-10);
  CHECK(t.rank == 4);
  CHECK(t.interpolating);

  std::mt19937_64 rng(5);
  std::normal_distribution<double> g;
  std::vector<double> v(pts.size());
  for (double& x : v) x = g(rng);
  const InterpolationResult over = interpolate_min_norm(pts, 8, v);
  CHECK(over.residual > 0.0);
  CHECK_FALSE(over.interpolating);

  CHECK_THROWS_AS(interpolate_min_norm(pts, 8, {1.0}), InputError);
}

TEST_CASE("critical density") {
  CHECK(std::abs(critical_density(2) - 0.25) < 1e-12);
  CHECK(std::abs(critical_density(1) - 2 / pi) < 1e-12);
  CHECK(std::abs(critical_density(4) - 1.0 / 64) < 1e-12);
  CHECK(std::abs(critical_density(3) - 2 / (9 * pi)) < 1e-12);
  CHECK(std::abs(critical_density_via_trace(2, 200, 8) - 0.25) < 0.05 * 0.25);
  for (int d : {1, 2, 3}) {
    double prev = INFINITY;
    for (int L : {50, 100, 200, 400}) {
      const double gap = std::abs(critical_density_via_trace(d, L, 8) - critical_density(d));
      CHECK(gap < prev + 1e-12);
      prev = gap;
    }
    CHECK(prev < 0.01 * critical_density(d));
  }
  CHECK_THROWS_AS(critical_density_via_trace(2, 10, 8), InputError);
}

TEST_CASE("mollifier") {
  CHECK(mollifier_symbol(2, 400, 0.5).symbols[0] == doctest::Approx(pi / 4).epsilon(1e-2));
  for (int d : {2, 3})
    for (int L : {5, 10, 20, 40}) CHECK(mollifier_symbol(d, L, 0.5).min_symbol > 0.0);
  const double m10 = mollifier_symbol(2, 10, 0.5).min_symbol, m40 = mollifier_symbol(2, 40, 0.5).min_symbol;
  CHECK(std::max(m10, m40) / std::min(m10, m40) < 2.0);
}

TEST_CASE("delayed means") {
  double lo = INFINITY, hi = 0.0;
  for (int L : {8, 16, 32}) {
    const DelayedMeans dm = delayed_means_check(2, L);
    for (int ell = 0; ell <= L; ++ell) CHECK(std::abs(dm.symbols[ell] - 1.0) < 1e-8);
    for (int ell = 3 * L + 1; ell <= 3 * L + 2; ++ell) CHECK(std::abs(dm.symbols[ell]) < 1e-8);
    lo = std::min(lo, dm.l1_norm);
    hi = std::max(hi, dm.l1_norm);
  }
  CHECK((hi - lo) / lo < 0.25);
  // the same profile fed through funk_hecke_symbol at d = 3
  const ZonalProfile g = delayed_means_profile(3, 6);
  for (int ell = 0; ell <= 6; ++ell) CHECK(funk_hecke_symbol(g, ell, zonal_rule(3, 24)).value == doctest::Approx(1.0).epsilon(1e-10));
}

TEST_CASE("scaling fits") {
  const std::vector<int> Ls{16, 32, 64, 128};
  CHECK(std::abs(jacobi_lp_scaling(2, 4.0, Ls).slope - 2.0) <= 0.2);
  CHECK(std::abs(jacobi_lp_scaling(2, 1.0, Ls).slope + 0.5) <= 0.1);
  CHECK(std::abs(jacobi_lp_scaling(2, 2.0, Ls).slope) <= 0.1);
  CHECK(std::abs(projection_l1_norm(2, Ls).slope - 0.5) <= 0.15);
  CHECK_THROWS_AS(jacobi_lp_scaling(2, 4.0 / 3.0, Ls), InputError);
  CHECK_THROWS_AS(jacobi_lp_scaling(2, 4.0, {16, 32}), InputError);
  const ScalingFit pn = projection_l1_norm(2, Ls);
  for (std::size_t i = 1; i < pn.rows.size(); ++i) CHECK(pn.rows[i].value > pn.rows[i - 1].value);
}

TEST_CASE("complete interpolation diagnostic") {
  TriangularFamily tet;
  tet.generations[1] = tetrahedron();
  const CisDiagnostic t = complete_interp_diagnostic(tet, {1});
  CHECK(t.complete);
  CHECK(t.rows[0].square);
  CHECK(t.rows[0].bounds.A == doctest::Approx(t.rows[0].bounds.B));

  TriangularFamily fib;
  for (int L : {8, 16, 32}) fib.generations[L] = gen_fibonacci(L, 1.0);
  const CisDiagnostic f = complete_interp_diagnostic(fib, {8, 16, 32});
  for (const auto& r : f.rows) CHECK(r.square);
  CHECK(f.critical == doctest::Approx(0.25));

  TriangularFamily over;
  over.generations[8] = gen_fibonacci(8, 1.5);
  const CisDiagnostic o = complete_interp_diagnostic(over, {8});
  CHECK_FALSE(o.complete);
  CHECK(o.offending == std::vector<int>{8});
}
