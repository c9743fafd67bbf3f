#include "sphsamp/acceptance.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <numbers>
#include <random>
#include <sstream>

#include "sphsamp/concentration.hpp"
#include "sphsamp/families.hpp"
#include "sphsamp/harmonic.hpp"
#include "sphsamp/mz.hpp"
#include "sphsamp/sphere.hpp"

namespace sphsamp {

using std::numbers::pi;

double kernel_diagonal_error(int d, int L, int samples, std::uint64_t seed) {
  const auto pts = gen_random(d, static_cast<std::size_t>(samples), seed);
  const double target = static_cast<double>(dim_pi(d, L));
  double worst = 0.0;
  for (const auto& u : pts)
    worst = std::max(worst, std::abs(surface_area(d) * eval_kernel(d, L, u, u) - target) / target);
  return worst;
}

double reproducing_error(int L, int trials, std::uint64_t seed) {
  const QuadratureRule rule = sphere_rule_s2(2 * L);
  const auto us = gen_random(2, static_cast<std::size_t>(trials), seed);
  double worst = 0.0;
  for (int t = 0; t < trials; ++t) {
    const CoefficientVector q = random_polynomial(L, seed_for_trial(seed, static_cast<std::uint64_t>(t)));
    const SpherePoint& u = us[static_cast<std::size_t>(t)];
    double acc = 0.0;
    for (std::size_t i = 0; i < rule.size(); ++i)
      acc += rule.weights[i] * eval_kernel(2, L, u, rule.points[i]) * synthesize(q, rule.points[i]);
    worst = std::max(worst, std::abs(acc - synthesize(q, u)) / continuous_sup(q));
  }
  return worst;
}

namespace {

std::string sci(double x) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.3g", x);
  return buf;
}

struct Outcome {
  bool pass;
  std::string detail;
};

Outcome kernel_identity(bool quick) {
  double worst = 0.0;
  for (int d : {2, 3, 4})
    for (int L = 0; L <= 50; L += quick ? 5 : 1)
      worst = std::max(worst, kernel_diagonal_error(d, L, 20, 1000 + 100 * d + L));
  return {worst <= 1e-9, "max rel err " + sci(worst) + " (tol 1e-9)"};
}

Outcome reproducing(bool) {
  double worst = 0.0;
  for (int L : {8, 16, 32}) worst = std::max(worst, reproducing_error(L, 10, 2000 + L));
  return {worst <= 1e-9, "max err/||Q||_inf " + sci(worst) + " (tol 1e-9)"};
}

Outcome trace_loop(bool quick) {
  double worst = 0.0;
  double lo = 0.0, hi = 1.0;
  for (int L = 1; L <= 40; L += quick ? 13 : 1) {
    for (double theta : {0.2, 0.5, 1.0}) {
      const CapGram g = cap_gram_s2(L, theta);
      const double expect = static_cast<double>((L + 1) * (L + 1)) * (1.0 - std::cos(theta)) / 2.0;
      worst = std::max(worst, std::abs(g.trace() - expect) / expect);
      for (const auto& b : g.blocks) {
        const auto ev = sym_eigen(SymMatrix(b.entries), false).eigenvalues;
        lo = std::min(lo, ev.front());
        hi = std::max(hi, ev.back());
      }
    }
  }
  const bool ok = worst <= 1e-8 && lo >= -1e-10 && hi <= 1.0 + 1e-10;
  return {ok, "max rel err " + sci(worst) + " (tol 1e-8), eigenvalues in [" + sci(lo) + ", 1+" +
                  sci(hi - 1.0) + "]"};
}

Outcome deficit_slope(bool) {
  const TraceDeficitFit fit = trace_deficit_slope(2, 60, {4, 6, 8, 12, 16});
  bool any_excluded = false;
  for (const auto& r : fit.rows) any_excluded = any_excluded || r.excluded;
  const bool ok = !any_excluded && fit.slope >= 0.75 && fit.slope <= 1.35;
  return {ok, "slope " + sci(fit.slope) + " (window [0.75, 1.35])"};
}

Outcome density_constant(bool) {
  const double e2 = std::abs(critical_density(2) - 0.25);
  const double e1 = std::abs(critical_density(1) - 2.0 / pi);
  const double e4 = std::abs(critical_density(4) - 1.0 / 64.0);
  const double via = critical_density_via_trace(2, 200, 8.0);
  bool monotone = true;
  double prev = -1.0;
  for (int L : {50, 100, 200, 400}) {
    const double gap = std::abs(critical_density_via_trace(2, L, 8.0) - 0.25);
    if (prev >= 0.0 && gap >= prev) monotone = false;
    prev = gap;
  }
  const bool ok = e2 <= 1e-12 && e1 <= 1e-12 && e4 <= 1e-12 &&
                  std::abs(via - 0.25) <= 0.05 * 0.25 && monotone;
  return {ok, "errors d=1,2,4: " + sci(e1) + ", " + sci(e2) + ", " + sci(e4) + "; via trace " +
                  sci(via) + (monotone ? ", monotone" : ", NOT monotone")};
}

Outcome jacobi_norms(bool) {
  const std::vector<int> Ls{16, 24, 32, 48, 64, 96, 128};
  const double s4 = jacobi_lp_scaling(2, 4.0, Ls).slope;
  const double s1 = jacobi_lp_scaling(2, 1.0, Ls).slope;
  const bool ok = std::abs(s4 - 2.0) <= 0.2 && std::abs(s1 + 0.5) <= 0.1;
  return {ok, "slope p=4 " + sci(s4) + " (2 +- 0.2), p=1 " + sci(s1) + " (-0.5 +- 0.1)"};
}

Outcome projection_growth(bool) {
  const double s = projection_l1_norm(2, {16, 24, 32, 48, 64, 96, 128}).slope;
  return {std::abs(s - 0.5) <= 0.15, "slope " + sci(s) + " (0.5 +- 0.15)"};
}

Outcome multiplier(bool) {
  double err = 0.0;
  double n_lo = 1e300, n_hi = 0.0;
  for (int L : {8, 16, 32}) {
    const DelayedMeans dm = delayed_means_check(2, L);
    for (int ell = 0; ell <= 3 * L + 2; ++ell) {
      if (ell <= L) err = std::max(err, std::abs(dm.symbols[ell] - 1.0));
      if (ell > 3 * L) err = std::max(err, std::abs(dm.symbols[ell]));
    }
    n_lo = std::min(n_lo, dm.l1_norm);
    n_hi = std::max(n_hi, dm.l1_norm);
  }
  const double spread = (n_hi - n_lo) / n_lo;
  return {err <= 1e-8 && spread < 0.25,
          "symbol err " + sci(err) + " (tol 1e-8), ||g||_1 spread " + sci(spread) + " (< 0.25)"};
}

Outcome frame_exactness(bool quick) {
  const FrameBounds tb = frame_bounds_l2(tetrahedron(), 1);
  const double target = 1.0 / (4.0 * pi);
  const double tet_err = std::max(std::abs(tb.A - target), std::abs(tb.B - target));

  std::mt19937_64 rng(9000);
  std::normal_distribution<double> gauss;
  long checks = 0, violations = 0;
  const std::vector<int> Ls = quick ? std::vector<int>{4, 8} : std::vector<int>{4, 8, 16};
  for (int L : Ls) {
    std::vector<std::vector<SpherePoint>> sets;
    for (double c : {0.5, 1.0, 1.5, 2.0}) sets.push_back(gen_fibonacci(L, c));
    sets.push_back(gen_random(2, 2 * static_cast<std::size_t>(dim_pi(2, L)), 9100 + L));
    const HarmonicBasis basis(L);
    for (const auto& pts : sets) {
      const FrameBounds fb = frame_bounds_l2(pts, L);
      const Matrix e = evaluation_matrix(basis, pts);
      for (int t = 0; t < 100; ++t) {
        std::vector<double> c(basis.size());
        for (double& x : c) x = gauss(rng);
        double c2 = 0.0;
        for (double x : c) c2 += x * x;
        const double q = std::pow(norm2(e * std::span<const double>(c)), 2) / basis.size();
        const double slack = 1e-10 * fb.B * c2;
        ++checks;
        if (q < fb.A * c2 - slack || q > fb.B * c2 + slack) ++violations;
      }
    }
  }
  return {tet_err <= 1e-10 && violations == 0,
          "tetrahedron |A-1/4pi|,|B-1/4pi| <= " + sci(tet_err) + "; " + std::to_string(violations) +
              "/" + std::to_string(checks) + " quadratic-form violations"};
}

Outcome interpolation(bool) {
  const int L = 8;
  const auto pts = gen_fibonacci(L, 1.5);
  const InterpolationResult one = interpolate_min_norm(pts, L, std::vector<double>(pts.size(), 1.0));
  double coeff_err = std::abs(one.coefficients.coeffs[0] - std::sqrt(4.0 * pi));
  for (std::size_t i = 1; i < one.coefficients.coeffs.size(); ++i)
    coeff_err = std::max(coeff_err, std::abs(one.coefficients.coeffs[i]));

  std::mt19937_64 rng(11);
  std::uniform_real_distribution<double> unif(-1.0, 1.0);
  double tet_res = 0.0;
  for (int t = 0; t < 10; ++t) {
    std::vector<double> v(4);
    for (double& x : v) x = unif(rng);
    tet_res = std::max(tet_res, interpolate_min_norm(tetrahedron(), 1, v).residual);
  }
  const bool ok = one.residual <= 1e-12 && coeff_err <= 1e-10 && tet_res <= 1e-10;
  return {ok, "ones residual " + sci(one.residual) + ", distance to Q=1 " + sci(coeff_err) +
                  "; tetrahedron residual " + sci(tet_res)};
}

Outcome sandwich(bool quick) {
  long checked = 0, failed = 0;
  for (int L = 1; L <= 40; L += quick ? 3 : 1) {
    for (double alpha : {2.0, 3.0, 4.0, 6.0, 8.0, 12.0, 16.0}) {
      if (alpha / (L + 1) >= pi) continue;
      const SpectrumReport sp = spectrum(L, alpha, RadiusMode::kAlpha);
      for (double gamma : {0.25, 0.5, 0.75}) {
        long count = 0;
        for (double lam : sp.eigenvalues) count += lam > gamma;
        const double lower = sp.trace - (sp.trace - sp.trace_sq) / (1.0 - gamma);
        const double upper = sp.trace / gamma;
        const double slack = 1e-9 * std::max(1.0, sp.trace);
        ++checked;
        if (lower > count + slack || count > upper + slack) ++failed;
      }
    }
  }
  return {failed == 0, std::to_string(failed) + "/" + std::to_string(checked) + " sandwich violations"};
}

Outcome density_echo(bool) {
  std::ostringstream os;
  bool ok = true;
  for (double c : {0.5, 1.0, 2.0}) {
    TriangularFamily fam;
    fam.generations[32] = gen_fibonacci(32, c);
    const DensityReport r = density_scan(fam, {16.0}, {32}, 4);
    const double target = c / 4.0;
    const double em = (r.d_minus_est - target) / target;
    const double ep = (r.d_plus_est - target) / target;
    ok = ok && std::abs(em) <= 0.15 && std::abs(ep) <= 0.15;
    os << "c=" << c << ": D-/D+ off by " << sci(100 * em) << "%/" << sci(100 * ep) << "%; ";
  }
  os << "(tol 15%)";
  return {ok, os.str()};
}

Outcome oracles(bool) {
  std::mt19937_64 rng(13);
  long bad = 0;
  for (int inst = 0; inst < 20; ++inst) {
    const std::size_t m = 100 + rng() % 401;
    const int L = 4 + static_cast<int>(rng() % 17);
    const double delta = 0.25 + 0.25 * static_cast<double>(rng() % 12);
    const auto pts = gen_random(2, m, 1300 + inst);
    const auto keep = extract_separated_indices(pts, L, delta);
    const double r = delta / (L + 1);
    std::vector<bool> kept(m, false);
    for (auto i : keep) kept[i] = true;
    for (std::size_t a = 0; a < keep.size(); ++a)
      for (std::size_t b = a + 1; b < keep.size(); ++b)
        if (geodesic_distance(pts[keep[a]], pts[keep[b]]) < r) ++bad;
    for (std::size_t i = 0; i < m; ++i) {
      if (kept[i]) continue;
      bool covered = false;
      for (auto k : keep) covered = covered || geodesic_distance(pts[i], pts[k]) < r;
      if (!covered) ++bad;
    }
  }
  const double s = trace_square(2, 40, 8.0, TraceSquareMethod::kSpectral).value;
  const double n = trace_square(2, 40, 8.0, TraceSquareMethod::kNestedQuadrature).value;
  const double rel = std::abs(s - n) / std::abs(s);
  return {bad == 0 && rel <= 1e-5,
          std::to_string(bad) + " separation/covering failures; trace_square rel diff " + sci(rel) +
              " (tol 1e-5)"};
}

}  // namespace

std::vector<CriterionResult> run_acceptance(bool quick, std::ostream& os) {
  const std::vector<std::pair<std::string, std::function<Outcome(bool)>>> criteria{
      {"kernel diagonal identity", kernel_identity},
      {"reproducing property", reproducing},
      {"concentration trace loop", trace_loop},
      {"trace deficit slope", deficit_slope},
      {"critical density", density_constant},
      {"jacobi L^p scaling", jacobi_norms},
      {"projection L^1 growth", projection_growth},
      {"delayed means multiplier", multiplier},
      {"frame bound exactness", frame_exactness},
      {"interpolation", interpolation},
      {"plunge sandwich", sandwich},
      {"density echo", density_echo},
      {"oracle equivalences", oracles},
  };
  std::vector<CriterionResult> out;
  int id = 0;
  for (const auto& [name, fn] : criteria) {
    ++id;
    const auto t0 = std::chrono::steady_clock::now();
    Outcome o;
    try {
      o = fn(quick);
    } catch (const std::exception& e) {
      o = {false, std::string("threw: ") + e.what()};
    }
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    char head[64];
    std::snprintf(head, sizeof head, "[%s] %2d %-26s", o.pass ? "PASS" : "FAIL", id, name.c_str());
    os << head << ' ' << o.detail << "  (" << sci(secs) << " s)\n";
    out.push_back({id, name, o.pass, o.detail, secs});
  }
  return out;
}

}  // namespace sphsamp
