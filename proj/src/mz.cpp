#include "sphsamp/mz.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <numeric>
#include <random>
#include <sstream>

#include "sphsamp/concentration.hpp"
#include "sphsamp/error.hpp"
#include "sphsamp/parallel.hpp"
#include "sphsamp/special_fn.hpp"
#include "sphsamp/sphere.hpp"

namespace sphsamp {

using std::numbers::pi;

namespace {

void require_s2(const std::vector<SpherePoint>& pts, const char* who) {
  for (const auto& p : pts)
    if (p.dim() != 2) throw UnsupportedDimension(std::string(who) + ": requires points on S^2");
}

// Extreme eigenvalues of the smaller Gram of e, scaled by 1/scale.
std::pair<double, double> gram_extremes(const Matrix& e, double scale) {
  const bool tall = e.rows() >= e.cols();
  const Matrix g = tall ? gram_cols(e) : gram_rows(e);
  const auto eig = sym_eigen(SymMatrix(g), false).eigenvalues;
  return {eig.front() / scale, eig.back() / scale};
}

}  // namespace

FrameBounds frame_bounds_l2(const std::vector<SpherePoint>& pts, int L) {
  if (pts.empty()) throw InputError("frame_bounds_l2: generation is empty");
  require_s2(pts, "frame_bounds_l2");
  const HarmonicBasis basis(L);
  const double pi_l = static_cast<double>(basis.size());
  const Matrix e = evaluation_matrix(basis, pts);
  const auto [lo, hi] = gram_extremes(e, pi_l);
  FrameBounds fb;
  fb.L = L;
  fb.m = pts.size();
  fb.B = std::max(hi, 0.0);
  // rank deficiency (including m < pi_L) shows up as a vanishing lower bound
  fb.A = (pts.size() >= basis.size() && lo > 1e-12 * fb.B) ? lo : 0.0;
  fb.condition = fb.A > 0.0 ? fb.B / fb.A : std::numeric_limits<double>::infinity();
  return fb;
}

MzSweep mz_sweep(const TriangularFamily& family, const std::vector<int>& Ls,
                 const MzThresholds& thresholds) {
  MzSweep out{{}, {}, false};
  for (int L : Ls) {
    if (!family.has(L)) {
      out.skipped.push_back(L);
      continue;
    }
    const auto& pts = family.at(L);
    MzSweepRow row{frame_bounds_l2(pts, L), dim_pi(2, L), false};
    row.undersampled = static_cast<std::int64_t>(pts.size()) < row.pi_L;
    out.rows.push_back(row);
  }
  out.mz_consistent = !out.rows.empty();
  for (const auto& r : out.rows)
    if (r.bounds.A < thresholds.min_lower || r.bounds.condition > thresholds.max_condition)
      out.mz_consistent = false;
  return out;
}

std::uint64_t seed_for_trial(std::uint64_t seed, std::uint64_t trial) {
  std::uint64_t z = seed + 0x9E3779B97F4A7C15ULL * (trial + 1);
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
  return z ^ (z >> 31);
}

CoefficientVector random_polynomial(int L, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> gauss;
  CoefficientVector q{L, std::vector<double>(static_cast<std::size_t>(dim_pi(2, L)))};
  for (double& c : q.coeffs) c = gauss(rng);
  return q;
}

namespace {

double grid_lp(const CoefficientVector& q, double p, int exactness) {
  const QuadratureRule rule = sphere_rule_s2(exactness);
  std::vector<double> vals(rule.size());
  parallel_for(rule.size(), [&](std::size_t i) {
    vals[i] = rule.weights[i] * std::pow(std::abs(synthesize(q, rule.points[i])), p);
  });
  double acc = 0.0;
  for (double v : vals) acc += v;
  return acc;
}

SpherePoint from_angles(double theta, double phi) {
  return SpherePoint{std::sin(theta) * std::cos(phi), std::sin(theta) * std::sin(phi), std::cos(theta)};
}

// Compass search in (theta, phi) started from a grid point.
double climb(const CoefficientVector& q, const SpherePoint& start, double step) {
  double theta = std::acos(std::clamp(start[2], -1.0, 1.0));
  double phi = std::atan2(start[1], start[0]);
  double best = std::abs(synthesize(q, start));
  while (step > 1e-12) {
    bool moved = false;
    for (auto [dt, dp] : {std::pair{1.0, 0.0}, {-1.0, 0.0}, {0.0, 1.0}, {0.0, -1.0}}) {
      const double t = theta + dt * step, f = phi + dp * step;
      const double v = std::abs(synthesize(q, from_angles(t, f)));
      if (v > best) {
        best = v;
        theta = t;
        phi = f;
        moved = true;
      }
    }
    if (!moved) step /= 2;
  }
  return best;
}

double grid_sup(const CoefficientVector& q, int exactness) {
  const QuadratureRule rule = sphere_rule_s2(exactness);
  std::vector<double> vals(rule.size());
  parallel_for(rule.size(), [&](std::size_t i) { vals[i] = std::abs(synthesize(q, rule.points[i])); });
  std::vector<std::size_t> order(rule.size());
  std::iota(order.begin(), order.end(), 0);
  const std::size_t top = std::min<std::size_t>(8, order.size());
  std::partial_sort(order.begin(), order.begin() + top, order.end(),
                    [&](std::size_t a, std::size_t b) { return vals[a] > vals[b]; });
  std::vector<double> peaks(top);
  const double step = pi / exactness;
  parallel_for(top, [&](std::size_t k) { peaks[k] = climb(q, rule.points[order[k]], step); });
  double best = *std::max_element(peaks.begin(), peaks.end());
  // the poles are not product-grid nodes
  best = std::max(best, std::abs(synthesize(q, SpherePoint{0.0, 0.0, 1.0})));
  best = std::max(best, std::abs(synthesize(q, SpherePoint{0.0, 0.0, -1.0})));
  return best;
}

}  // namespace

double continuous_lp(const CoefficientVector& q, double p) {
  if (!(p >= 1.0) || !std::isfinite(p)) throw DomainError("continuous_lp: need finite p >= 1");
  const double rounded = std::round(p);
  if (rounded == p && static_cast<long>(rounded) % 2 == 0)
    return grid_lp(q, p, static_cast<int>(rounded) * q.L);  // |Q|^p is a polynomial
  int ex = static_cast<int>(std::ceil(p)) * q.L + 16;
  double prev = grid_lp(q, p, ex);
  double change = 1.0;
  for (int k = 0; k < 5; ++k) {
    ex *= 2;
    const double next = grid_lp(q, p, ex);
    change = std::abs(next - prev) / next;
    prev = next;
    if (change <= 1e-4) return next;
  }
  throw PrecisionError("continuous_lp: relative change " + std::to_string(change) +
                       " after doubling to exactness " + std::to_string(ex));
}

double continuous_sup(const CoefficientVector& q) {
  int ex = 2 * q.L + 8;
  double prev = grid_sup(q, ex);
  double change = 1.0;
  for (int k = 0; k < 5; ++k) {
    ex *= 2;
    const double next = grid_sup(q, ex);
    change = std::abs(next - prev) / next;
    prev = next;
    if (change <= 1e-9) return next;
  }
  throw PrecisionError("continuous_sup: relative change " + std::to_string(change));
}

CpEstimate cp_monte_carlo(const std::vector<SpherePoint>& pts, int L, double p, int trials,
                          std::uint64_t seed) {
  if (trials < 1) throw InputError("cp_monte_carlo: trials must be >= 1");
  if (pts.empty()) throw InputError("cp_monte_carlo: generation is empty");
  if (!(p >= 1.0)) throw DomainError("cp_monte_carlo: p must be >= 1");
  require_s2(pts, "cp_monte_carlo");
  const bool sup = std::isinf(p);
  const HarmonicBasis basis(L);
  const Matrix e = evaluation_matrix(basis, pts);
  const double pi_l = static_cast<double>(basis.size());

  CpEstimate out{std::numeric_limits<double>::infinity(), 0.0, {}};
  for (int t = 0; t < trials; ++t) {
    const CoefficientVector q = random_polynomial(L, seed_for_trial(seed, static_cast<std::uint64_t>(t)));
    const std::vector<double> vals = e * std::span<const double>(q.coeffs);
    double ratio;
    if (sup) {
      double dmax = 0.0;
      for (double v : vals) dmax = std::max(dmax, std::abs(v));
      ratio = dmax / continuous_sup(q);
    } else {
      double dsum = 0.0;
      for (double v : vals) dsum += std::pow(std::abs(v), p);
      ratio = dsum / pi_l / continuous_lp(q, p);
    }
    out.ratios.push_back(ratio);
    out.lower_A_est = std::min(out.lower_A_est, ratio);
    out.upper_B_est = std::max(out.upper_B_est, ratio);
  }
  return out;
}

InterpolationResult interpolate_min_norm(const std::vector<SpherePoint>& pts, int L,
                                         const std::vector<double>& values) {
  if (pts.empty()) throw InputError("interpolate_min_norm: generation is empty");
  if (values.size() != pts.size())
    throw InputError("interpolate_min_norm: " + std::to_string(values.size()) + " values for " +
                     std::to_string(pts.size()) + " points");
  require_s2(pts, "interpolate_min_norm");
  const HarmonicBasis basis(L);
  const Matrix e = evaluation_matrix(basis, pts);
  const LstsqResult ls = min_norm_lstsq(e, values);

  InterpolationResult r;
  r.coefficients = {L, ls.c};
  r.residual = ls.residual;
  r.rank = ls.rank;
  r.condition = ls.condition;
  r.interpolant_norm_sq = r.coefficients.norm_sq();
  double v2 = 0.0;
  for (double v : values) v2 += v * v;
  r.data_norm_sq = v2 / static_cast<double>(basis.size());
  r.stability_quotient = r.data_norm_sq > 0.0 ? r.interpolant_norm_sq / r.data_norm_sq : 0.0;
  r.interpolating = r.residual <= 1e-8 * std::sqrt(v2);
  return r;
}

double critical_density(int d) {
  if (d < 1) throw DomainError("critical_density: d must be >= 1");
  return 2.0 * gamma_fn((d + 1) / 2.0) /
         (gamma_fn(d + 1.0) * d * std::sqrt(pi) * gamma_fn(d / 2.0));
}

double critical_density_via_trace(int d, int L, double alpha) {
  if (!(alpha > 0.0) || alpha / (L + 1) > 0.2)
    throw InputError("critical_density_via_trace: needs 0 < alpha/(L+1) <= 0.2");
  return trace_closed_form(d, L, alpha) / std::pow(alpha, d);
}

MollifierSymbol mollifier_symbol(int d, int L, double delta) {
  if (d < 2) throw UnsupportedDimension("mollifier_symbol: requires d >= 2");
  if (L < 1) throw DomainError("mollifier_symbol: L must be >= 1");
  const double radius = delta / (2.0 * (L + 1));
  if (!(delta > 0.0) || radius >= pi) throw DomainError("mollifier_symbol: need 0 < delta/(2(L+1)) < pi");
  const double height = std::pow(L / delta, d);
  ZonalProfile h{[height](double) { return height; }, d, std::cos(radius), 1.0, std::nullopt};
  const QuadratureRule rule = zonal_rule(d, L + 8);
  MollifierSymbol out{std::vector<double>(static_cast<std::size_t>(L) + 1), 0.0};
  for (int ell = 0; ell <= L; ++ell) out.symbols[ell] = funk_hecke_symbol(h, ell, rule).value;
  out.min_symbol = *std::min_element(out.symbols.begin(), out.symbols.end());
  return out;
}

ZonalProfile delayed_means_profile(int d, int L) {
  if (d < 2) throw UnsupportedDimension("delayed means: requires d >= 2");
  if (L < 1) throw DomainError("delayed means: L must be >= 1");
  const double lam = (d - 2) / 2.0;
  const JacobiIndex idx(1.0 + lam, lam);
  // convolution with (C_{d,2L}/sigma) P_{2L} reproduces Pi_{2L}; dividing by
  // P_L(1) makes the product kernel fix Pi_L
  const double scale = kernel_constant(d, 2 * L) /
                       (surface_area(d) * generalized_binomial(L + lam + 1.0, L));
  return ZonalProfile{[idx, L, scale](double t) {
                        return scale * jacobi_eval(idx, L, t) * jacobi_eval(idx, 2 * L, t);
                      },
                      d, -1.0, 1.0, 3 * L};
}

DelayedMeans delayed_means_check(int d, int L) {
  const ZonalProfile g = delayed_means_profile(d, L);
  const double lam = (d - 2) / 2.0;
  const JacobiIndex idx(1.0 + lam, lam);
  DelayedMeans out;
  out.scale = kernel_constant(d, 2 * L) / (surface_area(d) * generalized_binomial(L + lam + 1.0, L));
  const QuadratureRule rule = zonal_rule(d, 3 * L + 3);
  out.symbols.resize(static_cast<std::size_t>(3 * L + 3));
  for (int ell = 0; ell <= 3 * L + 2; ++ell) out.symbols[ell] = funk_hecke_symbol(g, ell, rule).value;

  std::vector<double> zeros = golub_welsch(L, idx).nodes;
  const std::vector<double> z2 = golub_welsch(2 * L, idx).nodes;
  zeros.insert(zeros.end(), z2.begin(), z2.end());
  out.l1_norm = zonal_integral_converged([&](double t) { return std::abs(g.fn(t)); }, d, zeros, 8, 1e-10).value;
  return out;
}

namespace {

void require_span(const std::vector<int>& Ls, double factor, const char* who) {
  if (Ls.size() < 2) throw InputError(std::string(who) + ": need at least two degrees");
  const auto [lo, hi] = std::minmax_element(Ls.begin(), Ls.end());
  if (*lo < 1) throw InputError(std::string(who) + ": degrees must be >= 1");
  if (static_cast<double>(*hi) / *lo < factor)
    throw InputError(std::string(who) + ": degrees must span a factor >= " + std::to_string(factor));
}

ScalingFit fit_rows(std::vector<ScalingRow> rows, double expected) {
  std::vector<double> x, y;
  for (const auto& r : rows) {
    x.push_back(std::log(static_cast<double>(r.L)));
    y.push_back(std::log(r.value));
  }
  return {fit_line(x, y).slope, expected, std::move(rows)};
}

}  // namespace

ScalingFit jacobi_lp_scaling(int d, double p, const std::vector<int>& Ls) {
  if (d < 1) throw DomainError("jacobi_lp_scaling: d must be >= 1");
  if (!(p >= 1.0) || !std::isfinite(p)) throw DomainError("jacobi_lp_scaling: need finite p >= 1");
  const double critical = 2.0 * d / (d + 1.0);
  if (std::abs(p - critical) < 1e-9)
    throw InputError("jacobi_lp_scaling: p equals the critical exponent 2d/(d+1)");
  require_span(Ls, 8.0, "jacobi_lp_scaling");
  std::vector<ScalingRow> rows(Ls.size());
  parallel_for(Ls.size(), [&](std::size_t i) { rows[i] = {Ls[i], kernel_jacobi_lp(d, Ls[i], p)}; });
  return fit_rows(std::move(rows), p > critical ? d * (p / 2.0 - 1.0) : -p / 2.0);
}

ScalingFit projection_l1_norm(int d, const std::vector<int>& Ls) {
  if (d < 1) throw DomainError("projection_l1_norm: d must be >= 1");
  require_span(Ls, 8.0, "projection_l1_norm");
  std::vector<ScalingRow> rows(Ls.size());
  parallel_for(Ls.size(), [&](std::size_t i) {
    const int L = Ls[i];
    rows[i] = {L, kernel_constant(d, L) / surface_area(d) * kernel_jacobi_lp(d, L, 1.0)};
  });
  return fit_rows(std::move(rows), (d - 1) / 2.0);
}

ScalingFit kernel_constant_scaling(int d, const std::vector<int>& Ls) {
  if (d < 1) throw DomainError("kernel_constant_scaling: d must be >= 1");
  require_span(Ls, 2.0, "kernel_constant_scaling");
  std::vector<ScalingRow> rows;
  for (int L : Ls) rows.push_back({L, kernel_constant(d, L)});
  return fit_rows(std::move(rows), d / 2.0);
}

CisDiagnostic complete_interp_diagnostic(const TriangularFamily& family, const std::vector<int>& Ls) {
  if (family.d != 2) throw UnsupportedDimension("complete_interp_diagnostic: requires d = 2");
  CisDiagnostic out;
  out.critical = critical_density(2);
  std::vector<int> missing;
  for (int L : Ls) {
    if (!family.has(L)) {
      missing.push_back(L);
      out.offending.push_back(L);
      continue;
    }
    const auto& pts = family.at(L);
    CisRow row;
    row.L = L;
    row.m = pts.size();
    row.pi_L = dim_pi(2, L);
    row.square = static_cast<std::int64_t>(row.m) == row.pi_L;
    row.bounds = frame_bounds_l2(pts, L);
    const HarmonicBasis basis(L);
    const auto [lo, hi] = gram_extremes(evaluation_matrix(basis, pts), 1.0);
    row.interpolation_condition =
        lo > 1e-12 * hi ? std::sqrt(hi / lo) : std::numeric_limits<double>::infinity();

    double alpha = 0.0;
    for (double a : {2.0, 4.0, 8.0})
      if (a / (L + 1) <= 0.5) alpha = a;
    if (alpha > 0.0) {
      TriangularFamily single;
      single.generations[L] = pts;
      const DensityReport dr = density_scan(single, {alpha}, {L}, 4);
      row.d_minus_est = dr.d_minus_est;
      row.d_plus_est = dr.d_plus_est;
    }
    if (!row.square || row.bounds.A <= 0.0) out.offending.push_back(L);
    out.rows.push_back(row);
  }
  out.complete = out.offending.empty() && !out.rows.empty();
  std::ostringstream v;
  if (out.complete) {
    v << "square and nonsingular at every tested degree; uniformity in L is not established "
         "by finite data (see the condition trend)";
  } else {
    v << "not complete: offending degrees";
    for (int L : out.offending) v << ' ' << L;
    if (!missing.empty()) v << " (some missing from the family)";
  }
  out.verdict = v.str();
  return out;
}

std::vector<SpherePoint> tetrahedron() {
  return {SpherePoint{1.0, 1.0, 1.0}, SpherePoint{1.0, -1.0, -1.0}, SpherePoint{-1.0, 1.0, -1.0},
          SpherePoint{-1.0, -1.0, 1.0}};
}

}  // namespace sphsamp
