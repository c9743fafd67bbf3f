#pragma once

#include <cstdint>
#include <limits>
#include <optional>
#include <string>
#include <vector>

#include "sphsamp/families.hpp"
#include "sphsamp/harmonic.hpp"
#include "sphsamp/linalg.hpp"

namespace sphsamp {

/// Best constants A, B in A ||Q||^2 <= pi_L^{-1} sum_j |Q(z_j)|^2 <= B ||Q||^2.
struct FrameBounds {
  int L = 0;
  std::size_t m = 0;
  double A = 0.0;
  double B = 0.0;
  double condition = std::numeric_limits<double>::infinity();  // B / A
};

FrameBounds frame_bounds_l2(const std::vector<SpherePoint>& pts, int L);

struct MzThresholds {
  double max_condition = 100.0;
  double min_lower = 1e-4 / (4.0 * 3.14159265358979323846);
};

struct MzSweepRow {
  FrameBounds bounds;
  std::int64_t pi_L;
  bool undersampled;  // m_L < pi_L
};

struct MzSweep {
  std::vector<MzSweepRow> rows;
  std::vector<int> skipped;  // requested degrees missing from the family
  bool mz_consistent;        // all rows within thresholds
};

MzSweep mz_sweep(const TriangularFamily& family, const std::vector<int>& Ls,
                 const MzThresholds& thresholds = {});

struct CpEstimate {
  double lower_A_est;  // smallest observed discrete/continuous ratio (>= true A_p)
  double upper_B_est;  // largest observed ratio (<= true B_p)
  std::vector<double> ratios;
};

/// Ratios pi_L^{-1} sum |Q(z_j)|^p / int |Q|^p over random Gaussian Q
/// (sup ratio when p is infinite). Trial t draws from seed_for_trial(seed, t).
CpEstimate cp_monte_carlo(const std::vector<SpherePoint>& pts, int L, double p,
                          int trials, std::uint64_t seed);

/// splitmix64 of (seed + golden * (trial + 1)).
std::uint64_t seed_for_trial(std::uint64_t seed, std::uint64_t trial);

/// Coefficients with i.i.d. standard Gaussian entries.
CoefficientVector random_polynomial(int L, std::uint64_t seed);

/// int_{S^2} |Q|^p by product quadrature with exactness doubling.
double continuous_lp(const CoefficientVector& q, double p);
/// sup_{S^2} |Q| estimated on refined product grids.
double continuous_sup(const CoefficientVector& q);

struct InterpolationResult {
  CoefficientVector coefficients;
  double residual = 0.0;
  double interpolant_norm_sq = 0.0;
  double data_norm_sq = 0.0;        // pi_L^{-1} sum |v_j|^2
  double stability_quotient = 0.0;  // interpolant_norm_sq / data_norm_sq
  std::size_t rank = 0;
  double condition = 0.0;
  bool interpolating = false;  // residual <= 1e-8 ||v||
};

InterpolationResult interpolate_min_norm(const std::vector<SpherePoint>& pts, int L,
                                         const std::vector<double>& values);

/// 2 Gamma((d+1)/2) / (d! d sqrt(pi) Gamma(d/2)).
double critical_density(int d);

/// trace_closed_form(d, L, alpha) / alpha^d; requires alpha/(L+1) <= 0.2.
double critical_density_via_trace(int d, int L, double alpha);

struct MollifierSymbol {
  std::vector<double> symbols;  // ell = 0..L
  double min_symbol;
};

/// Funk-Hecke symbols of h = (L/delta)^d chi_{B(N, delta/(2(L+1)))}.
MollifierSymbol mollifier_symbol(int d, int L, double delta);

struct DelayedMeans {
  std::vector<double> symbols;  // ell = 0..3L+2
  double l1_norm;
  double scale;  // constant in front of P_L P_{2L}
};

/// Zonal g = scale * P_L^{(1+lambda,lambda)} P_{2L}^{(1+lambda,lambda)} whose
/// convolution fixes Pi_L and maps into Pi_{3L}.
DelayedMeans delayed_means_check(int d, int L);

/// Profile of g as a callable on [-1, 1].
ZonalProfile delayed_means_profile(int d, int L);

struct ScalingRow {
  int L;
  double value;
};

struct ScalingFit {
  double slope;
  double expected_slope;
  std::vector<ScalingRow> rows;
};

/// log int |P_L^{(1+lambda,lambda)}|^p dsigma against log L.
ScalingFit jacobi_lp_scaling(int d, double p, const std::vector<int>& Ls);

/// log ||K_L(N, .)||_1 against log L; expected slope (d-1)/2.
ScalingFit projection_l1_norm(int d, const std::vector<int>& Ls);

/// log C_{d,L} against log L; expected slope d/2.
ScalingFit kernel_constant_scaling(int d, const std::vector<int>& Ls);

struct CisRow {
  int L;
  std::size_t m;
  std::int64_t pi_L;
  bool square;
  FrameBounds bounds;
  double interpolation_condition;
  std::optional<double> d_minus_est;
  std::optional<double> d_plus_est;
};

struct CisDiagnostic {
  std::vector<CisRow> rows;
  std::vector<int> offending;  // degrees where m_L != pi_L or E is singular
  bool complete;
  double critical;
  std::string verdict;
};

CisDiagnostic complete_interp_diagnostic(const TriangularFamily& family,
                                         const std::vector<int>& Ls);

/// Vertices of a regular tetrahedron on S^2.
std::vector<SpherePoint> tetrahedron();

}  // namespace sphsamp
