#pragma once

#include <optional>
#include <string>
#include <vector>

#include "sphsamp/linalg.hpp"
#include "sphsamp/point.hpp"

namespace sphsamp {

/// Gram matrix of the canonical Pi_L basis over the polar cap of radius theta
/// (d = 2). It is block diagonal: one block per azimuthal order m, rows
/// ell = m..L, shared by the cos and sin sectors when m > 0.
struct CapGram {
  struct Block {
    int m;
    int multiplicity;  // 1 for m = 0, 2 otherwise
    Matrix entries;    // (L+1-m) x (L+1-m)
  };

  int L;
  double theta;
  std::vector<Block> blocks;

  /// Full pi_L x pi_L matrix in canonical order.
  SymMatrix dense() const;
  double trace() const;
  double frobenius_sq() const;
};

/// theta in (0, pi]; theta = pi is the whole sphere.
CapGram cap_gram_s2(int L, double theta);

enum class RadiusMode { kTheta, kAlpha };

struct SpectrumReport {
  int d = 2;
  int L = 0;
  double alpha = 0.0;  // cap radius is alpha / (L+1)
  double theta = 0.0;
  std::vector<double> eigenvalues;  // descending
  double trace = 0.0;               // trace of the Gram
  double trace_sq = 0.0;            // squared Frobenius norm of the Gram
  bool clamped = false;             // some eigenvalue was pulled into [0, 1]
};

SpectrumReport spectrum(int L, double value, RadiusMode mode);

/// pi_L sigma(cap) / sigma(S^d) for a cap of radius alpha / (L+1).
double trace_closed_form(int d, int L, double alpha);

enum class TraceSquareMethod { kAuto, kSpectral, kNestedQuadrature };

struct TraceSquare {
  double value;
  TraceSquareMethod method;
  int nodes = 0;  // polar nodes per variable for the nested rule
  double relative_change = 0.0;
};

/// tr(K_A^2) for a cap of radius alpha/(L+1). Auto picks the spectral route on
/// S^2 and the three-fold nested quadrature otherwise.
TraceSquare trace_square(int d, int L, double alpha,
                         TraceSquareMethod method = TraceSquareMethod::kAuto);

struct PlungeCount {
  long count;
  double lower_bound;  // tr - (tr - tr2) / (1 - gamma)
  double upper_bound;  // tr / gamma
};

PlungeCount plunge_count(const SpectrumReport& report, double gamma);

struct TraceDeficitRow {
  double alpha;
  double trace;
  double trace_sq;
  double deficit;
  bool excluded;  // deficit <= 0, left out of the fit
};

struct TraceDeficitFit {
  double slope;
  double intercept;
  std::vector<TraceDeficitRow> rows;
};

/// Least-squares slope of log(tr - tr^2) against log alpha.
TraceDeficitFit trace_deficit_slope(int d, int L, const std::vector<double>& alphas);

struct LandauComparison {
  int L;
  double alpha;
  double eps;
  double gamma;
  double delta;
  long n_plus;   // #(Z(L) in A_L^+)
  long n_minus;  // #(Z(L) in A_L^-)
  bool separation_ok;
  double measured_separation;
  std::optional<double> lambda_upper;  // lambda_{N_L + 1}
  std::optional<double> lambda_lower;  // lambda_{n_L - 1}
  std::optional<bool> upper_holds;    // lambda_{N_L+1} <= gamma
  std::optional<bool> lower_holds;    // lambda_{n_L-1} >= delta
  double lambda_1;
};

/// Counts of Z(L) in the polar caps of radius (alpha +- eps)/(L+1) set
/// against the spectrum at radius alpha/(L+1). Requires alpha > eps. A
/// family whose separation falls below eps is flagged and not compared.
LandauComparison landau_compare(const std::vector<SpherePoint>& points, int L,
                                double alpha, double gamma, double delta, double eps);

}  // namespace sphsamp
