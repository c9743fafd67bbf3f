#pragma once

#include <functional>
#include <optional>
#include <vector>

#include "sphsamp/quadrature.hpp"

namespace sphsamp {

/// Gamma(x) for x > 0. Overflows to +inf past x ~ 171.6; use log_gamma there.
double gamma_fn(double x);
double log_gamma(double x);

/// Gamma(a+1) / (Gamma(k+1) Gamma(a-k+1)), valid when a-k+1 > 0 or when a is
/// a nonnegative integer >= k. Small integer arguments are computed exactly.
double generalized_binomial(double a, int k);

/// Index (alpha, beta) of a Jacobi polynomial; both must exceed -1.
struct JacobiIndex {
  double alpha;
  double beta;

  JacobiIndex(double a, double b);
};

/// P_n^{(alpha,beta)}(t) by the forward three-term recurrence.
double jacobi_eval(const JacobiIndex& idx, int n, double t);

/// All degrees 0..n at t in a single pass.
std::vector<double> jacobi_eval_all(const JacobiIndex& idx, int n, double t);

/// Gegenbauer C_n^{lambda_g}(t), lambda_g > 0.
double gegenbauer_eval(double lambda_g, int n, double t);

/// Leading oscillatory term of P_L^{(1+lambda,lambda)}(cos theta), lambda = (d-2)/2,
/// valid for c/L <= theta <= pi - c/L.
struct SzegoTerm {
  double main;
  double error_envelope;  // k(theta) / (sqrt(L) * L * sin(theta))
  double k;
  double gamma;
};

SzegoTerm szego_main_term(int L, int d, double theta, double c = 1.0);

/// A zonal function g^flat on [-1, 1] living on S^d. The profile may vanish
/// outside [t_lo, t_hi]; quadrature is then confined to that interval.
struct ZonalProfile {
  std::function<double(double)> fn;
  int d = 2;
  double t_lo = -1.0;
  double t_hi = 1.0;
  std::optional<int> poly_degree;  // set when fn is a polynomial of known degree

  bool full_support() const { return t_lo <= -1.0 && t_hi >= 1.0; }
};

struct FunkHeckeSymbol {
  double value;
  bool precision_warning;  // rule too weak for a polynomial profile
};

/// Multiplier m_ell by which convolution with the profile acts on H_ell:
///   sigma(S^{d-1}) * int g(t) C_ell(t)/C_ell(1) (1-t^2)^{(d-2)/2} dt,
/// with C_ell the Gegenbauer polynomial of index (d-1)/2. `rule` is a zonal
/// rule for the weight (1-t^2)^{(d-2)/2}. For a profile of partial support the
/// integral is taken in the polar angle with a Gauss-Legendre rule of the
/// same size on the support.
FunkHeckeSymbol funk_hecke_symbol(const ZonalProfile& g, int ell,
                                  const QuadratureRule& rule);

}  // namespace sphsamp
