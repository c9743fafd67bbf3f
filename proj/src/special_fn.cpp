#include "sphsamp/special_fn.hpp"

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <numbers>

#include "sphsamp/error.hpp"
#include "sphsamp/linalg.hpp"
#include "sphsamp/sphere.hpp"

namespace sphsamp {

double gamma_fn(double x) {
  if (!(x > 0.0)) throw DomainError("gamma_fn: argument must be positive");
  return std::tgamma(x);
}

double log_gamma(double x) {
  if (!(x > 0.0)) throw DomainError("log_gamma: argument must be positive");
  return std::lgamma(x);
}

namespace {

bool is_nonneg_integer(double a) { return a >= 0.0 && std::floor(a) == a; }

// Exact binomial for small integer arguments; nullopt on overflow risk.
std::optional<double> exact_binomial(std::uint64_t n, std::uint64_t k) {
  if (k > n) return 0.0;
  if (n > 60) return std::nullopt;
  k = std::min(k, n - k);
  std::uint64_t r = 1;
  for (std::uint64_t i = 1; i <= k; ++i) r = r * (n - k + i) / i;
  return static_cast<double>(r);
}

}  // namespace

double generalized_binomial(double a, int k) {
  if (k < 0) throw DomainError("generalized_binomial: k must be nonnegative");
  if (k == 0) return 1.0;
  if (is_nonneg_integer(a)) {
    if (a < k) return 0.0;
    if (auto e = exact_binomial(static_cast<std::uint64_t>(a), static_cast<std::uint64_t>(k)))
      return *e;
  }
  if (!(a - k + 1.0 > 0.0))
    throw DomainError("generalized_binomial: Gamma pole in the denominator");
  return std::exp(std::lgamma(a + 1.0) - std::lgamma(k + 1.0) - std::lgamma(a - k + 1.0));
}

JacobiIndex::JacobiIndex(double a, double b) : alpha(a), beta(b) {
  if (!(a > -1.0) || !(b > -1.0))
    throw DomainError("JacobiIndex: alpha and beta must exceed -1");
}

namespace {

void check_unit_interval(double t) {
  if (!(std::abs(t) <= 1.0 + 1e-12)) throw DomainError("argument outside [-1, 1]");
}

}  // namespace

std::vector<double> jacobi_eval_all(const JacobiIndex& idx, int n, double t) {
  if (n < 0) throw DomainError("jacobi_eval: negative degree");
  check_unit_interval(t);
  const double a = idx.alpha;
  const double b = idx.beta;
  std::vector<double> p(static_cast<std::size_t>(n) + 1);
  p[0] = 1.0;
  if (n == 0) return p;
  p[1] = 0.5 * (a - b) + 0.5 * (a + b + 2.0) * t;
  for (int k = 2; k <= n; ++k) {
    const double s = 2.0 * k + a + b;
    const double c1 = 2.0 * k * (k + a + b) * (s - 2.0);
    const double c2 = (s - 1.0) * (s * (s - 2.0) * t + a * a - b * b);
    const double c3 = 2.0 * (k + a - 1.0) * (k + b - 1.0) * s;
    p[k] = (c2 * p[k - 1] - c3 * p[k - 2]) / c1;
  }
  return p;
}

double jacobi_eval(const JacobiIndex& idx, int n, double t) {
  if (n < 0) throw DomainError("jacobi_eval: negative degree");
  check_unit_interval(t);
  const double a = idx.alpha;
  const double b = idx.beta;
  if (n == 0) return 1.0;
  double pm2 = 1.0;
  double pm1 = 0.5 * (a - b) + 0.5 * (a + b + 2.0) * t;
  for (int k = 2; k <= n; ++k) {
    const double s = 2.0 * k + a + b;
    const double c1 = 2.0 * k * (k + a + b) * (s - 2.0);
    const double c2 = (s - 1.0) * (s * (s - 2.0) * t + a * a - b * b);
    const double c3 = 2.0 * (k + a - 1.0) * (k + b - 1.0) * s;
    const double pk = (c2 * pm1 - c3 * pm2) / c1;
    pm2 = pm1;
    pm1 = pk;
  }
  return pm1;
}

double gegenbauer_eval(double lambda_g, int n, double t) {
  if (!(lambda_g > 0.0)) throw DomainError("gegenbauer_eval: lambda must be positive");
  if (n < 0) throw DomainError("gegenbauer_eval: negative degree");
  check_unit_interval(t);
  if (n == 0) return 1.0;
  double cm2 = 1.0;
  double cm1 = 2.0 * lambda_g * t;
  for (int k = 2; k <= n; ++k) {
    const double ck = (2.0 * t * (k + lambda_g - 1.0) * cm1 - (k + 2.0 * lambda_g - 2.0) * cm2) / k;
    cm2 = cm1;
    cm1 = ck;
  }
  return cm1;
}

SzegoTerm szego_main_term(int L, int d, double theta, double c) {
  if (L < 1) throw DomainError("szego_main_term: L must be positive");
  const double pi = std::numbers::pi;
  if (theta < c / L || theta > pi - c / L)
    throw DomainError("szego_main_term: theta outside [c/L, pi - c/L]");
  const double lambda = (d - 2) / 2.0;
  const double k = std::pow(pi, -0.5) * std::pow(std::sin(theta / 2), -lambda - 1.5) *
                   std::pow(std::cos(theta / 2), -lambda - 0.5);
  const double gamma = -(lambda + 1.5) * pi / 2;
  const double root_l = std::sqrt(static_cast<double>(L));
  SzegoTerm out;
  out.k = k;
  out.gamma = gamma;
  out.main = k / root_l * std::cos((L + lambda + 1.0) * theta + gamma);
  out.error_envelope = k / (root_l * L * std::sin(theta));
  return out;
}

FunkHeckeSymbol funk_hecke_symbol(const ZonalProfile& g, int ell, const QuadratureRule& rule) {
  if (g.d < 2) throw UnsupportedDimension("funk_hecke_symbol: requires d >= 2");
  if (ell < 0) throw DomainError("funk_hecke_symbol: negative degree");
  if (rule.is_surface() || rule.size() == 0)
    throw InputError("funk_hecke_symbol: needs a non-empty zonal rule");
  const double lambda_g = (g.d - 1) / 2.0;
  const double c_at_one = gegenbauer_eval(lambda_g, ell, 1.0);
  const double sphere_factor = surface_area(g.d - 1);

  FunkHeckeSymbol out{0.0, false};
  if (g.full_support()) {
    double acc = 0.0;
    for (std::size_t i = 0; i < rule.size(); ++i) {
      const double t = rule.nodes[i];
      acc += rule.weights[i] * g.fn(t) * gegenbauer_eval(lambda_g, ell, t);
    }
    out.value = sphere_factor * acc / c_at_one;
    if (g.poly_degree && rule.exactness_degree < ell + *g.poly_degree)
      out.precision_warning = true;
    return out;
  }

  // Partial support: integrate in the polar angle over [acos t_hi, acos t_lo].
  const double th_lo = std::acos(std::clamp(g.t_hi, -1.0, 1.0));
  const double th_hi = std::acos(std::clamp(g.t_lo, -1.0, 1.0));
  const QuadratureRule gl = gauss_legendre(static_cast<int>(rule.size()), th_lo, th_hi);
  double acc = 0.0;
  for (std::size_t i = 0; i < gl.size(); ++i) {
    const double th = gl.nodes[i];
    const double t = std::cos(th);
    acc += gl.weights[i] * g.fn(t) * gegenbauer_eval(lambda_g, ell, t) *
           std::pow(std::sin(th), g.d - 1);
  }
  out.value = sphere_factor * acc / c_at_one;
  return out;
}

}  // namespace sphsamp
