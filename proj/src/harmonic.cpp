#include "sphsamp/harmonic.hpp"

#include <algorithm>
#include <climits>
#include <cmath>
#include <cstdio>
#include <iomanip>
#include <istream>
#include <numbers>
#include <ostream>
#include <string>

#include "sphsamp/error.hpp"
#include "sphsamp/parallel.hpp"
#include "sphsamp/special_fn.hpp"
#include "sphsamp/sphere.hpp"

namespace sphsamp {

namespace {

std::int64_t binom_i64(std::int64_t n, std::int64_t k) {
  if (k < 0 || n < 0 || k > n) return 0;
  k = std::min(k, n - k);
  __int128 r = 1;
  for (std::int64_t i = 1; i <= k; ++i) r = r * (n - k + i) / i;
  if (r > static_cast<__int128>(INT64_MAX)) throw DomainError("dimension overflows int64");
  return static_cast<std::int64_t>(r);
}

void require_d(int d) {
  if (d < 1) throw DomainError("sphere dimension must be >= 1");
}

}  // namespace

std::int64_t dim_h(int d, int ell) {
  require_d(d);
  if (ell < 0) throw DomainError("dim_h: negative degree");
  if (ell == 0) return 1;
  if (ell == 1) return d + 1;
  return binom_i64(d + ell, ell) - binom_i64(d + ell - 2, ell - 2);
}

std::int64_t dim_pi(int d, int L) {
  require_d(d);
  if (L < 0) throw DomainError("dim_pi: negative degree");
  return binom_i64(d + L, L) + binom_i64(d + L - 1, L - 1);
}

double kernel_constant(int d, int L) {
  require_d(d);
  if (L < 0) throw DomainError("kernel_constant: negative degree");
  return generalized_binomial(d + L - 1.0, L) / generalized_binomial(L + (d - 2) / 2.0, L);
}

double kernel_profile(int d, int L, double t) {
  const double lam = (d - 2) / 2.0;
  return kernel_constant(d, L) / surface_area(d) * jacobi_eval(JacobiIndex(1.0 + lam, lam), L, t);
}

double eval_kernel(int d, int L, const SpherePoint& u, const SpherePoint& v) {
  if (u.dim() != d || v.dim() != d) throw InputError("eval_kernel: point dimension != d");
  return kernel_profile(d, L, std::clamp(dot(u, v), -1.0, 1.0));
}

HarmonicBasis::HarmonicBasis(int L, int d) : L_(L) {
  if (d != 2) throw UnsupportedDimension("explicit harmonic basis exists only for d = 2");
  if (L < 0) throw DomainError("HarmonicBasis: negative degree");
  order_.reserve(static_cast<std::size_t>(L + 1) * (L + 1));
  for (int ell = 0; ell <= L; ++ell) {
    order_.push_back({ell, 0, false});
    for (int m = 1; m <= ell; ++m) {
      order_.push_back({ell, m, false});
      order_.push_back({ell, m, true});
    }
  }
}

std::size_t HarmonicBasis::index_of(int ell, int m, bool is_sin) {
  const std::size_t base = static_cast<std::size_t>(ell) * ell;
  if (m == 0) return base;
  return base + 2 * static_cast<std::size_t>(m) - 1 + (is_sin ? 1 : 0);
}

std::vector<double> normalized_legendre(int L, double t) {
  std::vector<double> q(legendre_slot(L, L) + 1, 0.0);
  const double s = std::sqrt(std::max(0.0, 1.0 - t * t));
  q[0] = 1.0 / std::sqrt(4.0 * std::numbers::pi);
  for (int m = 0; m <= L; ++m) {
    if (m > 0) q[legendre_slot(m, m)] = std::sqrt((2.0 * m + 1.0) / (2.0 * m)) * s *
                                        q[legendre_slot(m - 1, m - 1)];
    if (m + 1 <= L) q[legendre_slot(m + 1, m)] = std::sqrt(2.0 * m + 3.0) * t * q[legendre_slot(m, m)];
    for (int ell = m + 2; ell <= L; ++ell) {
      const double l2 = static_cast<double>(ell) * ell;
      const double m2 = static_cast<double>(m) * m;
      const double a = std::sqrt((4.0 * l2 - 1.0) / (l2 - m2));
      const double b = std::sqrt(((ell - 1.0) * (ell - 1.0) - m2) / (4.0 * (ell - 1.0) * (ell - 1.0) - 1.0));
      q[legendre_slot(ell, m)] = a * (t * q[legendre_slot(ell - 1, m)] - b * q[legendre_slot(ell - 2, m)]);
    }
  }
  return q;
}

std::vector<double> basis_eval_s2(int L, const SpherePoint& u) {
  if (u.dim() != 2) throw UnsupportedDimension("basis_eval_s2: requires a point of S^2");
  if (L < 0) throw DomainError("basis_eval_s2: negative degree");
  const double t = std::clamp(u[2], -1.0, 1.0);
  const double phi = std::atan2(u[1], u[0]);
  const std::vector<double> q = normalized_legendre(L, t);
  std::vector<double> y(static_cast<std::size_t>(L + 1) * (L + 1));
  const double root2 = std::numbers::sqrt2;
  std::vector<double> cm(static_cast<std::size_t>(L) + 1), sm(static_cast<std::size_t>(L) + 1);
  for (int m = 0; m <= L; ++m) {
    cm[m] = root2 * std::cos(m * phi);
    sm[m] = root2 * std::sin(m * phi);
  }
  for (int ell = 0; ell <= L; ++ell) {
    y[HarmonicBasis::index_of(ell, 0, false)] = q[legendre_slot(ell, 0)];
    for (int m = 1; m <= ell; ++m) {
      const double qm = q[legendre_slot(ell, m)];
      y[HarmonicBasis::index_of(ell, m, false)] = qm * cm[m];
      y[HarmonicBasis::index_of(ell, m, true)] = qm * sm[m];
    }
  }
  return y;
}

Matrix evaluation_matrix(const HarmonicBasis& basis, const std::vector<SpherePoint>& pts) {
  if (pts.empty()) throw InputError("evaluation_matrix: empty point list");
  Matrix e(pts.size(), basis.size());
  parallel_for(pts.size(), [&](std::size_t j) {
    const std::vector<double> y = basis_eval_s2(basis.L(), pts[j]);
    std::copy(y.begin(), y.end(), e.row(j).begin());
  });
  return e;
}

double CoefficientVector::norm_sq() const {
  double s = 0.0;
  for (double c : coeffs) s += c * c;
  return s;
}

double synthesize(const CoefficientVector& q, const SpherePoint& u) {
  const std::vector<double> y = basis_eval_s2(q.L, u);
  if (y.size() != q.coeffs.size()) throw InputError("synthesize: coefficient length != dim_pi");
  double acc = 0.0;
  for (std::size_t k = 0; k < y.size(); ++k) acc += q.coeffs[k] * y[k];
  return acc;
}

CoefficientVector fourier_project(const std::function<double(const SpherePoint&)>& f, int L,
                                  const QuadratureRule& rule) {
  if (!rule.is_surface()) throw InputError("fourier_project: needs a surface rule");
  CoefficientVector out{L, std::vector<double>(static_cast<std::size_t>(L + 1) * (L + 1), 0.0)};
  for (std::size_t i = 0; i < rule.size(); ++i) {
    const double wf = rule.weights[i] * f(rule.points[i]);
    const std::vector<double> y = basis_eval_s2(L, rule.points[i]);
    for (std::size_t k = 0; k < y.size(); ++k) out.coeffs[k] += wf * y[k];
  }
  return out;
}

CoefficientVector dilate_coeffs(const CoefficientVector& c, double r) {
  if (!(r > 0.0)) throw DomainError("dilate_coeffs: r must be positive");
  CoefficientVector out = c;
  for (int ell = 0; ell <= c.L; ++ell) {
    const double f = std::pow(r, ell);
    const std::size_t lo = static_cast<std::size_t>(ell) * ell;
    const std::size_t hi = static_cast<std::size_t>(ell + 1) * (ell + 1);
    for (std::size_t k = lo; k < hi && k < out.coeffs.size(); ++k) out.coeffs[k] *= f;
  }
  return out;
}

double dilated_norm_sq(const CoefficientVector& c, double r) {
  return dilate_coeffs(c, r).norm_sq();
}

void write_coefficients(std::ostream& os, const CoefficientVector& c) {
  os << "# d=2 L=" << c.L << '\n' << std::setprecision(17);
  for (double x : c.coeffs) os << x << '\n';
}

CoefficientVector read_coefficients(std::istream& is) {
  std::string line;
  CoefficientVector out;
  int d = 0;
  if (!std::getline(is, line) || std::sscanf(line.c_str(), "# d=%d L=%d", &d, &out.L) != 2 ||
      d != 2 || out.L < 0)
    throw InputError("coefficient file: malformed header");
  const std::size_t n = static_cast<std::size_t>(dim_pi(2, out.L));
  double x;
  while (is >> x) out.coeffs.push_back(x);
  if (out.coeffs.size() != n)
    throw InputError("coefficient file: expected " + std::to_string(n) + " values, got " +
                     std::to_string(out.coeffs.size()));
  return out;
}

double kernel_jacobi_lp(int d, int L, double p) {
  require_d(d);
  if (!(p >= 1.0)) throw DomainError("kernel_jacobi_lp: p must be >= 1");
  const double lam = (d - 2) / 2.0;
  const JacobiIndex idx(1.0 + lam, lam);
  std::vector<double> zeros;
  if (L > 0) zeros = golub_welsch(L, idx).nodes;
  auto f = [&](double t) { return std::pow(std::abs(jacobi_eval(idx, L, t)), p); };
  return zonal_integral_converged(f, d, zeros, 8, 1e-10).value;
}

}  // namespace sphsamp
