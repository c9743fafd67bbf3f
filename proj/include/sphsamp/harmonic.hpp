#pragma once

#include <cstdint>
#include <functional>
#include <iosfwd>
#include <string>
#include <vector>

#include "sphsamp/linalg.hpp"
#include "sphsamp/point.hpp"
#include "sphsamp/quadrature.hpp"

namespace sphsamp {

/// dim H_ell on S^d.
std::int64_t dim_h(int d, int ell);

/// dim Pi_L = sum_{ell <= L} dim H_ell.
std::int64_t dim_pi(int d, int L);

/// C_{d,L} = binom(d+L-1, L) / binom(L + (d-2)/2, L).
double kernel_constant(int d, int L);

/// Reproducing kernel of Pi_L as a function of t = <u, v>.
double kernel_profile(int d, int L, double t);

/// K_L(u, v) = (C_{d,L} / sigma(S^d)) P_L^{(1+lambda,lambda)}(<u, v>).
double eval_kernel(int d, int L, const SpherePoint& u, const SpherePoint& v);

/// Real spherical harmonic index within the canonical ordering.
struct HarmonicIndex {
  int ell;
  int m;        // 0..ell
  bool is_sin;  // cos sector when false; always false for m = 0
};

/// Canonical real orthonormal basis of Pi_L on S^2. Order within degree ell:
/// m = 0, (1,cos), (1,sin), (2,cos), (2,sin), ...
class HarmonicBasis {
 public:
  explicit HarmonicBasis(int L, int d = 2);

  int d() const { return 2; }
  int L() const { return L_; }
  std::size_t size() const { return order_.size(); }
  const std::vector<HarmonicIndex>& ordering() const { return order_; }

  /// Position of (ell, m, sector) in the canonical order.
  static std::size_t index_of(int ell, int m, bool is_sin);

 private:
  int L_;
  std::vector<HarmonicIndex> order_;
};

/// Normalized associated Legendre values q_{ell,m}(t) for 0 <= m <= ell <= L,
/// scaled so that Y_{ell,0} = q_{ell,0} and Y_{ell,m} = sqrt(2) q_{ell,m} trig(m phi).
/// Stored at position ell*(ell+1)/2 + m.
std::vector<double> normalized_legendre(int L, double t);
inline std::size_t legendre_slot(int ell, int m) {
  return static_cast<std::size_t>(ell) * (ell + 1) / 2 + m;
}

/// All Pi_L basis values at u (d = 2), canonical order.
std::vector<double> basis_eval_s2(int L, const SpherePoint& u);

/// E[j][k] = Y_k(z_j).
Matrix evaluation_matrix(const HarmonicBasis& basis, const std::vector<SpherePoint>& pts);

/// Coefficients of Q in the canonical basis of Pi_L (d = 2).
struct CoefficientVector {
  int L = 0;
  std::vector<double> coeffs;

  double norm_sq() const;
};

double synthesize(const CoefficientVector& q, const SpherePoint& u);

/// Coefficient k = sum_i w_i f(x_i) Y_k(x_i) over a surface rule.
CoefficientVector fourier_project(const std::function<double(const SpherePoint&)>& f,
                                  int L, const QuadratureRule& rule);

/// Homogeneous extension: coefficient at degree ell scaled by r^ell, so the
/// result restricted to S^2 is x -> Q(r x).
CoefficientVector dilate_coeffs(const CoefficientVector& c, double r);

/// ||Q||^2_{L^2(S_r)} / r^2 = sum r^{2 ell} c_{ell m}^2.
double dilated_norm_sq(const CoefficientVector& c, double r);

// Coefficient file: "# d=2 L=<L>" then dim_pi values in canonical order.
void write_coefficients(std::ostream& os, const CoefficientVector& c);
CoefficientVector read_coefficients(std::istream& is);

/// int_{S^d} |P_L^{(1+lambda,lambda)}(<u, N>)|^p dsigma(u), integrated piecewise
/// between the zeros of the polynomial with node doubling.
double kernel_jacobi_lp(int d, int L, double p);

}  // namespace sphsamp
