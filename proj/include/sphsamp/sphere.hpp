#pragma once

#include <functional>
#include <iosfwd>
#include <string>
#include <vector>

#include "sphsamp/linalg.hpp"
#include "sphsamp/point.hpp"
#include "sphsamp/quadrature.hpp"

namespace sphsamp {

/// Geodesic ball B(center, theta), 0 < theta <= pi.
struct Cap {
  SpherePoint center;
  double theta;

  Cap(SpherePoint c, double t);
};

double geodesic_distance(const SpherePoint& u, const SpherePoint& v);

/// sigma(S^d) = 2 pi^{(d+1)/2} / Gamma((d+1)/2); d = 0 gives 2.
double surface_area(int d);

/// sigma(B(., theta)) = sigma(S^{d-1}) int_0^theta sin^{d-1} t dt.
double cap_area(int d, double theta);

/// Gauss-Jacobi rule for (1-t^2)^{(d-2)/2}, n nodes.
QuadratureRule zonal_rule(int d, int n);

/// Product rule on S^2 exact for spherical polynomials of degree <= l_exact.
QuadratureRule sphere_rule_s2(int l_exact);

/// Product rule on a cap of S^2, built at the pole and mapped to the center.
QuadratureRule cap_rule_s2(const Cap& cap, int l_exact);

/// Orthogonal (d+1)x(d+1) map sending the north pole to `target`
/// (a single Householder reflection, identity when target is the pole).
Matrix reflection_to(const SpherePoint& target);

/// Random proper rotation of R^{d+1} (product of two Householder
/// reflections drawn from `seed`).
Matrix random_rotation(int d, unsigned long long seed);

SpherePoint apply_map(const Matrix& q, const SpherePoint& u);
std::vector<SpherePoint> apply_map(const Matrix& q, const std::vector<SpherePoint>& pts);

/// sigma(S^{d-1}) int_{theta_lo}^{theta_hi} f(cos theta) sin^{d-1}theta dtheta,
/// with the interval split at the polar angles of `t_breaks` and a
/// Gauss-Legendre rule of `nodes_per_piece` nodes on each piece.
double zonal_integral_pieces(const std::function<double(double)>& f, int d,
                             std::vector<double> t_breaks, int nodes_per_piece,
                             double theta_lo = 0.0, double theta_hi = -1.0);

struct ConvergedIntegral {
  double value;
  int nodes_per_piece;
  double relative_change;
};

/// zonal_integral_pieces with node doubling until the relative change is <= tol;
/// throws PrecisionError after `max_doublings`.
ConvergedIntegral zonal_integral_converged(const std::function<double(double)>& f,
                                           int d, const std::vector<double>& t_breaks,
                                           int start_nodes = 8, double tol = 1e-10,
                                           int max_doublings = 5);

// Point-list text format: "# d=<d> L=<L> m=<m>" then one point per line,
// d+1 coordinates at 17 significant digits.
void write_points(std::ostream& os, const std::vector<SpherePoint>& pts, int d, int L);
void write_points(const std::string& path, const std::vector<SpherePoint>& pts, int d,
                  int L);

struct PointFile {
  int d = 0;
  int L = 0;
  std::vector<SpherePoint> points;
};

PointFile read_points(std::istream& is);
PointFile read_points(const std::string& path);

}  // namespace sphsamp
