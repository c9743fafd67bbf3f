#include "sphsamp/sphere.hpp"

#include <algorithm>
#include <cstdio>
#include <limits>
#include <numeric>
#include <cmath>
#include <fstream>
#include <iomanip>
#include <istream>
#include <numbers>
#include <ostream>
#include <random>
#include <sstream>

#include "sphsamp/error.hpp"
#include "sphsamp/special_fn.hpp"

namespace sphsamp {

using std::numbers::pi;

Cap::Cap(SpherePoint c, double t) : center(std::move(c)), theta(t) {
  if (!(t > 0.0) || t > pi) throw InputError("Cap: radius must lie in (0, pi]");
}

double geodesic_distance(const SpherePoint& u, const SpherePoint& v) {
  if (u.dim() != v.dim()) throw InputError("geodesic_distance: dimension mismatch");
  // chord form keeps full relative accuracy for nearby points
  double c2 = 0.0;
  for (int i = 0; i <= u.dim(); ++i) c2 += (u[i] - v[i]) * (u[i] - v[i]);
  return 2.0 * std::asin(std::min(1.0, 0.5 * std::sqrt(c2)));
}

double surface_area(int d) {
  if (d < 0) throw DomainError("surface_area: negative dimension");
  return 2.0 * std::pow(pi, (d + 1) / 2.0) / gamma_fn((d + 1) / 2.0);
}

double cap_area(int d, double theta) {
  if (d < 1) throw DomainError("cap_area: d must be >= 1");
  if (theta < 0.0 || theta > pi) throw DomainError("cap_area: theta outside [0, pi]");
  if (theta == 0.0) return 0.0;
  if (d == 1) return 2.0 * theta;
  // sin^{d-1} is entire; 40 nodes reach rounding level on [0, pi] for d <= 8.
  static const QuadratureRule gl = gauss_legendre(40);
  const double half = 0.5 * theta;
  double acc = 0.0;
  for (std::size_t i = 0; i < gl.size(); ++i)
    acc += gl.weights[i] * std::pow(std::sin(half * (gl.nodes[i] + 1.0)), d - 1);
  return surface_area(d - 1) * half * acc;
}

QuadratureRule zonal_rule(int d, int n) {
  if (d < 1) throw DomainError("zonal_rule: d must be >= 1");
  const double lam = (d - 2) / 2.0;
  return golub_welsch(n, JacobiIndex(lam, lam));
}

namespace {

QuadratureRule product_rule(double t_lo, int l_exact) {
  const int n_t = (l_exact + 2) / 2 + 1;  // ceil((l+1)/2) + 1
  const int n_phi = l_exact + 1;
  const QuadratureRule gl = gauss_legendre(n_t, t_lo, 1.0);
  QuadratureRule rule;
  rule.points.reserve(static_cast<std::size_t>(n_t) * n_phi);
  rule.weights.reserve(rule.points.capacity());
  const double dphi = 2.0 * pi / n_phi;
  for (std::size_t i = 0; i < gl.size(); ++i) {
    const double t = gl.nodes[i];
    const double s = std::sqrt(std::max(0.0, 1.0 - t * t));
    for (int k = 0; k < n_phi; ++k) {
      const double phi = k * dphi;
      rule.points.emplace_back(std::vector<double>{s * std::cos(phi), s * std::sin(phi), t});
      rule.weights.push_back(gl.weights[i] * dphi);
    }
  }
  rule.exactness_degree = l_exact;
  return rule;
}

}  // namespace

QuadratureRule sphere_rule_s2(int l_exact) {
  if (l_exact < 0) throw DomainError("sphere_rule_s2: negative exactness");
  return product_rule(-1.0, l_exact);
}

QuadratureRule cap_rule_s2(const Cap& cap, int l_exact) {
  if (cap.center.dim() != 2) throw UnsupportedDimension("cap_rule_s2: requires S^2");
  if (l_exact < 0) throw DomainError("cap_rule_s2: negative exactness");
  QuadratureRule rule = product_rule(std::cos(cap.theta), l_exact);
  const Matrix q = reflection_to(cap.center);
  rule.points = apply_map(q, rule.points);
  return rule;
}

Matrix reflection_to(const SpherePoint& target) {
  const std::size_t n = target.coords().size();
  Matrix q = Matrix::identity(n);
  std::vector<double> w(target.coords().begin(), target.coords().end());
  w.back() -= 1.0;  // w = target - N
  const double ww = std::inner_product(w.begin(), w.end(), w.begin(), 0.0);
  if (ww < 1e-30) return q;
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) q(i, j) -= 2.0 * w[i] * w[j] / ww;
  return q;
}

Matrix random_rotation(int d, unsigned long long seed) {
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> gauss;
  auto householder = [&] {
    std::vector<double> v(static_cast<std::size_t>(d) + 1);
    for (double& x : v) x = gauss(rng);
    const double vv = std::inner_product(v.begin(), v.end(), v.begin(), 0.0);
    Matrix h = Matrix::identity(v.size());
    for (std::size_t i = 0; i < v.size(); ++i)
      for (std::size_t j = 0; j < v.size(); ++j) h(i, j) -= 2.0 * v[i] * v[j] / vv;
    return h;
  };
  const Matrix h1 = householder();
  const Matrix h2 = householder();
  return h1 * h2;
}

SpherePoint apply_map(const Matrix& q, const SpherePoint& u) {
  return SpherePoint(q * u.coords());
}

std::vector<SpherePoint> apply_map(const Matrix& q, const std::vector<SpherePoint>& pts) {
  std::vector<SpherePoint> out;
  out.reserve(pts.size());
  for (const auto& p : pts) out.push_back(apply_map(q, p));
  return out;
}

double zonal_integral_pieces(const std::function<double(double)>& f, int d,
                             std::vector<double> t_breaks, int nodes_per_piece,
                             double theta_lo, double theta_hi) {
  if (d < 1) throw DomainError("zonal_integral_pieces: d must be >= 1");
  if (theta_hi < 0.0) theta_hi = pi;
  std::vector<double> cuts{theta_lo, theta_hi};
  for (double t : t_breaks) {
    const double th = std::acos(std::clamp(t, -1.0, 1.0));
    if (th > theta_lo && th < theta_hi) cuts.push_back(th);
  }
  std::sort(cuts.begin(), cuts.end());
  const QuadratureRule gl = gauss_legendre(nodes_per_piece);
  double acc = 0.0;
  for (std::size_t p = 0; p + 1 < cuts.size(); ++p) {
    const double a = cuts[p];
    const double b = cuts[p + 1];
    if (b <= a) continue;
    const double half = 0.5 * (b - a);
    const double mid = 0.5 * (b + a);
    double piece = 0.0;
    for (std::size_t i = 0; i < gl.size(); ++i) {
      const double th = mid + half * gl.nodes[i];
      piece += gl.weights[i] * f(std::cos(th)) * std::pow(std::sin(th), d - 1);
    }
    acc += half * piece;
  }
  return (d == 1 ? 2.0 : surface_area(d - 1)) * acc;
}

ConvergedIntegral zonal_integral_converged(const std::function<double(double)>& f, int d,
                                           const std::vector<double>& t_breaks,
                                           int start_nodes, double tol, int max_doublings) {
  int n = start_nodes;
  double prev = zonal_integral_pieces(f, d, t_breaks, n);
  double change = std::numeric_limits<double>::infinity();
  for (int k = 0; k < max_doublings; ++k) {
    n *= 2;
    const double next = zonal_integral_pieces(f, d, t_breaks, n);
    change = std::abs(next - prev) / std::max(std::abs(next), 1e-300);
    prev = next;
    if (change <= tol) return {next, n, change};
  }
  throw PrecisionError("zonal integral did not converge: relative change " +
                       std::to_string(change) + " with " + std::to_string(n) +
                       " nodes per piece");
}

void write_points(std::ostream& os, const std::vector<SpherePoint>& pts, int d, int L) {
  os << "# d=" << d << " L=" << L << " m=" << pts.size() << '\n';
  os << std::setprecision(17);
  for (const auto& p : pts) {
    if (p.dim() != d) throw InputError("write_points: point dimension differs from header");
    auto c = p.coords();
    for (std::size_t i = 0; i < c.size(); ++i) os << (i ? " " : "") << c[i];
    os << '\n';
  }
}

void write_points(const std::string& path, const std::vector<SpherePoint>& pts, int d, int L) {
  std::ofstream os(path);
  if (!os) throw InputError("cannot open " + path + " for writing");
  write_points(os, pts, d, L);
}

PointFile read_points(std::istream& is) {
  PointFile out;
  std::string line;
  if (!std::getline(is, line)) throw InputError("point file: missing header");
  long m = -1;
  if (std::sscanf(line.c_str(), "# d=%d L=%d m=%ld", &out.d, &out.L, &m) != 3 || out.d < 1 ||
      m < 0)
    throw InputError("point file: malformed header '" + line + "'");
  out.points.reserve(static_cast<std::size_t>(m));
  while (std::getline(is, line)) {
    if (line.empty() || line[0] == '#') continue;
    std::istringstream ls(line);
    std::vector<double> c;
    double x;
    while (ls >> x) c.push_back(x);
    if (c.size() != static_cast<std::size_t>(out.d) + 1)
      throw InputError("point file: expected " + std::to_string(out.d + 1) +
                       " coordinates, got " + std::to_string(c.size()));
    out.points.emplace_back(std::move(c));
  }
  if (out.points.size() != static_cast<std::size_t>(m))
    throw InputError("point file: header announces " + std::to_string(m) + " points, found " +
                     std::to_string(out.points.size()));
  return out;
}

PointFile read_points(const std::string& path) {
  std::ifstream is(path);
  if (!is) throw InputError("cannot open " + path);
  return read_points(is);
}

}  // namespace sphsamp
