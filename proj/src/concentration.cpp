#include "sphsamp/concentration.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <numbers>
#include <string>

#include "sphsamp/error.hpp"
#include "sphsamp/families.hpp"
#include "sphsamp/harmonic.hpp"
#include "sphsamp/parallel.hpp"
#include "sphsamp/special_fn.hpp"
#include "sphsamp/sphere.hpp"

namespace sphsamp {

using std::numbers::pi;

SymMatrix CapGram::dense() const {
  const std::size_t n = static_cast<std::size_t>(L + 1) * (L + 1);
  Matrix g(n, n);
  for (const Block& b : blocks) {
    for (int sector = 0; sector < b.multiplicity; ++sector) {
      const bool is_sin = sector == 1;
      for (int i = b.m; i <= L; ++i)
        for (int j = b.m; j <= L; ++j)
          g(HarmonicBasis::index_of(i, b.m, is_sin), HarmonicBasis::index_of(j, b.m, is_sin)) =
              b.entries(i - b.m, j - b.m);
    }
  }
  return SymMatrix(std::move(g));
}

double CapGram::trace() const {
  double t = 0.0;
  for (const Block& b : blocks)
    for (std::size_t i = 0; i < b.entries.rows(); ++i) t += b.multiplicity * b.entries(i, i);
  return t;
}

double CapGram::frobenius_sq() const {
  double t = 0.0;
  for (const Block& b : blocks) {
    const double f = b.entries.frobenius_norm();
    t += b.multiplicity * f * f;
  }
  return t;
}

CapGram cap_gram_s2(int L, double theta) {
  if (L < 0) throw DomainError("cap_gram_s2: negative degree");
  if (!(theta > 0.0) || theta > pi) throw InputError("cap_gram_s2: theta must lie in (0, pi]");
  // integrands q_{l m} q_{l' m} are polynomials in t of degree <= 2L
  const QuadratureRule gl = gauss_legendre(L + 2, std::cos(theta), 1.0);
  std::vector<std::vector<double>> q(gl.size());
  for (std::size_t i = 0; i < gl.size(); ++i) q[i] = normalized_legendre(L, gl.nodes[i]);

  CapGram out{L, theta, {}};
  out.blocks.resize(static_cast<std::size_t>(L) + 1);
  parallel_for(out.blocks.size(), [&](std::size_t mi) {
    const int m = static_cast<int>(mi);
    const int n = L + 1 - m;
    CapGram::Block b{m, m == 0 ? 1 : 2, Matrix(n, n)};
    for (int a = 0; a < n; ++a)
      for (int c = a; c < n; ++c) {
        double acc = 0.0;
        for (std::size_t i = 0; i < gl.size(); ++i)
          acc += gl.weights[i] * q[i][legendre_slot(m + a, m)] * q[i][legendre_slot(m + c, m)];
        b.entries(a, c) = b.entries(c, a) = 2.0 * pi * acc;
      }
    out.blocks[mi] = std::move(b);
  });
  return out;
}

SpectrumReport spectrum(int L, double value, RadiusMode mode) {
  SpectrumReport r;
  r.L = L;
  if (mode == RadiusMode::kAlpha) {
    r.alpha = value;
    r.theta = value / (L + 1);
  } else {
    r.theta = value;
    r.alpha = value * (L + 1);
  }
  const CapGram g = cap_gram_s2(L, r.theta);
  r.trace = g.trace();
  r.trace_sq = g.frobenius_sq();

  std::vector<std::vector<double>> block_values(g.blocks.size());
  parallel_for(g.blocks.size(), [&](std::size_t i) {
    block_values[i] = sym_eigen(SymMatrix(g.blocks[i].entries), false).eigenvalues;
  });
  r.eigenvalues.reserve(static_cast<std::size_t>(dim_pi(2, L)));
  for (std::size_t i = 0; i < g.blocks.size(); ++i)
    for (int k = 0; k < g.blocks[i].multiplicity; ++k)
      r.eigenvalues.insert(r.eigenvalues.end(), block_values[i].begin(), block_values[i].end());
  std::sort(r.eigenvalues.begin(), r.eigenvalues.end(), std::greater<>());

  for (double& lam : r.eigenvalues) {
    if (lam < -1e-10 || lam > 1.0 + 1e-10)
      throw NumericalError("spectrum: eigenvalue " + std::to_string(lam) + " outside [0, 1]");
    if (lam < 0.0 || lam > 1.0) {
      lam = std::clamp(lam, 0.0, 1.0);
      r.clamped = true;
    }
  }
  return r;
}

double trace_closed_form(int d, int L, double alpha) {
  const double theta = alpha / (L + 1);
  if (!(theta > 0.0) || theta > pi) throw DomainError("trace_closed_form: radius outside (0, pi]");
  return static_cast<double>(dim_pi(d, L)) * cap_area(d, theta) / surface_area(d);
}

namespace {

double nested_trace_square(int d, int L, double theta_a, int n) {
  const double lam = (d - 2) / 2.0;
  const JacobiIndex idx(1.0 + lam, lam);
  const double kscale = kernel_constant(d, L) / surface_area(d);
  const double s_exp = (d - 3) / 2.0;
  const QuadratureRule srule = golub_welsch(L + 1, JacobiIndex(s_exp, s_exp));
  const QuadratureRule gl = gauss_legendre(n, 0.0, theta_a);

  std::vector<double> cs(n), sn(n), w(n);
  for (int i = 0; i < n; ++i) {
    cs[i] = std::cos(gl.nodes[i]);
    sn[i] = std::sin(gl.nodes[i]);
    w[i] = gl.weights[i] * std::pow(sn[i], d - 1);
  }
  std::vector<double> row(n, 0.0);
  parallel_for(static_cast<std::size_t>(n), [&](std::size_t i) {
    double acc = 0.0;
    for (int j = static_cast<int>(i); j < n; ++j) {
      double inner = 0.0;
      for (std::size_t k = 0; k < srule.size(); ++k) {
        const double t = std::clamp(cs[i] * cs[j] + sn[i] * sn[j] * srule.nodes[k], -1.0, 1.0);
        const double kv = jacobi_eval(idx, L, t);
        inner += srule.weights[k] * kv * kv;
      }
      acc += (j == static_cast<int>(i) ? 1.0 : 2.0) * w[j] * inner;
    }
    row[i] = w[i] * acc;
  });
  double total = 0.0;
  for (double v : row) total += v;
  return surface_area(d - 1) * surface_area(d - 2) * kscale * kscale * total;
}

}  // namespace

TraceSquare trace_square(int d, int L, double alpha, TraceSquareMethod method) {
  const double theta = alpha / (L + 1);
  if (!(theta > 0.0) || theta > pi) throw DomainError("trace_square: radius outside (0, pi]");
  if (method == TraceSquareMethod::kAuto)
    method = d == 2 ? TraceSquareMethod::kSpectral : TraceSquareMethod::kNestedQuadrature;

  if (method == TraceSquareMethod::kSpectral) {
    if (d != 2) throw UnsupportedDimension("trace_square: spectral route needs d = 2");
    return {cap_gram_s2(L, theta).frobenius_sq(), method, 0, 0.0};
  }
  if (d < 2) throw UnsupportedDimension("trace_square: nested quadrature needs d >= 2");
  int n = 16;
  double prev = nested_trace_square(d, L, theta, n);
  double change = 1.0;
  while (n < 512) {
    n *= 2;
    const double next = nested_trace_square(d, L, theta, n);
    change = std::abs(next - prev) / std::abs(next);
    prev = next;
    if (change <= 1e-10) break;
  }
  if (change > 1e-6)
    throw PrecisionError("trace_square: nested quadrature relative change " +
                         std::to_string(change) + " at " + std::to_string(n) + " nodes");
  return {prev, method, n, change};
}

PlungeCount plunge_count(const SpectrumReport& report, double gamma) {
  if (!(gamma > 0.0 && gamma < 1.0)) throw DomainError("plunge_count: gamma must lie in (0, 1)");
  long count = 0;
  for (double lam : report.eigenvalues)
    if (lam > gamma) ++count;
  const double tr = report.trace;
  const double tr2 = report.trace_sq;
  return {count, tr - (tr - tr2) / (1.0 - gamma), tr / gamma};
}

TraceDeficitFit trace_deficit_slope(int d, int L, const std::vector<double>& alphas) {
  if (alphas.size() < 4) throw InputError("trace_deficit_slope: need at least 4 alphas");
  const auto [lo, hi] = std::minmax_element(alphas.begin(), alphas.end());
  if (!(*lo > 0.0) || *hi / *lo < 4.0)
    throw InputError("trace_deficit_slope: alphas must span a factor >= 4");
  TraceDeficitFit fit{0.0, 0.0, {}};
  std::vector<double> lx, ly;
  for (double a : alphas) {
    if (a / (L + 1) > pi / 2 + 1e-15)
      throw InputError("trace_deficit_slope: alpha/(L+1) exceeds pi/2");
    TraceDeficitRow row{a, 0.0, 0.0, 0.0, false};
    if (d == 2) {
      const CapGram g = cap_gram_s2(L, a / (L + 1));
      row.trace = g.trace();
      row.trace_sq = g.frobenius_sq();
    } else {
      row.trace = trace_closed_form(d, L, a);
      row.trace_sq = trace_square(d, L, a, TraceSquareMethod::kNestedQuadrature).value;
    }
    row.deficit = row.trace - row.trace_sq;
    row.excluded = !(row.deficit > 0.0);
    if (!row.excluded) {
      lx.push_back(std::log(a));
      ly.push_back(std::log(row.deficit));
    }
    fit.rows.push_back(row);
  }
  if (lx.size() < 2) throw NumericalError("trace_deficit_slope: fewer than two usable alphas");
  const LineFit lf = fit_line(lx, ly);
  fit.slope = lf.slope;
  fit.intercept = lf.intercept;
  return fit;
}

LandauComparison landau_compare(const std::vector<SpherePoint>& points, int L, double alpha,
                                double gamma, double delta, double eps) {
  if (!(eps > 0.0)) throw InputError("landau_compare: eps must be positive");
  if (alpha <= eps) throw InputError("landau_compare: alpha must exceed eps for the A_L^- count");
  for (const auto& p : points)
    if (p.dim() != 2) throw UnsupportedDimension("landau_compare: requires points on S^2");

  LandauComparison r{};
  r.L = L;
  r.alpha = alpha;
  r.eps = eps;
  r.gamma = gamma;
  r.delta = delta;
  const SpherePoint north = SpherePoint::north(2);
  r.n_plus = count_in_cap(points, north, (alpha + eps) / (L + 1));
  r.n_minus = count_in_cap(points, north, (alpha - eps) / (L + 1));
  const Separation sep = separation_constant(points, L);
  r.measured_separation = sep.value;
  r.separation_ok = sep.degenerate || sep.value >= eps * (1.0 - 1e-12);

  const SpectrumReport s = spectrum(L, alpha, RadiusMode::kAlpha);
  r.lambda_1 = s.eigenvalues.front();
  if (!r.separation_ok) return r;

  const auto n_eig = static_cast<long>(s.eigenvalues.size());
  if (r.n_plus + 1 <= n_eig) {
    r.lambda_upper = s.eigenvalues[static_cast<std::size_t>(r.n_plus)];
    r.upper_holds = *r.lambda_upper <= gamma;
  }
  if (r.n_minus - 1 >= 1 && r.n_minus - 1 <= n_eig) {
    r.lambda_lower = s.eigenvalues[static_cast<std::size_t>(r.n_minus - 2)];
    r.lower_holds = *r.lambda_lower >= delta;
  }
  return r;
}

}  // namespace sphsamp
