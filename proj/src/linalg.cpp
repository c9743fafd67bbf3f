#include "sphsamp/linalg.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <string>

#include "sphsamp/error.hpp"

namespace sphsamp {

Matrix Matrix::identity(std::size_t n) {
  Matrix m(n, n);
  for (std::size_t i = 0; i < n; ++i) m(i, i) = 1.0;
  return m;
}

Matrix Matrix::transpose() const {
  Matrix t(cols_, rows_);
  for (std::size_t i = 0; i < rows_; ++i)
    for (std::size_t j = 0; j < cols_; ++j) t(j, i) = (*this)(i, j);
  return t;
}

double Matrix::frobenius_norm() const { return norm2(data_); }

double Matrix::max_abs() const {
  double m = 0.0;
  for (double x : data_) m = std::max(m, std::abs(x));
  return m;
}

Matrix operator*(const Matrix& a, const Matrix& b) {
  if (a.cols() != b.rows()) throw InputError("matrix product: shape mismatch");
  Matrix c(a.rows(), b.cols());
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t k = 0; k < a.cols(); ++k) {
      const double aik = a(i, k);
      if (aik == 0.0) continue;
      auto brow = b.row(k);
      auto crow = c.row(i);
      for (std::size_t j = 0; j < b.cols(); ++j) crow[j] += aik * brow[j];
    }
  return c;
}

std::vector<double> operator*(const Matrix& a, std::span<const double> x) {
  if (a.cols() != x.size()) throw InputError("matrix-vector product: shape mismatch");
  std::vector<double> y(a.rows());
  for (std::size_t i = 0; i < a.rows(); ++i) {
    auto r = a.row(i);
    y[i] = std::inner_product(r.begin(), r.end(), x.begin(), 0.0);
  }
  return y;
}

Matrix gram_cols(const Matrix& a) {
  const std::size_t n = a.cols();
  Matrix g(n, n);
  for (std::size_t r = 0; r < a.rows(); ++r) {
    auto row = a.row(r);
    for (std::size_t i = 0; i < n; ++i) {
      const double ri = row[i];
      if (ri == 0.0) continue;
      auto grow = g.row(i);
      for (std::size_t j = i; j < n; ++j) grow[j] += ri * row[j];
    }
  }
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < i; ++j) g(i, j) = g(j, i);
  return g;
}

Matrix gram_rows(const Matrix& a) {
  const std::size_t m = a.rows();
  Matrix g(m, m);
  for (std::size_t i = 0; i < m; ++i) {
    auto ri = a.row(i);
    for (std::size_t j = i; j < m; ++j) {
      auto rj = a.row(j);
      g(i, j) = g(j, i) = std::inner_product(ri.begin(), ri.end(), rj.begin(), 0.0);
    }
  }
  return g;
}

double norm2(std::span<const double> x) {
  // scaled accumulation keeps tiny and huge entries representable
  double scale = 0.0;
  double ssq = 1.0;
  for (double v : x) {
    if (v == 0.0) continue;
    const double a = std::abs(v);
    if (scale < a) {
      ssq = 1.0 + ssq * (scale / a) * (scale / a);
      scale = a;
    } else {
      ssq += (a / scale) * (a / scale);
    }
  }
  return scale * std::sqrt(ssq);
}

LineFit fit_line(std::span<const double> x, std::span<const double> y) {
  if (x.size() != y.size() || x.size() < 2) throw InputError("fit_line: need >= 2 paired values");
  const double n = static_cast<double>(x.size());
  const double mx = std::accumulate(x.begin(), x.end(), 0.0) / n;
  const double my = std::accumulate(y.begin(), y.end(), 0.0) / n;
  double sxx = 0.0, sxy = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    sxx += (x[i] - mx) * (x[i] - mx);
    sxy += (x[i] - mx) * (y[i] - my);
  }
  if (sxx == 0.0) throw InputError("fit_line: abscissae are all equal");
  const double slope = sxy / sxx;
  return {slope, my - slope * mx};
}

SymMatrix::SymMatrix(Matrix a) : a_(std::move(a)) {
  if (a_.rows() != a_.cols()) throw InputError("SymMatrix: matrix is not square");
  if (a_.rows() == 0) throw InputError("SymMatrix: empty matrix");
  const double tol = 1e-12 * a_.max_abs();
  for (std::size_t i = 0; i < a_.rows(); ++i)
    for (std::size_t j = 0; j < i; ++j) {
      if (!std::isfinite(a_(i, j)) || !std::isfinite(a_(j, i)))
        throw InputError("SymMatrix: non-finite entry");
      if (std::abs(a_(i, j) - a_(j, i)) > tol) throw InputError("SymMatrix: not symmetric");
    }
  for (std::size_t i = 0; i < a_.rows(); ++i)
    if (!std::isfinite(a_(i, i))) throw InputError("SymMatrix: non-finite entry");
}

namespace {

constexpr int kMaxSweeps = 30;

// Householder reduction to tridiagonal form. On return v holds the
// accumulated orthogonal transform when `accumulate` is set.
void householder_tridiagonalize(Matrix& v, std::vector<double>& d, std::vector<double>& e,
                                bool accumulate) {
  const std::size_t n = v.rows();
  d.assign(n, 0.0);
  e.assign(n, 0.0);
  for (std::size_t j = 0; j < n; ++j) d[j] = v(n - 1, j);

  for (std::size_t i = n - 1; i > 0; --i) {
    double scale = 0.0;
    double h = 0.0;
    for (std::size_t k = 0; k < i; ++k) scale += std::abs(d[k]);
    if (scale == 0.0) {
      e[i] = d[i - 1];
      for (std::size_t j = 0; j < i; ++j) {
        d[j] = v(i - 1, j);
        v(i, j) = 0.0;
        v(j, i) = 0.0;
      }
    } else {
      for (std::size_t k = 0; k < i; ++k) {
        d[k] /= scale;
        h += d[k] * d[k];
      }
      double f = d[i - 1];
      double g = std::sqrt(h);
      if (f > 0) g = -g;
      e[i] = scale * g;
      h -= f * g;
      d[i - 1] = f - g;
      for (std::size_t j = 0; j < i; ++j) e[j] = 0.0;
      for (std::size_t j = 0; j < i; ++j) {
        f = d[j];
        v(j, i) = f;
        g = e[j] + v(j, j) * f;
        for (std::size_t k = j + 1; k <= i - 1; ++k) {
          g += v(k, j) * d[k];
          e[k] += v(k, j) * f;
        }
        e[j] = g;
      }
      f = 0.0;
      for (std::size_t j = 0; j < i; ++j) {
        e[j] /= h;
        f += e[j] * d[j];
      }
      const double hh = f / (h + h);
      for (std::size_t j = 0; j < i; ++j) e[j] -= hh * d[j];
      for (std::size_t j = 0; j < i; ++j) {
        f = d[j];
        g = e[j];
        for (std::size_t k = j; k <= i - 1; ++k) v(k, j) -= (f * e[k] + g * d[k]);
        d[j] = v(i - 1, j);
        v(i, j) = 0.0;
      }
    }
    d[i] = h;
  }

  if (!accumulate) {
    for (std::size_t j = 0; j < n; ++j) d[j] = v(j, j);
    e[0] = 0.0;
    return;
  }

  for (std::size_t i = 0; i + 1 < n; ++i) {
    v(n - 1, i) = v(i, i);
    v(i, i) = 1.0;
    const double h = d[i + 1];
    if (h != 0.0) {
      for (std::size_t k = 0; k <= i; ++k) d[k] = v(k, i + 1) / h;
      for (std::size_t j = 0; j <= i; ++j) {
        double g = 0.0;
        for (std::size_t k = 0; k <= i; ++k) g += v(k, i + 1) * v(k, j);
        for (std::size_t k = 0; k <= i; ++k) v(k, j) -= g * d[k];
      }
    }
    for (std::size_t k = 0; k <= i; ++k) v(k, i + 1) = 0.0;
  }
  for (std::size_t j = 0; j < n; ++j) {
    d[j] = v(n - 1, j);
    v(n - 1, j) = 0.0;
  }
  v(n - 1, n - 1) = 1.0;
  e[0] = 0.0;
}

}  // namespace

void tridiagonal_ql(std::vector<double>& d, std::vector<double>& e, Matrix* z) {
  const std::size_t n = d.size();
  if (e.size() != n) throw InputError("tridiagonal_ql: diag/offdiag size mismatch");
  if (z && z->cols() != n) throw InputError("tridiagonal_ql: z has wrong column count");
  if (n == 0) return;
  const std::size_t zr = z ? z->rows() : 0;

  for (std::size_t i = 1; i < n; ++i) e[i - 1] = e[i];
  e[n - 1] = 0.0;

  double f = 0.0;
  double tst1 = 0.0;
  const double eps = std::ldexp(1.0, -52);
  for (std::size_t l = 0; l < n; ++l) {
    tst1 = std::max(tst1, std::abs(d[l]) + std::abs(e[l]));
    std::size_t m = l;
    while (m < n) {
      if (std::abs(e[m]) <= eps * tst1) break;
      ++m;
    }
    if (m > l) {
      int iter = 0;
      do {
        if (++iter > kMaxSweeps)
          throw NumericalError("tridiagonal_ql: no convergence after " +
                               std::to_string(kMaxSweeps) + " sweeps at index " +
                               std::to_string(l) + ", |offdiag| = " +
                               std::to_string(std::abs(e[l])));
        double g = d[l];
        double p = (d[l + 1] - g) / (2.0 * e[l]);
        double r = std::hypot(p, 1.0);
        if (p < 0) r = -r;
        d[l] = e[l] / (p + r);
        d[l + 1] = e[l] * (p + r);
        const double dl1 = d[l + 1];
        double h = g - d[l];
        for (std::size_t i = l + 2; i < n; ++i) d[i] -= h;
        f += h;

        p = d[m];
        double c = 1.0, c2 = 1.0, c3 = 1.0;
        const double el1 = e[l + 1];
        double s = 0.0, s2 = 0.0;
        for (std::size_t ii = m; ii-- > l;) {
          c3 = c2;
          c2 = c;
          s2 = s;
          g = c * e[ii];
          h = c * p;
          r = std::hypot(p, e[ii]);
          e[ii + 1] = s * r;
          s = e[ii] / r;
          c = p / r;
          p = c * d[ii] - s * g;
          d[ii + 1] = h + s * (c * g + s * d[ii]);
          for (std::size_t k = 0; k < zr; ++k) {
            h = (*z)(k, ii + 1);
            (*z)(k, ii + 1) = s * (*z)(k, ii) + c * h;
            (*z)(k, ii) = c * (*z)(k, ii) - s * h;
          }
        }
        p = -s * s2 * c3 * el1 * e[l] / dl1;
        e[l] = s * p;
        d[l] = c * p;
      } while (std::abs(e[l]) > eps * tst1);
    }
    d[l] += f;
    e[l] = 0.0;
  }

  // selection sort keeps z's columns paired with their eigenvalues
  for (std::size_t i = 0; i + 1 < n; ++i) {
    std::size_t k = i;
    double p = d[i];
    for (std::size_t j = i + 1; j < n; ++j)
      if (d[j] < p) {
        k = j;
        p = d[j];
      }
    if (k != i) {
      d[k] = d[i];
      d[i] = p;
      for (std::size_t r = 0; r < zr; ++r) std::swap((*z)(r, i), (*z)(r, k));
    }
  }
}

EigenDecomposition sym_eigen(const SymMatrix& a, bool want_vectors) {
  Matrix v = a.matrix();
  std::vector<double> d, e;
  householder_tridiagonalize(v, d, e, want_vectors);
  EigenDecomposition out;
  if (want_vectors) {
    tridiagonal_ql(d, e, &v);
    out.eigenvectors = std::move(v);
  } else {
    tridiagonal_ql(d, e, nullptr);
  }
  out.eigenvalues = std::move(d);
  return out;
}

namespace {

// Applies the pseudo-inverse of the Gram g (given its eigendecomposition) to x.
std::vector<double> apply_pinv(const EigenDecomposition& eig, std::span<const double> x,
                               double cutoff) {
  const std::size_t n = eig.eigenvalues.size();
  std::vector<double> y(n, 0.0);
  const Matrix& q = eig.eigenvectors;
  for (std::size_t k = 0; k < n; ++k) {
    const double lam = eig.eigenvalues[k];
    if (lam <= cutoff) continue;
    double proj = 0.0;
    for (std::size_t i = 0; i < n; ++i) proj += q(i, k) * x[i];
    proj /= lam;
    for (std::size_t i = 0; i < n; ++i) y[i] += proj * q(i, k);
  }
  return y;
}

std::vector<double> transpose_times(const Matrix& e, std::span<const double> y) {
  std::vector<double> out(e.cols(), 0.0);
  for (std::size_t r = 0; r < e.rows(); ++r) {
    auto row = e.row(r);
    for (std::size_t j = 0; j < e.cols(); ++j) out[j] += row[j] * y[r];
  }
  return out;
}

}  // namespace

LstsqResult min_norm_lstsq(const Matrix& e, std::span<const double> v) {
  if (e.rows() != v.size()) throw InputError("min_norm_lstsq: row count != data length");
  if (e.rows() == 0 || e.cols() == 0) throw InputError("min_norm_lstsq: empty system");
  const bool wide = e.rows() <= e.cols();
  const EigenDecomposition eig = sym_eigen(SymMatrix(wide ? gram_rows(e) : gram_cols(e)), true);
  const double lam_max = std::max(0.0, eig.eigenvalues.back());
  const double cutoff = 1e-12 * lam_max;

  LstsqResult out;
  double lam_min_kept = lam_max;
  for (double lam : eig.eigenvalues)
    if (lam > cutoff) {
      ++out.rank;
      lam_min_kept = std::min(lam_min_kept, lam);
    }
  out.condition = out.rank == 0 ? std::numeric_limits<double>::infinity()
                                : std::sqrt(lam_max / lam_min_kept);

  auto solve = [&](std::span<const double> rhs) {
    if (wide) return transpose_times(e, apply_pinv(eig, rhs, cutoff));
    const std::vector<double> etr = transpose_times(e, rhs);
    return apply_pinv(eig, etr, cutoff);
  };

  out.c = solve(v);
  // one step of refinement on the residual
  std::vector<double> r = e * std::span<const double>(out.c);
  for (std::size_t i = 0; i < r.size(); ++i) r[i] = v[i] - r[i];
  const std::vector<double> dc = solve(r);
  for (std::size_t j = 0; j < out.c.size(); ++j) out.c[j] += dc[j];

  r = e * std::span<const double>(out.c);
  for (std::size_t i = 0; i < r.size(); ++i) r[i] -= v[i];
  out.residual = norm2(r);
  return out;
}

QuadratureRule golub_welsch(int n, const JacobiIndex& idx) {
  if (n < 1) throw DomainError("golub_welsch: n must be >= 1");
  const double a = idx.alpha;
  const double b = idx.beta;
  const double ab = a + b;
  std::vector<double> diag(n), off(n, 0.0);
  for (int k = 0; k < n; ++k) {
    const double s = 2.0 * k + ab;
    if (k == 0) {
      diag[0] = (b - a) / (ab + 2.0);
    } else {
      diag[k] = (b * b - a * a) / (s * (s + 2.0));
    }
    if (k == 1) {
      // (1 + a + b) cancels; keeps alpha + beta = -1 finite
      off[1] = std::sqrt(4.0 * (1.0 + a) * (1.0 + b) / ((2.0 + ab) * (2.0 + ab) * (3.0 + ab)));
    } else if (k >= 2) {
      const double num = 4.0 * k * (k + a) * (k + b) * (k + ab);
      const double den = s * s * (s + 1.0) * (s - 1.0);
      off[k] = std::sqrt(num / den);
    }
  }
  Matrix z(1, n);
  z(0, 0) = 1.0;
  tridiagonal_ql(diag, off, &z);

  const double mu0 = std::exp((ab + 1.0) * std::log(2.0) + std::lgamma(a + 1.0) +
                              std::lgamma(b + 1.0) - std::lgamma(ab + 2.0));
  QuadratureRule rule;
  rule.nodes = std::move(diag);
  rule.weights.resize(n);
  for (int k = 0; k < n; ++k) rule.weights[k] = mu0 * z(0, k) * z(0, k);
  rule.exactness_degree = 2 * n - 1;
  return rule;
}

QuadratureRule gauss_legendre(int n, double a, double b) {
  QuadratureRule rule = golub_welsch(n, JacobiIndex(0.0, 0.0));
  const double half = 0.5 * (b - a);
  const double mid = 0.5 * (b + a);
  for (std::size_t i = 0; i < rule.size(); ++i) {
    rule.nodes[i] = mid + half * rule.nodes[i];
    rule.weights[i] *= half;
  }
  return rule;
}

}  // namespace sphsamp
