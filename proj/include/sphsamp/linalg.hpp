#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include "sphsamp/quadrature.hpp"
#include "sphsamp/special_fn.hpp"

namespace sphsamp {

/// Dense row-major real matrix.
class Matrix {
 public:
  Matrix() = default;
  Matrix(std::size_t rows, std::size_t cols, double fill = 0.0)
      : rows_(rows), cols_(cols), data_(rows * cols, fill) {}

  static Matrix identity(std::size_t n);

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }

  double& operator()(std::size_t i, std::size_t j) { return data_[i * cols_ + j]; }
  double operator()(std::size_t i, std::size_t j) const { return data_[i * cols_ + j]; }

  std::span<double> row(std::size_t i) { return {data_.data() + i * cols_, cols_}; }
  std::span<const double> row(std::size_t i) const {
    return {data_.data() + i * cols_, cols_};
  }
  std::span<const double> data() const { return data_; }

  Matrix transpose() const;
  double frobenius_norm() const;
  double max_abs() const;

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<double> data_;
};

Matrix operator*(const Matrix& a, const Matrix& b);
std::vector<double> operator*(const Matrix& a, std::span<const double> x);

/// A^T A (n x n) and A A^T (m x m) without forming the transpose.
Matrix gram_cols(const Matrix& a);
Matrix gram_rows(const Matrix& a);

double norm2(std::span<const double> x);

/// Ordinary least-squares line y = slope * x + intercept.
struct LineFit {
  double slope;
  double intercept;
};
LineFit fit_line(std::span<const double> x, std::span<const double> y);

/// Square matrix with |A_ij - A_ji| <= 1e-12 max|A|, checked on construction.
class SymMatrix {
 public:
  explicit SymMatrix(Matrix a);

  std::size_t order() const { return a_.rows(); }
  const Matrix& matrix() const { return a_; }
  double operator()(std::size_t i, std::size_t j) const { return a_(i, j); }

 private:
  Matrix a_;
};

struct EigenDecomposition {
  std::vector<double> eigenvalues;  // ascending
  Matrix eigenvectors;              // column k pairs with eigenvalues[k]; empty if not requested
};

/// Householder tridiagonalization followed by implicit-shift QL, at most 30
/// sweeps per eigenvalue.
EigenDecomposition sym_eigen(const SymMatrix& a, bool want_vectors);

/// Implicit QL on a symmetric tridiagonal matrix (diag, offdiag[1..n-1]).
/// Rotations are accumulated into the columns of every row of `z`, which may
/// hold any number of rows (n for full vectors, 1 for first components).
/// Eigenvalues come back ascending with z's columns permuted to match.
void tridiagonal_ql(std::vector<double>& diag, std::vector<double>& offdiag,
                    Matrix* z);

struct LstsqResult {
  std::vector<double> c;
  double residual = 0.0;  // ||E c - v||_2
  std::size_t rank = 0;
  double condition = 0.0;  // sqrt(lambda_max / lambda_min) over kept Gram eigenvalues
};

/// Minimum-norm least squares via the eigendecomposition of the smaller Gram
/// matrix, relative rank cutoff 1e-12 lambda_max, one refinement step.
LstsqResult min_norm_lstsq(const Matrix& e, std::span<const double> v);

/// Gauss-Jacobi rule for (1-t)^alpha (1+t)^beta on [-1, 1], exact to degree 2n-1.
QuadratureRule golub_welsch(int n, const JacobiIndex& idx);

/// Gauss-Legendre rule mapped to [a, b].
QuadratureRule gauss_legendre(int n, double a = -1.0, double b = 1.0);

}  // namespace sphsamp
