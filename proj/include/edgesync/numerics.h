#pragma once

// Dense linear algebra used by every other module. Nothing above this layer
// does raw matrix arithmetic.

#include <cstddef>
#include <initializer_list>
#include <span>
#include <vector>

namespace edgesync {

using Vector = std::vector<double>;

/// Row-major dense matrix. Zero-sized dimensions are allowed so that graphs
/// without edges (an N x 0 incidence matrix) stay representable.
class Matrix {
 public:
  Matrix() = default;
  Matrix(std::size_t rows, std::size_t cols, double fill = 0.0);
  /// Row-wise literal, e.g. `Matrix({{2, -1}, {-1, 2}})`.
  Matrix(std::initializer_list<std::initializer_list<double>> rows);

  static Matrix Identity(std::size_t n);
  static Matrix Diagonal(std::span<const double> diag);
  static Matrix FromRowMajor(std::size_t rows, std::size_t cols,
                             std::span<const double> entries);
  static Matrix Column(std::span<const double> entries);

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }
  bool square() const { return rows_ == cols_; }

  double& operator()(std::size_t i, std::size_t j) {
    return data_[i * cols_ + j];
  }
  double operator()(std::size_t i, std::size_t j) const {
    return data_[i * cols_ + j];
  }

  std::span<const double> data() const { return data_; }
  std::span<const double> row(std::size_t i) const {
    return std::span<const double>(data_).subspan(i * cols_, cols_);
  }
  Vector col(std::size_t j) const;
  void set_col(std::size_t j, std::span<const double> values);

  Matrix transpose() const;
  /// Entrywise absolute value, |A| = (|a_ij|).
  Matrix abs() const;
  /// (A + Aᵀ) / 2.
  Matrix sym_part() const;
  /// Largest entry magnitude, ‖A‖_max. Zero for an empty matrix.
  double max_abs() const;
  double frobenius() const;
  bool all_finite() const;

  Matrix& operator+=(const Matrix& other);
  Matrix& operator-=(const Matrix& other);
  Matrix& operator*=(double s);

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<double> data_;
};

Matrix operator+(Matrix a, const Matrix& b);
Matrix operator-(Matrix a, const Matrix& b);
Matrix operator*(Matrix a, double s);
Matrix operator*(double s, Matrix a);
Matrix operator*(const Matrix& a, const Matrix& b);
Vector operator*(const Matrix& a, std::span<const double> x);

/// Kronecker product A ⊗ B.
Matrix Kron(const Matrix& a, const Matrix& b);
/// ‖A − B‖_max.
double MaxAbsDiff(const Matrix& a, const Matrix& b);
double Dot(std::span<const double> a, std::span<const double> b);
double Norm2(std::span<const double> a);

struct SymEigDecomposition {
  Vector eigenvalues;   // ascending
  Matrix eigenvectors;  // column i pairs with eigenvalues[i]
};

/// Cyclic Jacobi eigensolver for symmetric matrices.
///
/// Throws kNonSymmetric when ‖A − Aᵀ‖_max > 1e-9·max(1, ‖A‖_max) and
/// kNoConvergence after 100 sweeps.
SymEigDecomposition SymEig(const Matrix& a);

/// Smallest eigenvalue of the symmetric part of `a`.
double MinSymEigenvalue(const Matrix& a);

inline constexpr double kDefaultNullspaceTol = 1e-9;

/// Orthonormal basis (as columns of an n x ℓ matrix, ℓ possibly 0) for the
/// eigenvectors of a symmetric PSD matrix whose eigenvalue is at most
/// rel_tol·max(1, λ_max).
Matrix NullspaceSymPsd(const Matrix& a, double rel_tol = kDefaultNullspaceTol);

/// Solves A X = B by LU with partial pivoting. Throws kSingular when a pivot
/// falls below 1e-12·‖A‖_max.
Matrix SolveLinear(const Matrix& a, const Matrix& b);

/// Solves AᵀX + XA + Q = 0 through the n²-dimensional Kronecker system and
/// returns the symmetrized solution. Throws kSingular when A and −Aᵀ share an
/// eigenvalue.
Matrix LyapunovSolve(const Matrix& a, const Matrix& q);

}  // namespace edgesync
