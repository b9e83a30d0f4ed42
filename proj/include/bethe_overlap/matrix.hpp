#pragma once

#include <cstddef>
#include <functional>
#include <vector>

#include "bethe_overlap/scalar.hpp"

namespace bethe_overlap {

inline constexpr std::size_t kDefaultMaxDeterminantSize = 12;

/// Dense row-major matrix of scalars. All entries share one mode.
class Matrix {
 public:
  Matrix() = default;
  /// rows x cols filled with `fill`.
  Matrix(std::size_t rows, std::size_t cols, const Scalar& fill);

  static Matrix identity(std::size_t n, const Scalar& like);
  static Matrix zeros(std::size_t rows, std::size_t cols, const Scalar& like) { return Matrix(rows, cols, like.zero_like()); }
  /// Entry (j, k) = entry(j, k).
  static Matrix build(std::size_t rows, std::size_t cols, const std::function<Scalar(std::size_t, std::size_t)>& entry);

  std::size_t rows() const noexcept { return rows_; }
  std::size_t cols() const noexcept { return cols_; }
  bool square() const noexcept { return rows_ == cols_; }

  Scalar& operator()(std::size_t r, std::size_t c) { return data_[r * cols_ + c]; }
  const Scalar& operator()(std::size_t r, std::size_t c) const { return data_[r * cols_ + c]; }

  Matrix& operator+=(const Matrix& rhs);
  Matrix& operator-=(const Matrix& rhs);
  Matrix& operator*=(const Scalar& s);
  friend Matrix operator+(Matrix a, const Matrix& b) { return a += b; }
  friend Matrix operator-(Matrix a, const Matrix& b) { return a -= b; }
  friend Matrix operator*(Matrix a, const Scalar& s) { return a *= s; }
  friend Matrix operator*(const Scalar& s, Matrix a) { return a *= s; }
  friend Matrix operator*(const Matrix& a, const Matrix& b);

  /// Exact equality of every entry.
  friend bool operator==(const Matrix& a, const Matrix& b);

  bool is_zero() const;
  /// max |entry| over the matrix.
  Real max_modulus() const;

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<Scalar> data_;
};

using Vector = std::vector<Scalar>;

/// Kronecker product a (x) b; a's index is the slower one.
Matrix kron(const Matrix& a, const Matrix& b);
Matrix commutator(const Matrix& a, const Matrix& b);

Vector matvec(const Matrix& m, const Vector& x);
/// Row vector times matrix.
Vector vecmat(const Vector& x, const Matrix& m);
Scalar dot(const Vector& a, const Vector& b);
Real max_modulus(const Vector& x);

/// Determinant. Exact matrices use fraction-free (Bareiss) elimination,
/// floating ones partial pivoting on the largest modulus. The empty
/// matrix has determinant `one`.
Scalar determinant(const Matrix& m, const Scalar& one, std::size_t max_size = kDefaultMaxDeterminantSize);

/// Inverse by Gauss-Jordan elimination. Throws SingularMatrix.
Matrix inverse(const Matrix& m);

/// Solves m x = b. Throws SingularMatrix.
Vector solve(const Matrix& m, const Vector& b);

}  // namespace bethe_overlap
