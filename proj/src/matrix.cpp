#include "bethe_overlap/matrix.hpp"

#include <string>
#include <utility>

namespace bethe_overlap {

Matrix::Matrix(std::size_t rows, std::size_t cols, const Scalar& fill) : rows_(rows), cols_(cols), data_(rows * cols, fill) {}

Matrix Matrix::identity(std::size_t n, const Scalar& like) {
  Matrix m(n, n, like.zero_like());
  const Scalar one = like.one_like();
  for (std::size_t k = 0; k < n; ++k) m(k, k) = one;
  return m;
}

Matrix Matrix::build(std::size_t rows, std::size_t cols, const std::function<Scalar(std::size_t, std::size_t)>& entry) {
  Matrix m;
  m.rows_ = rows;
  m.cols_ = cols;
  m.data_.reserve(rows * cols);
  for (std::size_t r = 0; r < rows; ++r) {
    for (std::size_t c = 0; c < cols; ++c) m.data_.push_back(entry(r, c));
  }
  return m;
}

Matrix& Matrix::operator+=(const Matrix& rhs) {
  if (rows_ != rhs.rows_ || cols_ != rhs.cols_) throw InvalidArgument("matrix shape mismatch in +");
  for (std::size_t k = 0; k < data_.size(); ++k) data_[k] += rhs.data_[k];
  return *this;
}

Matrix& Matrix::operator-=(const Matrix& rhs) {
  if (rows_ != rhs.rows_ || cols_ != rhs.cols_) throw InvalidArgument("matrix shape mismatch in -");
  for (std::size_t k = 0; k < data_.size(); ++k) data_[k] -= rhs.data_[k];
  return *this;
}

Matrix& Matrix::operator*=(const Scalar& s) {
  for (auto& x : data_) x *= s;
  return *this;
}

Matrix operator*(const Matrix& a, const Matrix& b) {
  if (a.cols_ != b.rows_) throw InvalidArgument("matrix shape mismatch in *");
  if (a.data_.empty() || b.data_.empty()) {
    throw InvalidArgument("matrix product with an empty factor");
  }
  Matrix out(a.rows_, b.cols_, a.data_.front().zero_like());
  for (std::size_t i = 0; i < a.rows_; ++i) {
    for (std::size_t k = 0; k < a.cols_; ++k) {
      const Scalar& aik = a(i, k);
      if (aik.is_zero()) continue;
      for (std::size_t j = 0; j < b.cols_; ++j) {
        const Scalar& bkj = b(k, j);
        if (bkj.is_zero()) continue;
        out(i, j) += aik * bkj;
      }
    }
  }
  return out;
}

bool operator==(const Matrix& a, const Matrix& b) {
  return a.rows_ == b.rows_ && a.cols_ == b.cols_ && a.data_ == b.data_;
}

bool Matrix::is_zero() const {
  for (const auto& x : data_) {
    if (!x.is_zero()) return false;
  }
  return true;
}

Real Matrix::max_modulus() const {
  Real best = 0;
  for (const auto& x : data_) {
    if (x.is_zero()) continue;
    Real m = x.modulus();
    if (m > best) best = m;
  }
  return best;
}

Matrix kron(const Matrix& a, const Matrix& b) {
  if (a.rows() == 0 || b.rows() == 0) throw InvalidArgument("kron of empty matrix");
  Matrix out(a.rows() * b.rows(), a.cols() * b.cols(), a(0, 0).zero_like());
  for (std::size_t i = 0; i < a.rows(); ++i) {
    for (std::size_t j = 0; j < a.cols(); ++j) {
      const Scalar& aij = a(i, j);
      if (aij.is_zero()) continue;
      for (std::size_t k = 0; k < b.rows(); ++k) {
        for (std::size_t l = 0; l < b.cols(); ++l) {
          const Scalar& bkl = b(k, l);
          if (bkl.is_zero()) continue;
          out(i * b.rows() + k, j * b.cols() + l) = aij * bkl;
        }
      }
    }
  }
  return out;
}

Matrix commutator(const Matrix& a, const Matrix& b) { return a * b - b * a; }

Vector matvec(const Matrix& m, const Vector& x) {
  if (m.cols() != x.size() || x.empty()) throw InvalidArgument("matvec shape mismatch");
  Vector out(m.rows(), x.front().zero_like());
  for (std::size_t i = 0; i < m.rows(); ++i) {
    for (std::size_t k = 0; k < m.cols(); ++k) {
      if (m(i, k).is_zero() || x[k].is_zero()) continue;
      out[i] += m(i, k) * x[k];
    }
  }
  return out;
}

Vector vecmat(const Vector& x, const Matrix& m) {
  if (m.rows() != x.size() || x.empty()) throw InvalidArgument("vecmat shape mismatch");
  Vector out(m.cols(), x.front().zero_like());
  for (std::size_t k = 0; k < m.rows(); ++k) {
    if (x[k].is_zero()) continue;
    for (std::size_t j = 0; j < m.cols(); ++j) {
      if (m(k, j).is_zero()) continue;
      out[j] += x[k] * m(k, j);
    }
  }
  return out;
}

Scalar dot(const Vector& a, const Vector& b) {
  if (a.size() != b.size() || a.empty()) throw InvalidArgument("dot shape mismatch");
  Scalar out = a.front().zero_like();
  for (std::size_t k = 0; k < a.size(); ++k) out += a[k] * b[k];
  return out;
}

Real max_modulus(const Vector& x) {
  Real best = 0;
  for (const auto& v : x) {
    Real m = v.modulus();
    if (m > best) best = m;
  }
  return best;
}

namespace {

void check_square(const Matrix& m, const char* what) {
  if (!m.square()) throw InvalidArgument(std::string(what) + " of a non-square matrix");
}

Scalar bareiss(Matrix a, const Scalar& one) {
  const std::size_t n = a.rows();
  Scalar sign = one;
  Scalar prev = one;
  for (std::size_t k = 0; k + 1 < n; ++k) {
    if (a(k, k).is_zero()) {
      std::size_t p = k + 1;
      while (p < n && a(p, k).is_zero()) ++p;
      if (p == n) return one.zero_like();
      for (std::size_t c = 0; c < n; ++c) std::swap(a(k, c), a(p, c));
      sign = -sign;
    }
    for (std::size_t i = k + 1; i < n; ++i) {
      for (std::size_t j = k + 1; j < n; ++j) {
        a(i, j) = (a(k, k) * a(i, j) - a(i, k) * a(k, j)) / prev;
      }
    }
    prev = a(k, k);
  }
  return sign * a(n - 1, n - 1);
}

std::size_t pivot_row(const Matrix& a, std::size_t col, std::size_t from) {
  std::size_t best = from;
  Real best_mod = a(from, col).modulus();
  for (std::size_t r = from + 1; r < a.rows(); ++r) {
    Real m = a(r, col).modulus();
    if (m > best_mod) {
      best_mod = m;
      best = r;
    }
  }
  return best;
}

Scalar pivoted_elimination(Matrix a, const Scalar& one) {
  const std::size_t n = a.rows();
  Scalar det = one;
  for (std::size_t k = 0; k < n; ++k) {
    const std::size_t p = pivot_row(a, k, k);
    if (a(p, k).is_zero()) return one.zero_like();
    if (p != k) {
      for (std::size_t c = 0; c < n; ++c) std::swap(a(k, c), a(p, c));
      det = -det;
    }
    det *= a(k, k);
    for (std::size_t i = k + 1; i < n; ++i) {
      if (a(i, k).is_zero()) continue;
      const Scalar factor = a(i, k) / a(k, k);
      for (std::size_t j = k + 1; j < n; ++j) a(i, j) -= factor * a(k, j);
    }
  }
  return det;
}

}  // namespace

Scalar determinant(const Matrix& m, const Scalar& one, std::size_t max_size) {
  check_square(m, "determinant");
  if (m.rows() > max_size) {
    throw SizeLimitExceeded("determinant of size " + std::to_string(m.rows()) + " exceeds cap " + std::to_string(max_size));
  }
  if (m.rows() == 0) return one;
  if (one.is_exact()) return bareiss(m, one);
  return pivoted_elimination(m, one);
}

Matrix inverse(const Matrix& m) {
  check_square(m, "inverse");
  const std::size_t n = m.rows();
  if (n == 0) return m;
  const Scalar one = m(0, 0).one_like();
  Matrix a = m;
  Matrix inv = Matrix::identity(n, one);
  for (std::size_t k = 0; k < n; ++k) {
    std::size_t p = k;
    if (one.is_exact()) {
      while (p < n && a(p, k).is_zero()) ++p;
      if (p == n) throw SingularMatrix("matrix is singular");
    } else {
      p = pivot_row(a, k, k);
      if (a(p, k).is_zero()) throw SingularMatrix("matrix is singular");
    }
    if (p != k) {
      for (std::size_t c = 0; c < n; ++c) {
        std::swap(a(k, c), a(p, c));
        std::swap(inv(k, c), inv(p, c));
      }
    }
    const Scalar pivot_inv = one / a(k, k);
    for (std::size_t c = 0; c < n; ++c) {
      a(k, c) *= pivot_inv;
      inv(k, c) *= pivot_inv;
    }
    for (std::size_t i = 0; i < n; ++i) {
      if (i == k || a(i, k).is_zero()) continue;
      const Scalar factor = a(i, k);
      for (std::size_t c = 0; c < n; ++c) {
        if (!a(k, c).is_zero()) a(i, c) -= factor * a(k, c);
        if (!inv(k, c).is_zero()) inv(i, c) -= factor * inv(k, c);
      }
    }
  }
  return inv;
}

Vector solve(const Matrix& m, const Vector& b) {
  check_square(m, "solve");
  if (b.size() != m.rows()) throw InvalidArgument("solve shape mismatch");
  const std::size_t n = m.rows();
  if (n == 0) return {};
  Matrix a = m;
  Vector x = b;
  for (std::size_t k = 0; k < n; ++k) {
    std::size_t p = k;
    if (a(0, 0).is_exact()) {
      while (p < n && a(p, k).is_zero()) ++p;
      if (p == n) throw SingularMatrix("linear system is singular");
    } else {
      p = pivot_row(a, k, k);
      if (a(p, k).is_zero()) throw SingularMatrix("linear system is singular");
    }
    if (p != k) {
      for (std::size_t c = 0; c < n; ++c) std::swap(a(k, c), a(p, c));
      std::swap(x[k], x[p]);
    }
    for (std::size_t i = k + 1; i < n; ++i) {
      if (a(i, k).is_zero()) continue;
      const Scalar factor = a(i, k) / a(k, k);
      for (std::size_t j = k; j < n; ++j) a(i, j) -= factor * a(k, j);
      x[i] -= factor * x[k];
    }
  }
  for (std::size_t k = n; k-- > 0;) {
    Scalar acc = x[k];
    for (std::size_t j = k + 1; j < n; ++j) acc -= a(k, j) * x[j];
    x[k] = acc / a(k, k);
  }
  return x;
}

}  // namespace bethe_overlap
