#pragma once

#include <cstdint>
#include <initializer_list>
#include <vector>

#include "flatspec/rational.hpp"

namespace flatspec {

/// Dense row-major matrix with value semantics. Only the handful of
/// operations the lattice code needs; sizes are tiny (n <= 8 or so).
template <typename T>
class Matrix {
 public:
  Matrix() = default;
  Matrix(int rows, int cols) : rows_(rows), cols_(cols), data_(static_cast<std::size_t>(rows * cols), T(0)) {}
  Matrix(std::initializer_list<std::initializer_list<T>> rows);

  static Matrix identity(int n) {
    Matrix m(n, n);
    for (int i = 0; i < n; ++i) m(i, i) = T(1);
    return m;
  }

  int rows() const { return rows_; }
  int cols() const { return cols_; }

  T& operator()(int r, int c) { return data_[static_cast<std::size_t>(r * cols_ + c)]; }
  const T& operator()(int r, int c) const { return data_[static_cast<std::size_t>(r * cols_ + c)]; }

  Matrix transpose() const {
    Matrix t(cols_, rows_);
    for (int r = 0; r < rows_; ++r)
      for (int c = 0; c < cols_; ++c) t(c, r) = (*this)(r, c);
    return t;
  }

  friend bool operator==(const Matrix& a, const Matrix& b) {
    return a.rows_ == b.rows_ && a.cols_ == b.cols_ && a.data_ == b.data_;
  }
  friend bool operator<(const Matrix& a, const Matrix& b) {
    if (a.rows_ != b.rows_) return a.rows_ < b.rows_;
    if (a.cols_ != b.cols_) return a.cols_ < b.cols_;
    return a.data_ < b.data_;
  }

  friend Matrix operator*(const Matrix& a, const Matrix& b) {
    if (a.cols_ != b.rows_) throw Error("matrix product: shape mismatch");
    Matrix p(a.rows_, b.cols_);
    for (int i = 0; i < a.rows_; ++i)
      for (int k = 0; k < a.cols_; ++k) {
        const T& aik = a(i, k);
        if (aik == T(0)) continue;
        for (int j = 0; j < b.cols_; ++j) p(i, j) += aik * b(k, j);
      }
    return p;
  }

  friend Matrix operator-(const Matrix& a, const Matrix& b) {
    Matrix d = a;
    for (std::size_t i = 0; i < d.data_.size(); ++i) d.data_[i] -= b.data_[i];
    return d;
  }

  std::vector<T> apply(const std::vector<T>& v) const {
    std::vector<T> out(static_cast<std::size_t>(rows_), T(0));
    for (int i = 0; i < rows_; ++i)
      for (int j = 0; j < cols_; ++j) out[static_cast<std::size_t>(i)] += (*this)(i, j) * v[static_cast<std::size_t>(j)];
    return out;
  }

 private:
  int rows_ = 0;
  int cols_ = 0;
  std::vector<T> data_;
};

template <typename T>
Matrix<T>::Matrix(std::initializer_list<std::initializer_list<T>> rows) {
  rows_ = static_cast<int>(rows.size());
  cols_ = rows_ == 0 ? 0 : static_cast<int>(rows.begin()->size());
  data_.reserve(static_cast<std::size_t>(rows_ * cols_));
  for (const auto& r : rows) {
    if (static_cast<int>(r.size()) != cols_) throw Error("ragged matrix literal");
    data_.insert(data_.end(), r.begin(), r.end());
  }
}

using IntMatrix = Matrix<std::int64_t>;
using RatMatrix = Matrix<Rational>;
using IntVector = std::vector<std::int64_t>;
using RatVector = std::vector<Rational>;

RatMatrix to_rational(const IntMatrix& m);
RatVector to_rational(const IntVector& v);

/// Throws if some entry is not an integer.
IntMatrix to_integer(const RatMatrix& m);

bool is_identity(const IntMatrix& m);

Rational determinant(RatMatrix m);

/// Exact inverse over Q; throws on a singular matrix.
RatMatrix inverse(const RatMatrix& m);

/// Solves m * x = rhs for a square nonsingular m.
RatVector solve(const RatMatrix& m, const RatVector& rhs);

/// Z-basis of { x in Z^cols : a x = 0 }, via unimodular column reduction.
std::vector<IntVector> integer_kernel(const IntMatrix& a);

Rational dot(const RatVector& a, const RatVector& b);
Rational dot(const IntVector& a, const RatVector& b);

/// Componentwise reduction into [0, 1).
RatVector reduce_mod_one(const RatVector& v);

/// Multiplicative order of an integer matrix, or 0 if it exceeds max_order.
int matrix_order(const IntMatrix& m, int max_order);

}  // namespace flatspec
