#pragma once

// Exact integer/rational kernel: matrices over Z and Q, Smith normal form,
// Bareiss determinant and the inertia of symmetric integer matrices.

#include <cstddef>
#include <cstdint>
#include <initializer_list>
#include <string>
#include <vector>

#include <gmpxx.h>

#include "k3lat/error.hpp"

namespace k3lat {

using Integer = mpz_class;
using Rational = mpq_class;

/// Reduced rational num/den; throws DataFormatError when den == 0.
Rational make_rational(const Integer& num, const Integer& den);

/// "p/q", or "p" when the denominator is 1.
std::string to_string(const Rational& x);
std::string to_string(const Integer& x);

/// Representative of x modulo m in [0, m). m must be positive.
Rational mod_positive(const Rational& x, const Rational& m);

Integer lcm(const Integer& a, const Integer& b);
Integer gcd(const Integer& a, const Integer& b);

template <typename T>
class Matrix {
 public:
  Matrix() = default;
  Matrix(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols), data_(rows * cols) {}
  Matrix(std::initializer_list<std::initializer_list<long>> rows);

  static Matrix identity(std::size_t n);
  static Matrix from_rows(const std::vector<std::vector<T>>& rows);

  std::size_t rows() const noexcept { return rows_; }
  std::size_t cols() const noexcept { return cols_; }
  bool is_square() const noexcept { return rows_ == cols_; }
  bool empty() const noexcept { return rows_ == 0 || cols_ == 0; }

  T& operator()(std::size_t i, std::size_t j) { return data_[i * cols_ + j]; }
  const T& operator()(std::size_t i, std::size_t j) const { return data_[i * cols_ + j]; }

  Matrix transpose() const;
  bool is_symmetric() const;
  std::vector<std::vector<T>> to_rows() const;

  void swap_rows(std::size_t a, std::size_t b);
  void swap_cols(std::size_t a, std::size_t b);

  friend bool operator==(const Matrix& a, const Matrix& b) {
    return a.rows_ == b.rows_ && a.cols_ == b.cols_ && a.data_ == b.data_;
  }

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<T> data_;
};

using IntMatrix = Matrix<Integer>;
using RatMatrix = Matrix<Rational>;

IntMatrix operator*(const IntMatrix& a, const IntMatrix& b);
RatMatrix operator*(const RatMatrix& a, const RatMatrix& b);
RatMatrix to_rational(const IntMatrix& m);

/// Block-diagonal sum of two matrices.
template <typename T>
Matrix<T> block_sum(const Matrix<T>& a, const Matrix<T>& b);

/// Inverse over Q; throws DegenerateMatrix when singular.
RatMatrix inverse(const RatMatrix& m);

/// Matrix rank over Q.
std::size_t rank(const IntMatrix& m);

struct SnfResult {
  /// Invariant factors d1 | d2 | ... (min(rows, cols) of them, nonnegative).
  std::vector<Integer> d;
  /// Unimodular transforms with left * m * right = diag(d).
  IntMatrix left;
  IntMatrix right;
};

SnfResult smith_normal_form(const IntMatrix& m);

/// Exact determinant by fraction-free (Bareiss) elimination.
Integer det(const IntMatrix& m);

struct Inertia {
  std::size_t positive = 0;
  std::size_t negative = 0;
  friend bool operator==(const Inertia&, const Inertia&) = default;
};

/// Signature of a symmetric nondegenerate matrix; throws DegenerateMatrix otherwise.
Inertia inertia(const IntMatrix& m);

}  // namespace k3lat
