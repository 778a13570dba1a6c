#include "k3lat/exact.hpp"

#include <algorithm>
#include <utility>

namespace k3lat {

std::string_view to_string(ErrorCode code) {
  switch (code) {
    case ErrorCode::BadRank: return "BadRank";
    case ErrorCode::OddDiagonal: return "OddDiagonal";
    case ErrorCode::NotSymmetric: return "NotSymmetric";
    case ErrorCode::DependentGenerators: return "DependentGenerators";
    case ErrorCode::DegenerateGram: return "DegenerateGram";
    case ErrorCode::DegenerateMatrix: return "DegenerateMatrix";
    case ErrorCode::DimensionMismatch: return "DimensionMismatch";
    case ErrorCode::BadEpsilon: return "BadEpsilon";
    case ErrorCode::CapExceeded: return "CapExceeded";
    case ErrorCode::NondegenerateBilinearViolated: return "NondegenerateBilinearViolated";
    case ErrorCode::InexactDivision: return "InexactDivision";
    case ErrorCode::NonIntegralMu: return "NonIntegralMu";
    case ErrorCode::NonGaloisStable: return "NonGaloisStable";
    case ErrorCode::EmptySupport: return "EmptySupport";
    case ErrorCode::DegenerateDimension: return "DegenerateDimension";
    case ErrorCode::ParseError: return "ParseError";
    case ErrorCode::DataFormatError: return "DataFormatError";
  }
  return "Unknown";
}

Rational make_rational(const Integer& num, const Integer& den) {
  if (den == 0) throw Error(ErrorCode::DataFormatError, "zero denominator");
  Rational r(num, den);
  r.canonicalize();
  return r;
}

std::string to_string(const Rational& x) {
  Rational y = x;
  y.canonicalize();
  if (y.get_den() == 1) return y.get_num().get_str();
  return y.get_num().get_str() + "/" + y.get_den().get_str();
}

std::string to_string(const Integer& x) { return x.get_str(); }

Rational mod_positive(const Rational& x, const Rational& m) {
  Rational q = x / m;
  Integer fl;
  mpz_fdiv_q(fl.get_mpz_t(), q.get_num_mpz_t(), q.get_den_mpz_t());
  Rational r = x - Rational(fl) * m;
  r.canonicalize();
  return r;
}

Integer gcd(const Integer& a, const Integer& b) {
  Integer g;
  mpz_gcd(g.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
  return g;
}

Integer lcm(const Integer& a, const Integer& b) {
  Integer l;
  mpz_lcm(l.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
  return l;
}

// --- Matrix ------------------------------------------------------------------

template <typename T>
Matrix<T>::Matrix(std::initializer_list<std::initializer_list<long>> rows) {
  rows_ = rows.size();
  cols_ = rows_ == 0 ? 0 : rows.begin()->size();
  data_.reserve(rows_ * cols_);
  for (const auto& r : rows) {
    if (r.size() != cols_) throw Error(ErrorCode::DimensionMismatch, "ragged matrix literal");
    for (long v : r) data_.emplace_back(v);
  }
}

template <typename T>
Matrix<T> Matrix<T>::identity(std::size_t n) {
  Matrix m(n, n);
  for (std::size_t i = 0; i < n; ++i) m(i, i) = 1;
  return m;
}

template <typename T>
Matrix<T> Matrix<T>::from_rows(const std::vector<std::vector<T>>& rows) {
  Matrix m(rows.size(), rows.empty() ? 0 : rows.front().size());
  for (std::size_t i = 0; i < rows.size(); ++i) {
    if (rows[i].size() != m.cols_) throw Error(ErrorCode::DimensionMismatch, "ragged rows");
    for (std::size_t j = 0; j < m.cols_; ++j) m(i, j) = rows[i][j];
  }
  return m;
}

template <typename T>
Matrix<T> Matrix<T>::transpose() const {
  Matrix t(cols_, rows_);
  for (std::size_t i = 0; i < rows_; ++i)
    for (std::size_t j = 0; j < cols_; ++j) t(j, i) = (*this)(i, j);
  return t;
}

template <typename T>
bool Matrix<T>::is_symmetric() const {
  if (!is_square()) return false;
  for (std::size_t i = 0; i < rows_; ++i)
    for (std::size_t j = i + 1; j < cols_; ++j)
      if ((*this)(i, j) != (*this)(j, i)) return false;
  return true;
}

template <typename T>
std::vector<std::vector<T>> Matrix<T>::to_rows() const {
  std::vector<std::vector<T>> out(rows_, std::vector<T>(cols_));
  for (std::size_t i = 0; i < rows_; ++i)
    for (std::size_t j = 0; j < cols_; ++j) out[i][j] = (*this)(i, j);
  return out;
}

template <typename T>
void Matrix<T>::swap_rows(std::size_t a, std::size_t b) {
  if (a == b) return;
  for (std::size_t j = 0; j < cols_; ++j) std::swap((*this)(a, j), (*this)(b, j));
}

template <typename T>
void Matrix<T>::swap_cols(std::size_t a, std::size_t b) {
  if (a == b) return;
  for (std::size_t i = 0; i < rows_; ++i) std::swap((*this)(i, a), (*this)(i, b));
}

template <typename T>
Matrix<T> block_sum(const Matrix<T>& a, const Matrix<T>& b) {
  Matrix<T> m(a.rows() + b.rows(), a.cols() + b.cols());
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t j = 0; j < a.cols(); ++j) m(i, j) = a(i, j);
  for (std::size_t i = 0; i < b.rows(); ++i)
    for (std::size_t j = 0; j < b.cols(); ++j) m(a.rows() + i, a.cols() + j) = b(i, j);
  return m;
}

template class Matrix<Integer>;
template class Matrix<Rational>;
template IntMatrix block_sum(const IntMatrix&, const IntMatrix&);
template RatMatrix block_sum(const RatMatrix&, const RatMatrix&);

namespace {

template <typename T>
Matrix<T> multiply(const Matrix<T>& a, const Matrix<T>& b) {
  if (a.cols() != b.rows()) throw Error(ErrorCode::DimensionMismatch, "matrix product");
  Matrix<T> c(a.rows(), b.cols());
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t k = 0; k < a.cols(); ++k) {
      if (a(i, k) == 0) continue;
      for (std::size_t j = 0; j < b.cols(); ++j) c(i, j) += a(i, k) * b(k, j);
    }
  return c;
}

}  // namespace

IntMatrix operator*(const IntMatrix& a, const IntMatrix& b) { return multiply(a, b); }
RatMatrix operator*(const RatMatrix& a, const RatMatrix& b) { return multiply(a, b); }

RatMatrix to_rational(const IntMatrix& m) {
  RatMatrix r(m.rows(), m.cols());
  for (std::size_t i = 0; i < m.rows(); ++i)
    for (std::size_t j = 0; j < m.cols(); ++j) r(i, j) = m(i, j);
  return r;
}

RatMatrix inverse(const RatMatrix& m) {
  if (!m.is_square()) throw Error(ErrorCode::DimensionMismatch, "inverse of non-square matrix");
  const std::size_t n = m.rows();
  RatMatrix a = m;
  RatMatrix inv = RatMatrix::identity(n);
  for (std::size_t c = 0; c < n; ++c) {
    std::size_t p = c;
    while (p < n && a(p, c) == 0) ++p;
    if (p == n) throw Error(ErrorCode::DegenerateMatrix, "singular matrix has no inverse");
    a.swap_rows(p, c);
    inv.swap_rows(p, c);
    const Rational piv = a(c, c);
    for (std::size_t j = 0; j < n; ++j) {
      a(c, j) /= piv;
      inv(c, j) /= piv;
    }
    for (std::size_t i = 0; i < n; ++i) {
      if (i == c || a(i, c) == 0) continue;
      const Rational f = a(i, c);
      for (std::size_t j = 0; j < n; ++j) {
        a(i, j) -= f * a(c, j);
        inv(i, j) -= f * inv(c, j);
      }
    }
  }
  return inv;
}

std::size_t rank(const IntMatrix& m) {
  RatMatrix a = to_rational(m);
  std::size_t r = 0;
  for (std::size_t c = 0; c < a.cols() && r < a.rows(); ++c) {
    std::size_t p = r;
    while (p < a.rows() && a(p, c) == 0) ++p;
    if (p == a.rows()) continue;
    a.swap_rows(p, r);
    for (std::size_t i = r + 1; i < a.rows(); ++i) {
      if (a(i, c) == 0) continue;
      const Rational f = a(i, c) / a(r, c);
      for (std::size_t j = c; j < a.cols(); ++j) a(i, j) -= f * a(r, j);
    }
    ++r;
  }
  return r;
}

// --- Smith normal form ---------------------------------------------------------

namespace {

void add_row_multiple(IntMatrix& m, std::size_t target, std::size_t source, const Integer& f) {
  for (std::size_t j = 0; j < m.cols(); ++j) m(target, j) += f * m(source, j);
}

void add_col_multiple(IntMatrix& m, std::size_t target, std::size_t source, const Integer& f) {
  for (std::size_t i = 0; i < m.rows(); ++i) m(i, target) += f * m(i, source);
}

}  // namespace

SnfResult smith_normal_form(const IntMatrix& m) {
  const std::size_t rows = m.rows();
  const std::size_t cols = m.cols();
  IntMatrix a = m;
  IntMatrix left = IntMatrix::identity(rows);
  IntMatrix right = IntMatrix::identity(cols);
  const std::size_t steps = std::min(rows, cols);

  for (std::size_t t = 0; t < steps; ++t) {
    for (;;) {
      // smallest nonzero pivot in the trailing block
      std::size_t pi = rows, pj = cols;
      for (std::size_t i = t; i < rows; ++i)
        for (std::size_t j = t; j < cols; ++j) {
          if (a(i, j) == 0) continue;
          if (pi == rows || abs(a(i, j)) < abs(a(pi, pj))) {
            pi = i;
            pj = j;
          }
        }
      if (pi == rows) break;  // trailing block is zero
      a.swap_rows(t, pi);
      left.swap_rows(t, pi);
      a.swap_cols(t, pj);
      right.swap_cols(t, pj);

      bool dirty = false;
      for (std::size_t i = t + 1; i < rows; ++i) {
        if (a(i, t) == 0) continue;
        Integer q;
        mpz_tdiv_q(q.get_mpz_t(), a(i, t).get_mpz_t(), a(t, t).get_mpz_t());
        add_row_multiple(a, i, t, -q);
        add_row_multiple(left, i, t, -q);
        if (a(i, t) != 0) dirty = true;
      }
      for (std::size_t j = t + 1; j < cols; ++j) {
        if (a(t, j) == 0) continue;
        Integer q;
        mpz_tdiv_q(q.get_mpz_t(), a(t, j).get_mpz_t(), a(t, t).get_mpz_t());
        add_col_multiple(a, j, t, -q);
        add_col_multiple(right, j, t, -q);
        if (a(t, j) != 0) dirty = true;
      }
      if (dirty) continue;

      // divisibility: fold an offending row into the pivot row and retry
      std::size_t bad = rows;
      for (std::size_t i = t + 1; i < rows && bad == rows; ++i)
        for (std::size_t j = t + 1; j < cols; ++j)
          if (mpz_divisible_p(a(i, j).get_mpz_t(), a(t, t).get_mpz_t()) == 0) {
            bad = i;
            break;
          }
      if (bad == rows) break;
      add_row_multiple(a, t, bad, 1);
      add_row_multiple(left, t, bad, 1);
    }
    if (a(t, t) < 0) {
      for (std::size_t j = 0; j < cols; ++j) a(t, j) = -a(t, j);
      for (std::size_t j = 0; j < rows; ++j) left(t, j) = -left(t, j);
    }
  }

  SnfResult out;
  out.d.reserve(steps);
  for (std::size_t t = 0; t < steps; ++t) out.d.push_back(a(t, t));
  out.left = std::move(left);
  out.right = std::move(right);
  return out;
}

// --- determinant ----------------------------------------------------------------

Integer det(const IntMatrix& m) {
  if (!m.is_square()) throw Error(ErrorCode::DimensionMismatch, "determinant of non-square matrix");
  const std::size_t n = m.rows();
  if (n == 0) return 1;
  IntMatrix a = m;
  Integer sign = 1;
  Integer prev = 1;
  for (std::size_t k = 0; k + 1 < n; ++k) {
    if (a(k, k) == 0) {
      std::size_t p = k + 1;
      while (p < n && a(p, k) == 0) ++p;
      if (p == n) return 0;
      a.swap_rows(k, p);
      sign = -sign;
    }
    for (std::size_t i = k + 1; i < n; ++i)
      for (std::size_t j = k + 1; j < n; ++j) {
        Integer v = a(i, j) * a(k, k) - a(i, k) * a(k, j);
        mpz_divexact(v.get_mpz_t(), v.get_mpz_t(), prev.get_mpz_t());
        a(i, j) = v;
      }
    prev = a(k, k);
  }
  return sign * a(n - 1, n - 1);
}

// --- inertia --------------------------------------------------------------------

Inertia inertia(const IntMatrix& m) {
  if (!m.is_symmetric()) throw Error(ErrorCode::NotSymmetric, "inertia needs a symmetric matrix");
  RatMatrix s = to_rational(m);
  std::vector<std::size_t> active(m.rows());
  for (std::size_t i = 0; i < active.size(); ++i) active[i] = i;
  Inertia out;

  auto drop = [&](std::size_t idx) { active.erase(std::find(active.begin(), active.end(), idx)); };

  while (!active.empty()) {
    auto diag = std::find_if(active.begin(), active.end(), [&](std::size_t i) { return s(i, i) != 0; });
    if (diag != active.end()) {
      const std::size_t i = *diag;
      const Rational p = s(i, i);
      (p > 0 ? out.positive : out.negative) += 1;
      drop(i);
      for (std::size_t j : active)
        for (std::size_t k : active) s(j, k) -= s(j, i) * s(i, k) / p;
      continue;
    }
    // all remaining diagonal entries vanish: use a hyperbolic 2x2 pivot
    std::size_t pi = m.rows(), pj = m.rows();
    for (std::size_t i : active) {
      for (std::size_t j : active)
        if (s(i, j) != 0) {
          pi = i;
          pj = j;
          break;
        }
      if (pi != m.rows()) break;
    }
    if (pi == m.rows()) throw Error(ErrorCode::DegenerateMatrix, "symmetric matrix is degenerate");
    const Rational b = s(pi, pj);
    out.positive += 1;
    out.negative += 1;
    drop(pi);
    drop(pj);
    // Schur complement against [[0,b],[b,0]], whose inverse is [[0,1/b],[1/b,0]]
    for (std::size_t j : active)
      for (std::size_t k : active)
        s(j, k) -= (s(j, pi) * s(pj, k) + s(j, pj) * s(pi, k)) / b;
  }
  return out;
}

}  // namespace k3lat
