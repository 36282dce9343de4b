#ifndef TUBES_LINALG_HPP
#define TUBES_LINALG_HPP

#include "tubes/polynomial.hpp"

#include <optional>
#include <stdexcept>
#include <utility>
#include <vector>

namespace tubes {

/// Dense row-major matrix over an exact field (or polynomial ring).
template <class T>
class Matrix {
 public:
  Matrix() = default;
  Matrix(std::size_t rows, std::size_t cols, const T& fill = T{}) : rows_(rows), cols_(cols), data_(rows * cols, fill) {}
  Matrix(std::vector<std::vector<T>> rows) {  // NOLINT
    rows_ = rows.size();
    cols_ = rows.empty() ? 0 : rows[0].size();
    data_.reserve(rows_ * cols_);
    for (auto& r : rows) {
      if (r.size() != cols_) throw std::invalid_argument("ragged matrix");
      for (auto& x : r) data_.push_back(std::move(x));
    }
  }

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }
  T& operator()(std::size_t i, std::size_t j) { return data_[i * cols_ + j]; }
  const T& operator()(std::size_t i, std::size_t j) const { return data_[i * cols_ + j]; }

  std::vector<T> row(std::size_t i) const {
    return std::vector<T>(data_.begin() + static_cast<long>(i * cols_), data_.begin() + static_cast<long>((i + 1) * cols_));
  }

  void swap_rows(std::size_t a, std::size_t b) {
    if (a == b) return;
    for (std::size_t j = 0; j < cols_; ++j) std::swap((*this)(a, j), (*this)(b, j));
  }

  Matrix transpose() const {
    Matrix t(cols_, rows_);
    for (std::size_t i = 0; i < rows_; ++i)
      for (std::size_t j = 0; j < cols_; ++j) t(j, i) = (*this)(i, j);
    return t;
  }

  friend bool operator==(const Matrix& a, const Matrix& b) {
    return a.rows_ == b.rows_ && a.cols_ == b.cols_ && a.data_ == b.data_;
  }

 private:
  std::size_t rows_ = 0, cols_ = 0;
  std::vector<T> data_;
};

using QMatrix = Matrix<Rational>;
using QVector = std::vector<Rational>;

/// Fraction-free echelon form of an integer matrix. Returns pivot columns.
/// Entries below each pivot are zeroed; all divisions are exact.
inline std::vector<std::size_t> bareiss_echelon(Matrix<Integer>& a) {
  std::vector<std::size_t> pivots;
  Integer prev = 1;
  std::size_t r = 0;
  for (std::size_t c = 0; c < a.cols() && r < a.rows(); ++c) {
    std::size_t p = r;
    while (p < a.rows() && sgn(a(p, c)) == 0) ++p;
    if (p == a.rows()) continue;
    a.swap_rows(p, r);
    for (std::size_t i = r + 1; i < a.rows(); ++i) {
      for (std::size_t j = c + 1; j < a.cols(); ++j) {
        Integer t = a(r, c) * a(i, j) - a(i, c) * a(r, j);
        if (!mpz_divisible_p(t.get_mpz_t(), prev.get_mpz_t())) throw std::logic_error("Bareiss step not exact");
        mpz_divexact(t.get_mpz_t(), t.get_mpz_t(), prev.get_mpz_t());
        a(i, j) = std::move(t);
      }
      a(i, c) = 0;
    }
    prev = a(r, c);
    pivots.push_back(c);
    ++r;
  }
  return pivots;
}

/// Clears denominators row by row.
inline Matrix<Integer> integer_rows(const QMatrix& m) {
  Matrix<Integer> out(m.rows(), m.cols());
  for (std::size_t i = 0; i < m.rows(); ++i) {
    Integer l = 1;
    for (std::size_t j = 0; j < m.cols(); ++j) mpz_lcm(l.get_mpz_t(), l.get_mpz_t(), m(i, j).get_den_mpz_t());
    for (std::size_t j = 0; j < m.cols(); ++j) {
      Rational v = m(i, j) * l;
      out(i, j) = v.get_num();
    }
  }
  return out;
}

inline std::size_t rank(const QMatrix& m) {
  Matrix<Integer> a = integer_rows(m);
  return bareiss_echelon(a).size();
}

/// Reduced row echelon form over a field; returns pivot columns.
template <class K>
std::vector<std::size_t> rref(Matrix<K>& a) {
  std::vector<std::size_t> pivots;
  std::size_t r = 0;
  for (std::size_t c = 0; c < a.cols() && r < a.rows(); ++c) {
    std::size_t p = r;
    while (p < a.rows() && scalar_traits<K>::is_zero(a(p, c))) ++p;
    if (p == a.rows()) continue;
    a.swap_rows(p, r);
    K inv = K(K(1) / a(r, c));
    for (std::size_t j = c; j < a.cols(); ++j) a(r, j) *= inv;
    for (std::size_t i = 0; i < a.rows(); ++i) {
      if (i == r || scalar_traits<K>::is_zero(a(i, c))) continue;
      K f = a(i, c);
      for (std::size_t j = c; j < a.cols(); ++j) a(i, j) -= f * a(r, j);
    }
    pivots.push_back(c);
    ++r;
  }
  return pivots;
}

template <class K>
std::size_t field_rank(Matrix<K> a) {
  return rref(a).size();
}

/// Basis of {v : M v = 0}, computed from a fraction-free echelon form.
inline std::vector<QVector> kernel_basis(const QMatrix& m) {
  const std::size_t n = m.cols();
  Matrix<Integer> a = integer_rows(m);
  std::vector<std::size_t> pivots = bareiss_echelon(a);
  std::vector<bool> is_pivot(n, false);
  for (auto c : pivots) is_pivot[c] = true;
  std::vector<QVector> basis;
  for (std::size_t f = 0; f < n; ++f) {
    if (is_pivot[f]) continue;
    QVector v(n, Rational(0));
    v[f] = 1;
    // Back-substitute through the echelon rows.
    for (std::size_t k = pivots.size(); k-- > 0;) {
      std::size_t c = pivots[k];
      Rational s = 0;
      for (std::size_t j = c + 1; j < n; ++j)
        if (sgn(a(k, j)) != 0 && sgn(v[j]) != 0) s += Rational(a(k, j)) * v[j];
      v[c] = -s / Rational(a(k, c));
    }
    basis.push_back(std::move(v));
  }
  return basis;
}

/// Some x with A x = b, or nullopt if inconsistent.
template <class K>
std::optional<std::vector<K>> solve_linear(const Matrix<K>& a, const std::vector<K>& b) {
  if (b.size() != a.rows()) throw std::invalid_argument("right-hand side has wrong length");
  Matrix<K> aug(a.rows(), a.cols() + 1);
  for (std::size_t i = 0; i < a.rows(); ++i) {
    for (std::size_t j = 0; j < a.cols(); ++j) aug(i, j) = a(i, j);
    aug(i, a.cols()) = b[i];
  }
  auto pivots = rref(aug);
  if (!pivots.empty() && pivots.back() == a.cols()) return std::nullopt;
  std::vector<K> x(a.cols(), K(0));
  for (std::size_t k = 0; k < pivots.size(); ++k) x[pivots[k]] = aug(k, a.cols());
  return x;
}

/// Determinant of a square polynomial matrix by fraction-free elimination
/// with exact polynomial division.
template <class K>
Polynomial<K> det_exact(const Matrix<Polynomial<K>>& m) {
  if (m.rows() != m.cols()) throw std::invalid_argument("determinant of non-square matrix");
  const std::size_t n = m.rows();
  VarList vars = make_vars({});
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) vars = union_vars(vars, m(i, j).vars());
  if (n == 0) return Polynomial<K>(vars, K(1));
  Matrix<Polynomial<K>> a(n, n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) a(i, j) = m(i, j).with_vars(vars);
  Polynomial<K> prev(vars, K(1));
  bool negate = false;
  for (std::size_t k = 0; k + 1 < n; ++k) {
    std::size_t p = k;
    while (p < n && a(p, k).is_zero()) ++p;
    if (p == n) return Polynomial<K>(vars);
    if (p != k) {
      a.swap_rows(p, k);
      negate = !negate;
    }
    for (std::size_t i = k + 1; i < n; ++i) {
      for (std::size_t j = k + 1; j < n; ++j) {
        Polynomial<K> t = a(k, k) * a(i, j) - a(i, k) * a(k, j);
        a(i, j) = prev.is_constant() ? t * K(K(1) / prev.constant_term()) : t.divide_exact(prev);
      }
      a(i, k) = Polynomial<K>(vars);
    }
    prev = a(k, k);
  }
  return negate ? -a(n - 1, n - 1) : a(n - 1, n - 1);
}

}  // namespace tubes

#endif
