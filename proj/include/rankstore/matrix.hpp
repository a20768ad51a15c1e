#pragma once

#include <algorithm>
#include <concepts>
#include <cstddef>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "rankstore/errors.hpp"
#include "rankstore/prime_field.hpp"

namespace rankstore {

/// Anything that exposes field operations on its value_type. PrimeField and
/// ExtField both model this, so the elimination routines below serve F_q and
/// F_{q^N} alike.
template <class F>
concept FieldLike = requires(const F& f, const typename F::value_type& a) {
  { f.zero() } -> std::convertible_to<typename F::value_type>;
  { f.one() } -> std::convertible_to<typename F::value_type>;
  { f.add(a, a) } -> std::convertible_to<typename F::value_type>;
  { f.sub(a, a) } -> std::convertible_to<typename F::value_type>;
  { f.mul(a, a) } -> std::convertible_to<typename F::value_type>;
  { f.inv(a) } -> std::convertible_to<typename F::value_type>;
  { f.is_zero(a) } -> std::convertible_to<bool>;
};

/// Dense row-major matrix.
template <class T>
class Matrix {
 public:
  Matrix() = default;
  Matrix(std::size_t rows, std::size_t cols, const T& fill = T{})
      : rows_(rows), cols_(cols), data_(rows * cols, fill) {}

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }
  bool empty() const { return data_.empty(); }

  T& operator()(std::size_t r, std::size_t c) { return data_[r * cols_ + c]; }
  const T& operator()(std::size_t r, std::size_t c) const { return data_[r * cols_ + c]; }

  std::span<T> row(std::size_t r) { return {data_.data() + r * cols_, cols_}; }
  std::span<const T> row(std::size_t r) const { return {data_.data() + r * cols_, cols_}; }

  std::vector<T> column(std::size_t c) const {
    std::vector<T> out;
    out.reserve(rows_);
    for (std::size_t r = 0; r < rows_; ++r) out.push_back((*this)(r, c));
    return out;
  }

  void swap_rows(std::size_t a, std::size_t b) {
    if (a == b) return;
    for (std::size_t c = 0; c < cols_; ++c) std::swap((*this)(a, c), (*this)(b, c));
  }

  const std::vector<T>& data() const { return data_; }

  bool operator==(const Matrix&) const = default;

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<T> data_;
};

/// Matrix over the base field F_q.
using BaseMatrix = Matrix<Digit>;

template <class T>
Matrix<T> transpose(const Matrix<T>& m) {
  Matrix<T> t(m.cols(), m.rows());
  for (std::size_t r = 0; r < m.rows(); ++r)
    for (std::size_t c = 0; c < m.cols(); ++c) t(c, r) = m(r, c);
  return t;
}

template <class T>
Matrix<T> hstack(const Matrix<T>& a, const Matrix<T>& b) {
  if (a.empty()) return b;
  if (b.empty()) return a;
  if (a.rows() != b.rows()) throw ParameterError("hstack: row count mismatch");
  Matrix<T> out(a.rows(), a.cols() + b.cols());
  for (std::size_t r = 0; r < a.rows(); ++r) {
    for (std::size_t c = 0; c < a.cols(); ++c) out(r, c) = a(r, c);
    for (std::size_t c = 0; c < b.cols(); ++c) out(r, a.cols() + c) = b(r, c);
  }
  return out;
}

template <class T>
Matrix<T> vstack(const Matrix<T>& a, const Matrix<T>& b) {
  if (a.empty()) return b;
  if (b.empty()) return a;
  if (a.cols() != b.cols()) throw ParameterError("vstack: column count mismatch");
  Matrix<T> out(a.rows() + b.rows(), a.cols());
  for (std::size_t r = 0; r < a.rows(); ++r)
    for (std::size_t c = 0; c < a.cols(); ++c) out(r, c) = a(r, c);
  for (std::size_t r = 0; r < b.rows(); ++r)
    for (std::size_t c = 0; c < a.cols(); ++c) out(a.rows() + r, c) = b(r, c);
  return out;
}

template <class T>
Matrix<T> submatrix(const Matrix<T>& m, std::size_t r0, std::size_t c0, std::size_t rows, std::size_t cols) {
  if (r0 + rows > m.rows() || c0 + cols > m.cols()) throw ParameterError("submatrix out of range");
  Matrix<T> out(rows, cols);
  for (std::size_t r = 0; r < rows; ++r)
    for (std::size_t c = 0; c < cols; ++c) out(r, c) = m(r0 + r, c0 + c);
  return out;
}

template <FieldLike F>
Matrix<typename F::value_type> identity(const F& f, std::size_t n) {
  Matrix<typename F::value_type> m(n, n, f.zero());
  for (std::size_t i = 0; i < n; ++i) m(i, i) = f.one();
  return m;
}

template <FieldLike F>
Matrix<typename F::value_type> multiply(const F& f, const Matrix<typename F::value_type>& a,
                                        const Matrix<typename F::value_type>& b) {
  if (a.cols() != b.rows()) throw ParameterError("multiply: inner dimension mismatch");
  Matrix<typename F::value_type> out(a.rows(), b.cols(), f.zero());
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t k = 0; k < a.cols(); ++k) {
      const auto& aik = a(i, k);
      if (f.is_zero(aik)) continue;
      for (std::size_t j = 0; j < b.cols(); ++j) out(i, j) = f.add(out(i, j), f.mul(aik, b(k, j)));
    }
  return out;
}

template <FieldLike F>
Matrix<typename F::value_type> add(const F& f, const Matrix<typename F::value_type>& a,
                                   const Matrix<typename F::value_type>& b) {
  if (a.rows() != b.rows() || a.cols() != b.cols()) throw ParameterError("add: shape mismatch");
  Matrix<typename F::value_type> out = a;
  for (std::size_t r = 0; r < a.rows(); ++r)
    for (std::size_t c = 0; c < a.cols(); ++c) out(r, c) = f.add(a(r, c), b(r, c));
  return out;
}

template <FieldLike F>
bool is_zero_matrix(const F& f, const Matrix<typename F::value_type>& m) {
  return std::all_of(m.data().begin(), m.data().end(), [&](const auto& v) { return f.is_zero(v); });
}

/// Reduced row echelon form together with the pivot columns.
template <class T>
struct Echelon {
  Matrix<T> rref;
  std::vector<std::size_t> pivot_cols;
  std::size_t rank() const { return pivot_cols.size(); }
};

/// Gauss-Jordan elimination. Pivot choice is deterministic: the first row at or
/// below the current one with a nonzero entry in the leftmost unfinished column.
template <FieldLike F>
Echelon<typename F::value_type> row_reduce(const F& f, Matrix<typename F::value_type> m) {
  Echelon<typename F::value_type> out;
  std::size_t r = 0;
  for (std::size_t c = 0; c < m.cols() && r < m.rows(); ++c) {
    std::size_t p = r;
    while (p < m.rows() && f.is_zero(m(p, c))) ++p;
    if (p == m.rows()) continue;
    m.swap_rows(r, p);
    const auto inv = f.inv(m(r, c));
    for (std::size_t j = c; j < m.cols(); ++j) m(r, j) = f.mul(m(r, j), inv);
    for (std::size_t i = 0; i < m.rows(); ++i) {
      if (i == r || f.is_zero(m(i, c))) continue;
      const auto factor = m(i, c);
      for (std::size_t j = c; j < m.cols(); ++j) m(i, j) = f.sub(m(i, j), f.mul(factor, m(r, j)));
    }
    out.pivot_cols.push_back(c);
    ++r;
  }
  out.rref = std::move(m);
  return out;
}

template <FieldLike F>
std::size_t rank(const F& f, const Matrix<typename F::value_type>& m) {
  return row_reduce(f, m).rank();
}

/// Basis of the right nullspace {x : A x = 0}, one vector per free column.
template <FieldLike F>
std::vector<std::vector<typename F::value_type>> nullspace_from_echelon(
    const F& f, const Echelon<typename F::value_type>& e, std::size_t cols) {
  std::vector<std::vector<typename F::value_type>> basis;
  std::vector<bool> is_pivot(cols, false);
  for (auto c : e.pivot_cols) is_pivot[c] = true;
  for (std::size_t free = 0; free < cols; ++free) {
    if (is_pivot[free]) continue;
    std::vector<typename F::value_type> v(cols, f.zero());
    v[free] = f.one();
    for (std::size_t i = 0; i < e.pivot_cols.size(); ++i) v[e.pivot_cols[i]] = f.sub(f.zero(), e.rref(i, free));
    basis.push_back(std::move(v));
  }
  return basis;
}

template <FieldLike F>
std::vector<std::vector<typename F::value_type>> nullspace(const F& f, const Matrix<typename F::value_type>& a) {
  return nullspace_from_echelon(f, row_reduce(f, a), a.cols());
}

template <class T>
struct LinearSolution {
  std::optional<std::vector<T>> x;  ///< empty when the system is inconsistent
  std::size_t rank = 0;
  std::vector<std::vector<T>> nullspace;
};

/// Solves A x = b. Returns one particular solution (free variables zero), the
/// rank of A and a nullspace basis; x is empty when no solution exists.
template <FieldLike F>
LinearSolution<typename F::value_type> solve_linear(const F& f, const Matrix<typename F::value_type>& a,
                                                    std::span<const typename F::value_type> b) {
  if (a.rows() != b.size())
    throw ParameterError("solve_linear: A has " + std::to_string(a.rows()) + " rows but b has " +
                         std::to_string(b.size()) + " entries");
  using T = typename F::value_type;
  Matrix<T> aug(a.rows(), a.cols() + 1, f.zero());
  for (std::size_t r = 0; r < a.rows(); ++r) {
    for (std::size_t c = 0; c < a.cols(); ++c) aug(r, c) = a(r, c);
    aug(r, a.cols()) = b[r];
  }
  auto e = row_reduce(f, std::move(aug));
  LinearSolution<T> out;
  bool consistent = true;
  if (!e.pivot_cols.empty() && e.pivot_cols.back() == a.cols()) {
    consistent = false;
    e.pivot_cols.pop_back();
  }
  out.rank = e.rank();
  if (consistent) {
    std::vector<T> x(a.cols(), f.zero());
    for (std::size_t i = 0; i < e.pivot_cols.size(); ++i) x[e.pivot_cols[i]] = e.rref(i, a.cols());
    out.x = std::move(x);
  }
  // Nullspace of A: the rref restricted to A's columns is the rref of A.
  out.nullspace = nullspace_from_echelon(f, e, a.cols());
  return out;
}

template <FieldLike F>
LinearSolution<typename F::value_type> solve_linear(const F& f, const Matrix<typename F::value_type>& a,
                                                    const std::vector<typename F::value_type>& b) {
  return solve_linear(f, a, std::span<const typename F::value_type>(b));
}

/// Inverse of a square matrix, or nullopt when singular.
template <FieldLike F>
std::optional<Matrix<typename F::value_type>> inverse(const F& f, const Matrix<typename F::value_type>& a) {
  if (a.rows() != a.cols()) throw ParameterError("inverse: matrix is not square");
  const std::size_t n = a.rows();
  auto e = row_reduce(f, hstack(a, identity(f, n)));
  if (e.rank() < n || e.pivot_cols[n - 1] != n - 1) return std::nullopt;
  return submatrix(e.rref, 0, n, n, n);
}

/// Solves X A = B for X (row-vector convention), or nullopt when some row of B
/// is outside the row space of A.
template <FieldLike F>
std::optional<Matrix<typename F::value_type>> solve_left(const F& f, const Matrix<typename F::value_type>& a,
                                                         const Matrix<typename F::value_type>& b) {
  if (a.cols() != b.cols()) throw ParameterError("solve_left: column count mismatch");
  using T = typename F::value_type;
  // A^T X^T = B^T, solved for all right-hand sides in one elimination.
  const auto at = transpose(a);
  auto e = row_reduce(f, hstack(at, transpose(b)));
  const std::size_t n = at.cols();
  Matrix<T> x(b.rows(), a.rows(), f.zero());
  for (std::size_t i = 0; i < e.pivot_cols.size(); ++i) {
    const auto pc = e.pivot_cols[i];
    if (pc >= n) return std::nullopt;
    for (std::size_t j = 0; j < b.rows(); ++j) x(j, pc) = e.rref(i, n + j);
  }
  return x;
}

}  // namespace rankstore
