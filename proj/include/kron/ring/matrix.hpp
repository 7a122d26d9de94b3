#pragma once

#include <cstddef>
#include <optional>
#include <vector>

#include "kron/errors.hpp"

namespace kron {

template <class R>
using Matrix = std::vector<std::vector<typename R::Elem>>;

template <class R>
Matrix<R> identity_matrix(const R& ring, std::size_t n) {
  Matrix<R> I(n, std::vector<typename R::Elem>(n, ring.zero()));
  for (std::size_t i = 0; i < n; ++i) I[i][i] = ring.one();
  return I;
}

template <class R>
Matrix<R> mat_mul(const R& ring, const Matrix<R>& A, const Matrix<R>& B) {
  const std::size_t n = A.size(), k = B.size(), m = k ? B[0].size() : 0;
  Matrix<R> C(n, std::vector<typename R::Elem>(m, ring.zero()));
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t l = 0; l < k; ++l) {
      if (ring.is_zero(A[i][l])) continue;
      for (std::size_t j = 0; j < m; ++j)
        C[i][j] = ring.add(C[i][j], ring.mul(A[i][l], B[l][j]));
    }
  return C;
}

template <class R>
std::vector<typename R::Elem> mat_vec(const R& ring, const Matrix<R>& A,
                                      const std::vector<typename R::Elem>& x) {
  std::vector<typename R::Elem> y(A.size(), ring.zero());
  for (std::size_t i = 0; i < A.size(); ++i)
    for (std::size_t j = 0; j < x.size(); ++j)
      y[i] = ring.add(y[i], ring.mul(A[i][j], x[j]));
  return y;
}

/// Coefficients c_0 = 1, c_1, ..., c_n of det(tI - A) = sum c_k t^(n-k),
/// by Berkowitz's division-free recurrence over the trailing principal
/// blocks.
template <class R>
std::vector<typename R::Elem> berkowitz_charpoly(const R& ring, const Matrix<R>& A) {
  using E = typename R::Elem;
  const std::size_t n = A.size();
  std::vector<E> q{ring.one()};
  for (std::size_t k = 1; k <= n; ++k) {
    const std::size_t i0 = n - k;
    // Toeplitz column: 1, -a, -R C, -R A1 C, ...
    std::vector<E> col(k + 1, ring.zero());
    col[0] = ring.one();
    col[1] = ring.neg(A[i0][i0]);
    std::vector<E> v(k - 1);
    for (std::size_t i = 0; i + 1 < k; ++i) v[i] = A[i0 + 1 + i][i0];
    for (std::size_t t = 2; t <= k; ++t) {
      E dot = ring.zero();
      for (std::size_t j = 0; j + 1 < k; ++j)
        dot = ring.add(dot, ring.mul(A[i0][i0 + 1 + j], v[j]));
      col[t] = ring.neg(dot);
      if (t == k) break;
      std::vector<E> w(k - 1, ring.zero());
      for (std::size_t i = 0; i + 1 < k; ++i)
        for (std::size_t j = 0; j + 1 < k; ++j)
          w[i] = ring.add(w[i], ring.mul(A[i0 + 1 + i][i0 + 1 + j], v[j]));
      v = std::move(w);
    }
    std::vector<E> p(k + 1, ring.zero());
    for (std::size_t i = 0; i <= k; ++i)
      for (std::size_t j = 0; j <= std::min(i, k - 1); ++j)
        p[i] = ring.add(p[i], ring.mul(col[i - j], q[j]));
    q = std::move(p);
  }
  return q;
}

template <class R>
struct DetAdj {
  typename R::Elem det;
  Matrix<R> adj;
};

/// Determinant and adjugate without division, via Cayley-Hamilton:
/// adj A = (-1)^(n+1) (A^(n-1) + c_1 A^(n-2) + ... + c_(n-1) I).
template <class R>
DetAdj<R> det_adjugate(const R& ring, const Matrix<R>& A) {
  const std::size_t n = A.size();
  if (n == 0) return {ring.one(), {}};
  const auto c = berkowitz_charpoly(ring, A);
  auto det = c[n];
  if (n & 1) det = ring.neg(det);
  // Horner: B = A^(n-1) + c_1 A^(n-2) + ... + c_(n-1) I
  Matrix<R> B = identity_matrix(ring, n);
  for (std::size_t k = 1; k < n; ++k) {
    B = mat_mul(ring, B, A);
    for (std::size_t i = 0; i < n; ++i) B[i][i] = ring.add(B[i][i], c[k]);
  }
  if ((n + 1) & 1) {
    for (auto& row : B)
      for (auto& x : row) x = ring.neg(x);
  }
  return {det, std::move(B)};
}

/// Inverse over a field by Gauss-Jordan elimination.
template <class F>
Matrix<F> mat_inverse(const F& field, Matrix<F> A) {
  const std::size_t n = A.size();
  Matrix<F> I = identity_matrix(field, n);
  for (std::size_t col = 0; col < n; ++col) {
    std::size_t piv = col;
    while (piv < n && field.is_zero(A[piv][col])) ++piv;
    if (piv == n) throw SingularMatrix("matrix is singular");
    std::swap(A[piv], A[col]);
    std::swap(I[piv], I[col]);
    const auto s = field.inv(A[col][col]);
    for (std::size_t j = 0; j < n; ++j) {
      A[col][j] = field.mul(A[col][j], s);
      I[col][j] = field.mul(I[col][j], s);
    }
    for (std::size_t i = 0; i < n; ++i) {
      if (i == col || field.is_zero(A[i][col])) continue;
      const auto f = A[i][col];
      for (std::size_t j = 0; j < n; ++j) {
        A[i][j] = field.sub(A[i][j], field.mul(f, A[col][j]));
        I[i][j] = field.sub(I[i][j], field.mul(f, I[col][j]));
      }
    }
  }
  return I;
}

/// Solves A x = b over a field for a full-column-rank A with at least as
/// many rows as columns; nullopt when the system is inconsistent.
template <class F>
std::optional<std::vector<typename F::Elem>> solve_overdetermined(
    const F& field, Matrix<F> A, std::vector<typename F::Elem> b) {
  const std::size_t rows = A.size(), cols = rows ? A[0].size() : 0;
  std::size_t r = 0;
  std::vector<std::size_t> pivots;
  for (std::size_t c = 0; c < cols && r < rows; ++c) {
    std::size_t piv = r;
    while (piv < rows && field.is_zero(A[piv][c])) ++piv;
    if (piv == rows) throw SingularMatrix("solve: rank deficient");
    std::swap(A[piv], A[r]);
    std::swap(b[piv], b[r]);
    const auto s = field.inv(A[r][c]);
    for (std::size_t j = c; j < cols; ++j) A[r][j] = field.mul(A[r][j], s);
    b[r] = field.mul(b[r], s);
    for (std::size_t i = 0; i < rows; ++i) {
      if (i == r || field.is_zero(A[i][c])) continue;
      const auto f = A[i][c];
      for (std::size_t j = c; j < cols; ++j) A[i][j] = field.sub(A[i][j], field.mul(f, A[r][j]));
      b[i] = field.sub(b[i], field.mul(f, b[r]));
    }
    pivots.push_back(c);
    ++r;
  }
  for (std::size_t i = r; i < rows; ++i)
    if (!field.is_zero(b[i])) return std::nullopt;
  std::vector<typename F::Elem> x(cols, field.zero());
  for (std::size_t i = 0; i < pivots.size(); ++i) x[pivots[i]] = b[i];
  return x;
}

}  // namespace kron
