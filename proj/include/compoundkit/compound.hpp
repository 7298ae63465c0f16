#pragma once

#include <stdexcept>
#include <vector>

#include "compoundkit/index_sets.hpp"
#include "compoundkit/matrix.hpp"

namespace ck {

/// A k-compound together with the Q(k,.) enumerations addressing its entries.
template <class T>
struct compound_matrix {
  int base_rows = 0;
  int base_cols = 0;
  int order = 0;
  matrix<T> entries;
  std::vector<index_set> row_index;
  std::vector<index_set> col_index;
};

using rcompound = compound_matrix<double>;

template <class T>
matrix<T> submatrix(const matrix<T>& a, const index_set& alpha, const index_set& beta) {
  matrix<T> s(alpha.k(), beta.k());
  for (int i = 0; i < alpha.k(); ++i)
    for (int j = 0; j < beta.k(); ++j) {
      const int r = alpha.elements[i] - 1;
      const int c = beta.elements[j] - 1;
      if (r < 0 || r >= a.rows() || c < 0 || c >= a.cols())
        throw std::invalid_argument("submatrix: index out of range");
      s(i, j) = a(r, c);
    }
  return s;
}

/// The minor A(alpha|beta) = det A[alpha|beta].
template <class T>
T minor_of(const matrix<T>& a, const index_set& alpha, const index_set& beta) {
  if (alpha.k() != beta.k()) throw std::invalid_argument("minor: |alpha| != |beta|");
  return det(submatrix(a, alpha, beta));
}

/// k-multiplicative compound: all k-minors in lexicographic row/column order.
template <class T>
compound_matrix<T> mult_compound(const matrix<T>& a, int k) {
  if (k < 1 || k > std::min(a.rows(), a.cols()))
    throw std::invalid_argument("mult_compound: need 1 <= k <= min(rows, cols)");
  compound_matrix<T> c;
  c.base_rows = a.rows();
  c.base_cols = a.cols();
  c.order = k;
  c.row_index = index_sets::enumerate(k, a.rows());
  c.col_index = index_sets::enumerate(k, a.cols());
  const std::uint64_t rr = static_cast<std::uint64_t>(c.row_index.size());
  const std::uint64_t cc = static_cast<std::uint64_t>(c.col_index.size());
  if (rr * cc > max_compound_dim())
    throw std::invalid_argument("mult_compound: entry count exceeds guardrail");
  c.entries = matrix<T>(static_cast<int>(rr), static_cast<int>(cc));
  for (size_t i = 0; i < c.row_index.size(); ++i)
    for (size_t j = 0; j < c.col_index.size(); ++j)
      c.entries(static_cast<int>(i), static_cast<int>(j)) =
          minor_of(a, c.row_index[i], c.col_index[j]);
  return c;
}

namespace detail {

// Positions (1-based) of the unique differing element of two index sets that
// agree in all remaining elements; returns false otherwise.
inline bool single_difference(const index_set& alpha, const index_set& beta, int& pos_a,
                              int& pos_b) {
  const int k = alpha.k();
  std::vector<int> only_a, only_b;
  {
    size_t i = 0, j = 0;
    while (i < alpha.elements.size() || j < beta.elements.size()) {
      if (i < alpha.elements.size() &&
          (j == beta.elements.size() || alpha.elements[i] < beta.elements[j])) {
        only_a.push_back(static_cast<int>(i));
        ++i;
      } else if (j < beta.elements.size() &&
                 (i == alpha.elements.size() || beta.elements[j] < alpha.elements[i])) {
        only_b.push_back(static_cast<int>(j));
        ++j;
      } else {
        ++i;
        ++j;
      }
    }
  }
  if (only_a.size() != 1 || only_b.size() != 1) return false;
  pos_a = only_a[0] + 1;
  pos_b = only_b[0] + 1;
  (void)k;
  return true;
}

}  // namespace detail

/// k-additive compound by the explicit entry formula: diagonal entries are the
/// k-fold traces over alpha; entries whose index sets differ in exactly one
/// element i_l != j_m equal (-1)^(l+m) a(i_l, j_m); all other entries vanish.
template <class T>
compound_matrix<T> add_compound(const matrix<T>& a, int k) {
  if (!a.is_square()) throw std::invalid_argument("add_compound: matrix not square");
  if (k < 1 || k > a.rows()) throw std::invalid_argument("add_compound: need 1 <= k <= n");
  compound_matrix<T> c;
  c.base_rows = c.base_cols = a.rows();
  c.order = k;
  c.row_index = index_sets::enumerate(k, a.rows());
  c.col_index = c.row_index;
  const int r = static_cast<int>(c.row_index.size());
  c.entries = matrix<T>(r, r);
  for (int i = 0; i < r; ++i) {
    const index_set& alpha = c.row_index[i];
    for (int j = 0; j < r; ++j) {
      const index_set& beta = c.col_index[j];
      if (i == j) {
        T s{};
        for (int e : alpha.elements) s += a(e - 1, e - 1);
        c.entries(i, j) = s;
        continue;
      }
      int pa = 0, pb = 0;
      if (detail::single_difference(alpha, beta, pa, pb)) {
        const int row = alpha.elements[pa - 1] - 1;
        const int col = beta.elements[pb - 1] - 1;
        const double sign = ((pa + pb) % 2 == 0) ? 1.0 : -1.0;
        c.entries(i, j) = static_cast<T>(sign) * a(row, col);
      }
    }
  }
  return c;
}

/// Finite-difference oracle for add_compound: ((I + eps A)^(k) - I) / eps.
template <class T>
compound_matrix<T> add_compound_via_derivative(const matrix<T>& a, int k, double eps) {
  if (!a.is_square())
    throw std::invalid_argument("add_compound_via_derivative: matrix not square");
  if (!(eps > 0.0) || eps > 1e-3)
    throw std::invalid_argument("add_compound_via_derivative: eps must lie in (0, 1e-3]");
  matrix<T> shifted = matrix<T>::identity(a.rows()) + eps * a;
  compound_matrix<T> c = mult_compound(shifted, k);
  const int r = c.entries.rows();
  for (int i = 0; i < r; ++i)
    for (int j = 0; j < r; ++j) {
      T v = c.entries(i, j);
      if (i == j) v -= T{1};
      c.entries(i, j) = v / eps;
    }
  return c;
}

/// det(Y^T X) evaluated as the inner product of the compound vectors Y^(k), X^(k).
template <class T>
T gram_det(const matrix<T>& x, const matrix<T>& y) {
  if (x.rows() != y.rows() || x.cols() != y.cols())
    throw std::invalid_argument("gram_det: shape mismatch");
  if (x.cols() > x.rows()) throw std::invalid_argument("gram_det: need k <= n");
  const int k = x.cols();
  compound_matrix<T> xk = mult_compound(x, k);
  compound_matrix<T> yk = mult_compound(y, k);
  T s{};
  for (int i = 0; i < xk.entries.rows(); ++i) s += yk.entries(i, 0) * xk.entries(i, 0);
  return s;
}

/// det(AB) for A n-by-m, B m-by-n via the minor-sum expansion; zero when n > m.
template <class T>
T det_product_rectangular(const matrix<T>& a, const matrix<T>& b) {
  if (a.cols() != b.rows() || a.rows() != b.cols())
    throw std::invalid_argument("det_product_rectangular: shapes must be n x m and m x n");
  const int n = a.rows();
  const int m = a.cols();
  if (n > m) return T{};
  if (n == 0) return T{1};
  index_set full;
  full.n = n;
  for (int i = 1; i <= n; ++i) full.elements.push_back(i);
  T s{};
  for (const index_set& alpha : index_sets::enumerate(n, m)) {
    index_set alpha_rows = alpha;  // same tuple, ground set m, used on B's rows
    s += minor_of(a, full, alpha) * minor_of(b, alpha_rows, full);
  }
  return s;
}

}  // namespace ck
