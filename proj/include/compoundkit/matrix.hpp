#pragma once

#include <algorithm>
#include <cmath>
#include <complex>
#include <initializer_list>
#include <stdexcept>
#include <string>
#include <vector>

namespace ck {

using cplx = std::complex<double>;

template <class T>
inline double abs_of(const T& v) {
  return std::abs(v);
}

/// Dense row-major matrix over double or std::complex<double>.
template <class T>
class matrix {
 public:
  matrix() = default;

  matrix(int rows, int cols)
      : rows_(rows), cols_(cols), data_(checked_size(rows, cols), T{}) {}

  matrix(int rows, int cols, std::initializer_list<T> vals)
      : rows_(rows), cols_(cols), data_(vals) {
    if (data_.size() != checked_size(rows, cols))
      throw std::invalid_argument("matrix: initializer size mismatch");
  }

  matrix(int rows, int cols, std::vector<T> vals)
      : rows_(rows), cols_(cols), data_(std::move(vals)) {
    if (data_.size() != checked_size(rows, cols))
      throw std::invalid_argument("matrix: data size mismatch");
  }

  static matrix identity(int n) {
    matrix m(n, n);
    for (int i = 0; i < n; ++i) m(i, i) = T{1};
    return m;
  }

  static matrix diagonal(const std::vector<T>& d) {
    matrix m(static_cast<int>(d.size()), static_cast<int>(d.size()));
    for (int i = 0; i < m.rows(); ++i) m(i, i) = d[i];
    return m;
  }

  int rows() const { return rows_; }
  int cols() const { return cols_; }
  bool empty() const { return data_.empty(); }
  bool is_square() const { return rows_ == cols_; }

  T& operator()(int i, int j) { return data_[static_cast<size_t>(i) * cols_ + j]; }
  const T& operator()(int i, int j) const { return data_[static_cast<size_t>(i) * cols_ + j]; }

  const std::vector<T>& data() const { return data_; }
  std::vector<T>& data() { return data_; }

  std::vector<T> col(int j) const {
    std::vector<T> c(rows_);
    for (int i = 0; i < rows_; ++i) c[i] = (*this)(i, j);
    return c;
  }

  std::vector<T> row(int i) const {
    std::vector<T> r(cols_);
    for (int j = 0; j < cols_; ++j) r[j] = (*this)(i, j);
    return r;
  }

  void set_col(int j, const std::vector<T>& c) {
    for (int i = 0; i < rows_; ++i) (*this)(i, j) = c[i];
  }

  matrix transpose() const {
    matrix t(cols_, rows_);
    for (int i = 0; i < rows_; ++i)
      for (int j = 0; j < cols_; ++j) t(j, i) = (*this)(i, j);
    return t;
  }

  bool all_finite() const {
    for (const T& v : data_)
      if (!std::isfinite(abs_of(v))) return false;
    return true;
  }

  double max_abs() const {
    double m = 0.0;
    for (const T& v : data_) m = std::max(m, abs_of(v));
    return m;
  }

  /// Induced infinity norm (max absolute row sum).
  double inf_norm() const {
    double m = 0.0;
    for (int i = 0; i < rows_; ++i) {
      double s = 0.0;
      for (int j = 0; j < cols_; ++j) s += abs_of((*this)(i, j));
      m = std::max(m, s);
    }
    return m;
  }

  /// Induced one norm (max absolute column sum).
  double one_norm() const {
    double m = 0.0;
    for (int j = 0; j < cols_; ++j) {
      double s = 0.0;
      for (int i = 0; i < rows_; ++i) s += abs_of((*this)(i, j));
      m = std::max(m, s);
    }
    return m;
  }

  double frobenius_norm() const {
    double s = 0.0;
    for (const T& v : data_) s += abs_of(v) * abs_of(v);
    return std::sqrt(s);
  }

 private:
  static size_t checked_size(int rows, int cols) {
    if (rows < 0 || cols < 0) throw std::invalid_argument("matrix: negative dimension");
    return static_cast<size_t>(rows) * static_cast<size_t>(cols);
  }

  int rows_ = 0;
  int cols_ = 0;
  std::vector<T> data_;
};

using rmatrix = matrix<double>;
using cmatrix = matrix<cplx>;

template <class T>
matrix<T> operator+(const matrix<T>& a, const matrix<T>& b) {
  if (a.rows() != b.rows() || a.cols() != b.cols())
    throw std::invalid_argument("matrix+: shape mismatch");
  matrix<T> r = a;
  for (size_t i = 0; i < r.data().size(); ++i) r.data()[i] += b.data()[i];
  return r;
}

template <class T>
matrix<T> operator-(const matrix<T>& a, const matrix<T>& b) {
  if (a.rows() != b.rows() || a.cols() != b.cols())
    throw std::invalid_argument("matrix-: shape mismatch");
  matrix<T> r = a;
  for (size_t i = 0; i < r.data().size(); ++i) r.data()[i] -= b.data()[i];
  return r;
}

template <class T>
matrix<T> operator-(const matrix<T>& a) {
  matrix<T> r = a;
  for (T& v : r.data()) v = -v;
  return r;
}

template <class T, class S>
matrix<T> operator*(S s, const matrix<T>& a) {
  matrix<T> r = a;
  for (T& v : r.data()) v = static_cast<T>(s) * v;
  return r;
}

template <class T>
matrix<T> operator*(const matrix<T>& a, const matrix<T>& b) {
  if (a.cols() != b.rows()) throw std::invalid_argument("matrix*: shape mismatch");
  matrix<T> r(a.rows(), b.cols());
  for (int i = 0; i < a.rows(); ++i)
    for (int k = 0; k < a.cols(); ++k) {
      const T aik = a(i, k);
      if (aik == T{}) continue;
      for (int j = 0; j < b.cols(); ++j) r(i, j) += aik * b(k, j);
    }
  return r;
}

template <class T>
std::vector<T> operator*(const matrix<T>& a, const std::vector<T>& x) {
  if (a.cols() != static_cast<int>(x.size()))
    throw std::invalid_argument("matrix*vector: shape mismatch");
  std::vector<T> y(a.rows(), T{});
  for (int i = 0; i < a.rows(); ++i)
    for (int j = 0; j < a.cols(); ++j) y[i] += a(i, j) * x[j];
  return y;
}

inline cmatrix to_complex(const rmatrix& a) {
  cmatrix c(a.rows(), a.cols());
  for (int i = 0; i < a.rows(); ++i)
    for (int j = 0; j < a.cols(); ++j) c(i, j) = cplx(a(i, j), 0.0);
  return c;
}

inline cmatrix conj_transpose(const cmatrix& a) {
  cmatrix t(a.cols(), a.rows());
  for (int i = 0; i < a.rows(); ++i)
    for (int j = 0; j < a.cols(); ++j) t(j, i) = std::conj(a(i, j));
  return t;
}

template <class T>
double vec_norm2(const std::vector<T>& x) {
  double s = 0.0;
  for (const T& v : x) s += abs_of(v) * abs_of(v);
  return std::sqrt(s);
}

template <class T>
double vec_norm_inf(const std::vector<T>& x) {
  double m = 0.0;
  for (const T& v : x) m = std::max(m, abs_of(v));
  return m;
}

// ---------------------------------------------------------------------------
// LU decomposition with partial pivoting, shared by double and complex paths.
// ---------------------------------------------------------------------------

template <class T>
struct lu_decomposition {
  matrix<T> lu;           // packed L (unit diagonal) and U
  std::vector<int> perm;  // row permutation
  int parity = 1;         // sign of the permutation
  bool singular = false;

  T det() const {
    if (singular) return T{};
    T d = static_cast<T>(static_cast<double>(parity));
    for (int i = 0; i < lu.rows(); ++i) d *= lu(i, i);
    return d;
  }

  std::vector<T> solve(const std::vector<T>& b) const {
    if (singular) throw std::domain_error("lu: singular matrix in solve");
    const int n = lu.rows();
    std::vector<T> x(n);
    for (int i = 0; i < n; ++i) x[i] = b[perm[i]];
    for (int i = 1; i < n; ++i)
      for (int j = 0; j < i; ++j) x[i] -= lu(i, j) * x[j];
    for (int i = n - 1; i >= 0; --i) {
      for (int j = i + 1; j < n; ++j) x[i] -= lu(i, j) * x[j];
      x[i] /= lu(i, i);
    }
    return x;
  }

  matrix<T> solve(const matrix<T>& b) const {
    matrix<T> x(b.rows(), b.cols());
    for (int j = 0; j < b.cols(); ++j) x.set_col(j, solve(b.col(j)));
    return x;
  }
};

template <class T>
lu_decomposition<T> lu_factor(matrix<T> a) {
  if (!a.is_square()) throw std::invalid_argument("lu_factor: matrix not square");
  const int n = a.rows();
  lu_decomposition<T> f;
  f.perm.resize(n);
  for (int i = 0; i < n; ++i) f.perm[i] = i;
  std::vector<int> rows(n);
  for (int i = 0; i < n; ++i) rows[i] = i;

  for (int k = 0; k < n; ++k) {
    int piv = k;
    double best = abs_of(a(k, k));
    for (int i = k + 1; i < n; ++i) {
      const double v = abs_of(a(i, k));
      if (v > best) {
        best = v;
        piv = i;
      }
    }
    if (best == 0.0) {
      f.singular = true;
      continue;
    }
    if (piv != k) {
      for (int j = 0; j < n; ++j) std::swap(a(k, j), a(piv, j));
      std::swap(rows[k], rows[piv]);
      f.parity = -f.parity;
    }
    for (int i = k + 1; i < n; ++i) {
      a(i, k) /= a(k, k);
      const T m = a(i, k);
      if (m == T{}) continue;
      for (int j = k + 1; j < n; ++j) a(i, j) -= m * a(k, j);
    }
  }
  f.lu = std::move(a);
  f.perm = std::move(rows);
  return f;
}

/// Determinant; closed-form for orders up to 3, LU with partial pivoting above.
template <class T>
T det(const matrix<T>& a) {
  if (!a.is_square()) throw std::invalid_argument("det: matrix not square");
  switch (a.rows()) {
    case 0:
      return T{1};
    case 1:
      return a(0, 0);
    case 2:
      return a(0, 0) * a(1, 1) - a(0, 1) * a(1, 0);
    case 3:
      return a(0, 0) * (a(1, 1) * a(2, 2) - a(1, 2) * a(2, 1)) -
             a(0, 1) * (a(1, 0) * a(2, 2) - a(1, 2) * a(2, 0)) +
             a(0, 2) * (a(1, 0) * a(2, 1) - a(1, 1) * a(2, 0));
    default:
      return lu_factor(a).det();
  }
}

template <class T>
matrix<T> inverse(const matrix<T>& a) {
  auto f = lu_factor(a);
  if (f.singular) throw std::domain_error("inverse: singular matrix");
  return f.solve(matrix<T>::identity(a.rows()));
}

template <class T>
std::vector<T> solve(const matrix<T>& a, const std::vector<T>& b) {
  auto f = lu_factor(a);
  if (f.singular) throw std::domain_error("solve: singular matrix");
  return f.solve(b);
}

// ---------------------------------------------------------------------------
// Matrix exponential, scaling and squaring with a (6,6) Pade approximant.
// ---------------------------------------------------------------------------

template <class T>
matrix<T> expm(const matrix<T>& a) {
  if (!a.is_square()) throw std::invalid_argument("expm: matrix not square");
  const int n = a.rows();
  const double norm = a.inf_norm();
  int squarings = 0;
  if (norm > 0.5) squarings = std::max(0, 1 + static_cast<int>(std::ceil(std::log2(norm))));
  const double scale = std::ldexp(1.0, -squarings);

  matrix<T> as = scale * a;
  // Pade (6,6): p(x)/p(-x) with p's coefficients below.
  const double c[7] = {1.0, 1.0 / 2, 5.0 / 44, 1.0 / 66, 1.0 / 792, 1.0 / 15840, 1.0 / 665280};
  matrix<T> term = matrix<T>::identity(n);
  matrix<T> num = c[0] * term;
  matrix<T> den = c[0] * term;
  double sign = 1.0;
  for (int k = 1; k <= 6; ++k) {
    term = term * as;
    sign = -sign;
    num = num + c[k] * term;
    den = den + (sign * c[k]) * term;
  }
  auto f = lu_factor(den);
  if (f.singular) throw std::domain_error("expm: Pade denominator singular");
  matrix<T> r = f.solve(num);
  for (int i = 0; i < squarings; ++i) r = r * r;
  return r;
}

// ---------------------------------------------------------------------------
// Kronecker algebra.
// ---------------------------------------------------------------------------

template <class T>
matrix<T> kron(const matrix<T>& a, const matrix<T>& b) {
  matrix<T> r(a.rows() * b.rows(), a.cols() * b.cols());
  for (int i = 0; i < a.rows(); ++i)
    for (int j = 0; j < a.cols(); ++j) {
      const T aij = a(i, j);
      if (aij == T{}) continue;
      for (int p = 0; p < b.rows(); ++p)
        for (int q = 0; q < b.cols(); ++q)
          r(i * b.rows() + p, j * b.cols() + q) = aij * b(p, q);
    }
  return r;
}

/// Kronecker sum X (+) Y := X (x) I_m + I_n (x) Y for square X, Y.
template <class T>
matrix<T> kron_sum(const matrix<T>& x, const matrix<T>& y) {
  if (!x.is_square() || !y.is_square())
    throw std::invalid_argument("kron_sum: inputs must be square");
  return kron(x, matrix<T>::identity(y.rows())) + kron(matrix<T>::identity(x.rows()), y);
}

}  // namespace ck
