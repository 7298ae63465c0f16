#pragma once

#include <algorithm>
#include <cmath>
#include <vector>

#include "compoundkit/compoundkit.hpp"

namespace ts {

using ck::cmatrix;
using ck::cplx;
using ck::rmatrix;

/// Dual-tolerance comparison used throughout: absolute 1e-9 or relative 1e-7,
/// whichever is looser.
inline bool close_dual(double a, double b, double abs_tol = 1e-9, double rel_tol = 1e-7) {
  const double d = std::abs(a - b);
  return d <= std::max(abs_tol, rel_tol * std::max(std::abs(a), std::abs(b)));
}

inline bool matrix_close(const rmatrix& a, const rmatrix& b, double abs_tol = 1e-9,
                         double rel_tol = 1e-7) {
  if (a.rows() != b.rows() || a.cols() != b.cols()) return false;
  for (int i = 0; i < a.rows(); ++i)
    for (int j = 0; j < a.cols(); ++j)
      if (!close_dual(a(i, j), b(i, j), abs_tol, rel_tol)) return false;
  return true;
}

inline double matrix_max_diff(const rmatrix& a, const rmatrix& b) {
  double m = 0.0;
  for (int i = 0; i < a.rows(); ++i)
    for (int j = 0; j < a.cols(); ++j) m = std::max(m, std::abs(a(i, j) - b(i, j)));
  return m;
}

/// Random well-conditioned matrix: I + small random perturbation.
inline rmatrix well_conditioned(ck::rng& g, int n, double spread = 0.3) {
  rmatrix t = rmatrix::identity(n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) t(i, j) += g.uniform(-spread, spread);
  return t;
}

/// Random Hurwitz matrix: random A shifted left by a bit more than its
/// largest real part.
inline rmatrix random_hurwitz(ck::rng& g, int n) {
  rmatrix a = g.matrix_uniform(n, n);
  double maxre = -1e300;
  for (const cplx& l : ck::eig(a).values) maxre = std::max(maxre, l.real());
  for (int i = 0; i < n; ++i) a(i, i) -= maxre + g.uniform(0.1, 1.0);
  return a;
}

/// Random entrywise-nonnegative Schur matrix.
inline rmatrix random_nonneg_schur(ck::rng& g, int n) {
  rmatrix a = g.matrix_uniform(n, n, 0.0, 1.0);
  const double rho = ck::spectral_radius(a);
  const double target = g.uniform(0.3, 0.9);
  return (target / std::max(rho, 1e-6)) * a;
}

/// Spectral norm via the largest eigenvalue of A^T A.
inline double spectral_norm(const rmatrix& a) {
  return std::sqrt(std::max(0.0, ck::eig_sym(a.transpose() * a).front()));
}

/// Random diagonally stable matrix A = D^(-1/2) C D^(1/2) with ||C||_2 < 1;
/// p_diag receives the certifying diagonal D.
inline rmatrix random_diag_stable(ck::rng& g, int n, std::vector<double>& p_diag) {
  rmatrix c = g.matrix_uniform(n, n);
  const double target = g.uniform(0.3, 0.9);
  c = (target / std::max(spectral_norm(c), 1e-9)) * c;
  p_diag.resize(n);
  rmatrix dld(n, n), dl(n, n);
  for (int i = 0; i < n; ++i) {
    p_diag[i] = g.uniform(0.2, 5.0);
    dl(i, i) = std::sqrt(p_diag[i]);
    dld(i, i) = 1.0 / dl(i, i);
  }
  return dld * (c * dl);
}

/// Totally positive matrix from a product of positive bidiagonal factors,
/// verified strictly TP before returning.
inline rmatrix random_tp(ck::rng& g, int n, double min_minor = 1e-8) {
  for (int attempt = 0; attempt < 50; ++attempt) {
    rmatrix a = rmatrix::identity(n);
    const int factors = 2 * n;
    for (int f = 0; f < factors; ++f) {
      rmatrix b(n, n);
      for (int i = 0; i < n; ++i) b(i, i) = g.uniform(0.5, 1.5);
      const bool lower = f % 2 == 0;
      for (int i = 0; i + 1 < n; ++i) {
        if (lower)
          b(i + 1, i) = g.uniform(0.3, 1.2);
        else
          b(i, i + 1) = g.uniform(0.3, 1.2);
      }
      a = a * b;
    }
    bool strict = true;
    for (int k = 1; k <= n && strict; ++k) {
      for (const auto& al : ck::index_sets::enumerate(k, n)) {
        for (const auto& be : ck::index_sets::enumerate(k, n)) {
          if (ck::minor_of(a, al, be) <= min_minor) {
            strict = false;
            break;
          }
        }
        if (!strict) break;
      }
    }
    if (strict) return a;
  }
  throw std::runtime_error("random_tp: failed to generate a strictly TP matrix");
}

/// Random matrix conforming to the Metzler-compound sign pattern.
inline rmatrix random_pattern_conforming(ck::rng& g, const ck::sign_pattern& p) {
  rmatrix a(p.n, p.n);
  for (int i = 0; i < p.n; ++i)
    for (int j = 0; j < p.n; ++j) {
      switch (p.at(i, j)) {
        case ck::entry_constraint::free_entry: a(i, j) = g.uniform(-2.0, 2.0); break;
        case ck::entry_constraint::nonneg: a(i, j) = g.uniform(0.0, 2.0); break;
        case ck::entry_constraint::nonpos: a(i, j) = g.uniform(-2.0, 0.0); break;
        case ck::entry_constraint::zero: a(i, j) = 0.0; break;
      }
    }
  return a;
}

}  // namespace ts
