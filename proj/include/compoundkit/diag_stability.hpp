#pragma once

#include <algorithm>
#include <cmath>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "compoundkit/compound.hpp"
#include "compoundkit/matrix.hpp"
#include "compoundkit/sign_tools.hpp"
#include "compoundkit/spectral.hpp"
#include "compoundkit/verdict.hpp"

namespace ck {

struct diagonal_certificate {
  int k = 1;
  std::vector<double> d;  // positive diagonal, length C(n,k)
  double margin = 0.0;    // -lambda_max((A^(k))^T D A^(k) - D)
};

/// Checks (A^(k))^T D A^(k) < D in the definite order for D = diag(d).
inline verdict verify_k_diag_stability(const rmatrix& a, int k, const std::vector<double>& d,
                                       double tau = 1e-10) {
  if (!a.is_square()) throw std::invalid_argument("verify_k_diag_stability: matrix not square");
  for (double v : d)
    if (!(v > 0.0))
      throw std::invalid_argument("verify_k_diag_stability: d must be strictly positive");
  const rmatrix ak = mult_compound(a, k).entries;
  if (static_cast<int>(d.size()) != ak.rows())
    throw std::invalid_argument("verify_k_diag_stability: d has wrong length");
  const int r = ak.rows();
  rmatrix m(r, r);
  for (int i = 0; i < r; ++i)
    for (int j = i; j < r; ++j) {
      double s = 0.0;
      for (int l = 0; l < r; ++l) s += ak(l, i) * d[l] * ak(l, j);
      if (i == j) s -= d[i];
      m(i, j) = s;
      m(j, i) = s;
    }
  const double lmax = eig_sym(m).front();
  verdict v;
  v.kind = "k-diagonal-stability(k=" + std::to_string(k) + ")";
  v.tolerance = tau;
  v.margin = -lmax;
  v.pass = lmax < -tau;
  v.data["lambda_max"] = lmax;
  return v;
}

/// Constructive diagonal Lyapunov recipe for a nonnegative Schur matrix:
/// xi = (I-A)^-1 x, z = (I-A^T)^-1 y, D = diag(z_i / xi_i).
inline diagonal_certificate construct_dlf_nonneg(const rmatrix& a, std::vector<double> x = {},
                                                 std::vector<double> y = {}) {
  if (!a.is_square()) throw std::invalid_argument("construct_dlf_nonneg: matrix not square");
  const int n = a.rows();
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      if (a(i, j) < 0.0)
        throw std::domain_error("construct_dlf_nonneg: matrix must be entrywise nonnegative");
  if (!is_schur(a).pass) throw std::domain_error("construct_dlf_nonneg: matrix is not Schur");
  if (x.empty()) x.assign(n, 1.0);
  if (y.empty()) y.assign(n, 1.0);
  for (double v : x)
    if (!(v > 0.0)) throw std::invalid_argument("construct_dlf_nonneg: x must be positive");
  for (double v : y)
    if (!(v > 0.0)) throw std::invalid_argument("construct_dlf_nonneg: y must be positive");
  const rmatrix ima = rmatrix::identity(n) - a;
  auto f = lu_factor(ima);
  if (f.singular) throw std::domain_error("construct_dlf_nonneg: I - A singular");
  const std::vector<double> xi = f.solve(x);
  const std::vector<double> z = solve(ima.transpose(), y);
  diagonal_certificate c;
  c.k = 1;
  c.d.resize(n);
  for (int i = 0; i < n; ++i) {
    if (!(xi[i] > 0.0) || !(z[i] > 0.0))
      throw std::domain_error("construct_dlf_nonneg: recipe produced nonpositive xi or z");
    c.d[i] = z[i] / xi[i];
  }
  c.margin = verify_k_diag_stability(a, 1, c.d).margin;
  return c;
}

/// Lifts a k=1 diagonal certificate P to order k via D = P^(k): the diagonal
/// of k-fold products of P's entries over Q(k,n).
inline diagonal_certificate lift_dlf(const rmatrix& a, const std::vector<double>& p_diag, int k) {
  if (!a.is_square()) throw std::invalid_argument("lift_dlf: matrix not square");
  if (static_cast<int>(p_diag.size()) != a.rows())
    throw std::invalid_argument("lift_dlf: P has wrong length");
  const verdict base = verify_k_diag_stability(a, 1, p_diag);
  if (!base.pass)
    throw std::domain_error("lift_dlf: supplied P fails the k=1 verification");
  diagonal_certificate c;
  c.k = k;
  for (const index_set& s : index_sets::enumerate(k, a.rows())) {
    double prod = 1.0;
    for (int e : s.elements) prod *= p_diag[e - 1];
    c.d.push_back(prod);
  }
  c.margin = verify_k_diag_stability(a, k, c.d).margin;
  return c;
}

/// Detects the cyclic shape (nonnegative diagonal and superdiagonal, corner
/// (-1)^(l+1) beta_n, zeros elsewhere), asserts SR_l with signature +1, and
/// evaluates the diagonal-stability criterion for the detected parity.
inline verdict classify_cyclic(const rmatrix& a, diagonal_certificate* cert_out = nullptr,
                               double tau = 1e-14) {
  verdict v;
  v.kind = "cyclic";
  if (!a.is_square() || a.rows() < 2) {
    v.witness = "classification NONE (needs square n >= 2)";
    return v;
  }
  const int n = a.rows();
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) {
      const bool structural = (i == j) || (j == i + 1) || (i == n - 1 && j == 0);
      if (!structural && std::abs(a(i, j)) > tau) {
        v.witness = "classification NONE (nonzero off the cyclic shape at (" +
                    std::to_string(i + 1) + "," + std::to_string(j + 1) + "))";
        return v;
      }
    }
  for (int i = 0; i < n; ++i)
    if (a(i, i) < -tau) {
      v.witness = "classification NONE (negative diagonal entry)";
      return v;
    }
  for (int i = 0; i + 1 < n; ++i)
    if (a(i, i + 1) < -tau) {
      v.witness = "classification NONE (negative superdiagonal entry)";
      return v;
    }
  const double corner = a(n - 1, 0);
  const bool odd_parity = corner >= 0.0;
  const int ell = odd_parity ? 1 : 2;
  v.pass = true;
  v.data["ell"] = ell;
  v.data["ell_parity_odd"] = odd_parity ? 1.0 : 0.0;
  v.data["beta_n"] = std::abs(corner);

  const sign_regularity sr = classify_sign_regularity(a, ell);
  const sign_class cls = sr.order(ell);
  const bool sr_ok = (cls == sign_class::ssr_pos || cls == sign_class::sr_pos ||
                      cls == sign_class::sr_zero);
  v.data["sr_ell_signature_plus"] = sr_ok ? 1.0 : 0.0;
  if (!sr_ok) {
    v.pass = false;
    v.witness = "cyclic shape detected but SR_ell with signature +1 failed";
    return v;
  }

  if (odd_parity) {
    const verdict schur = is_schur(a);
    v.data["schur_margin"] = schur.margin;
    v.data["diagonally_stable"] = schur.pass ? 1.0 : 0.0;
    v.note = "odd parity: diagonally stable iff A is Schur";
    if (schur.pass && cert_out) *cert_out = construct_dlf_nonneg(a);
  } else {
    const rmatrix al = mult_compound(a, ell).entries;
    const verdict schur = is_schur(al);
    v.data["schur_margin_A_ell"] = schur.margin;
    v.data["ell_diagonally_stable"] = schur.pass ? 1.0 : 0.0;
    v.note = "even parity: ell-diagonally stable iff A^(ell) is Schur";
    if (schur.pass && cert_out) {
      bool nonneg = true;
      for (const double e : al.data()) nonneg = nonneg && e >= 0.0;
      if (nonneg) {
        const diagonal_certificate base = construct_dlf_nonneg(al);
        cert_out->k = ell;
        cert_out->d = base.d;
        cert_out->margin = verify_k_diag_stability(a, ell, base.d).margin;
      } else {
        v.note += "; A^(ell) has mixed signs: a certificate exists for this class "
                  "but no constructive search is attempted";
      }
    }
  }
  return v;
}

}  // namespace ck
