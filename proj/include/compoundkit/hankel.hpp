#pragma once

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>
#include <vector>

#include "compoundkit/matrix.hpp"
#include "compoundkit/spectral.hpp"
#include "compoundkit/verdict.hpp"

namespace ck {

/// Minimal DT SISO realization x(j+1) = A x(j) + b u(j), y = c^T x, plus the
/// truncation horizon used by verdicts.
struct hankel_system {
  rmatrix A;
  std::vector<double> b;
  std::vector<double> c;
  int horizon = 200;

  void validate() const {
    if (!A.is_square()) throw std::invalid_argument("hankel_system: A not square");
    if (static_cast<int>(b.size()) != A.rows() || static_cast<int>(c.size()) != A.rows())
      throw std::invalid_argument("hankel_system: b/c dimension mismatch");
    if (horizon < 1) throw std::invalid_argument("hankel_system: horizon must be >= 1");
  }
};

/// First-order lag r/(z - p) in state-space form.
inline hankel_system first_order_lag(double p, double r, int horizon = 200) {
  hankel_system s;
  s.A = rmatrix(1, 1, {p});
  s.b = {1.0};
  s.c = {r};
  s.horizon = horizon;
  return s;
}

/// Parallel interconnection (diagonal realization) of first-order lags.
inline hankel_system parallel_lags(const std::vector<double>& poles,
                                   const std::vector<double>& residues, int horizon = 200) {
  if (poles.size() != residues.size() || poles.empty())
    throw std::invalid_argument("parallel_lags: need matching non-empty pole/residue lists");
  const int n = static_cast<int>(poles.size());
  hankel_system s;
  s.A = rmatrix(n, n);
  for (int i = 0; i < n; ++i) s.A(i, i) = poles[i];
  s.b.assign(n, 1.0);
  s.c = residues;
  s.horizon = horizon;
  return s;
}

struct impulse_response {
  std::vector<double> samples;  // g(1) .. g(N)
  std::string source = "explicit";

  int horizon() const { return static_cast<int>(samples.size()); }
  double g(int j) const {
    if (j < 1 || j > horizon()) throw std::out_of_range("impulse_response: index beyond horizon");
    return samples[static_cast<size_t>(j) - 1];
  }
};

/// g(j) = c^T A^(j-1) b for j = 1..N (the j = 0 sample vanishes and is excluded).
inline impulse_response impulse_response_of(const hankel_system& sys, int n_samples) {
  sys.validate();
  if (n_samples < 1) throw std::invalid_argument("impulse_response: need N >= 1");
  impulse_response ir;
  ir.source = "realization";
  ir.samples.reserve(n_samples);
  std::vector<double> v = sys.b;  // A^(j-1) b
  for (int j = 1; j <= n_samples; ++j) {
    double y = 0.0;
    for (size_t i = 0; i < v.size(); ++i) y += sys.c[i] * v[i];
    ir.samples.push_back(y);
    if (j < n_samples) v = sys.A * v;
  }
  return ir;
}

/// The q x q block H_g(p,q) with entries g(p) .. g(p+2q-2) along anti-diagonals.
inline rmatrix hankel_block(const impulse_response& ir, int p, int q) {
  if (p < 1 || q < 1) throw std::invalid_argument("hankel_block: need p, q >= 1");
  if (p + 2 * q - 2 > ir.horizon())
    throw std::out_of_range("hankel_block: horizon exceeded (need p + 2q - 2 <= N)");
  rmatrix h(q, q);
  for (int i = 0; i < q; ++i)
    for (int j = 0; j < q; ++j) h(i, j) = ir.g(p + i + j);
  return h;
}

inline rmatrix controllability_matrix(const rmatrix& a, const std::vector<double>& b, int q) {
  rmatrix c(a.rows(), q);
  std::vector<double> v = b;
  for (int j = 0; j < q; ++j) {
    c.set_col(j, v);
    if (j + 1 < q) v = a * v;
  }
  return c;
}

inline rmatrix observability_matrix(const rmatrix& a, const std::vector<double>& c, int q) {
  rmatrix o(q, a.rows());
  std::vector<double> v = c;
  const rmatrix at = a.transpose();
  for (int i = 0; i < q; ++i) {
    for (int j = 0; j < a.rows(); ++j) o(i, j) = v[j];
    if (i + 1 < q) v = at * v;
  }
  return o;
}

/// Hankel k-compound impulse response g^(k)(j) = det H_g(j, k).
inline std::vector<double> hankel_compound_ir(const impulse_response& ir, int k, int up_to_j) {
  if (k < 1) throw std::invalid_argument("hankel_compound_ir: need k >= 1");
  if (up_to_j < 1 || up_to_j + 2 * k - 2 > ir.horizon())
    throw std::out_of_range("hankel_compound_ir: horizon exceeded");
  std::vector<double> out;
  out.reserve(up_to_j);
  for (int j = 1; j <= up_to_j; ++j) out.push_back(det(hankel_block(ir, j, k)));
  return out;
}

/// Nonnegativity scan of the compound impulse responses g^(1..k) over the
/// truncated horizon; the computational core of the k-positivity verdict.
inline verdict hankel_positivity_scan(const impulse_response& ir, int k, double tau = 1e-9) {
  verdict v;
  v.kind = "hankel-k-positive(k=" + std::to_string(k) + ")";
  v.tolerance = tau;
  v.pass = true;
  v.margin = 1e300;
  for (int order = 1; order <= k; ++order) {
    const int reach = ir.horizon() - (2 * order - 2);
    if (reach < 1) {
      v.pass = false;
      v.witness = "horizon too small for order " + std::to_string(order);
      v.margin = 0.0;
      return v;
    }
    const std::vector<double> gk = hankel_compound_ir(ir, order, reach);
    for (int j = 0; j < reach; ++j) {
      v.margin = std::min(v.margin, gk[j]);
      if (gk[j] < -tau && v.pass) {
        v.pass = false;
        v.witness = "g^(" + std::to_string(order) + ")(" + std::to_string(j + 1) +
                    ") = " + std::to_string(gk[j]);
      }
    }
  }
  return v;
}

/// Truncated-horizon Hankel k-positivity certificate for a stable realization.
/// A PASS is rigorous modulo the reported geometric tail bound
/// |c| |b| rho^N / (1 - rho).
inline verdict hankel_k_positive_verdict(const hankel_system& sys, int k, int n_samples = 0,
                                         double tau = 1e-9, double tau_tail = 1e-6) {
  sys.validate();
  if (n_samples <= 0) n_samples = sys.horizon;
  if (k < 1) throw std::invalid_argument("hankel_k_positive_verdict: need k >= 1");
  if (n_samples < 2 * k)
    throw std::invalid_argument("hankel_k_positive_verdict: horizon too small for k");
  const double rho = spectral_radius(sys.A);
  if (rho >= 1.0)
    throw std::domain_error("hankel_k_positive_verdict: unstable realization (rho(A) >= 1)");
  const double tail =
      vec_norm2(sys.c) * vec_norm2(sys.b) * std::pow(rho, n_samples) / (1.0 - rho);
  const impulse_response ir = impulse_response_of(sys, n_samples);
  verdict v = hankel_positivity_scan(ir, k, tau);
  v.data["spectral_radius"] = rho;
  v.data["horizon"] = n_samples;
  v.data["tail_bound"] = tail;
  v.note = "truncated-horizon certificate; rigorous modulo tail bound " + std::to_string(tail);
  if (tail > tau_tail)
    v.note += " (tail bound exceeds tau_tail=" + std::to_string(tau_tail) +
              "; enlarge the horizon)";
  return v;
}

/// Hankel operator: y(j) = sum_{tau=1..T} g(j + tau) u(-tau) for j = 0..j_max.
/// The input vector lists u(-1), u(-2), ..., u(-T).
inline std::vector<double> hankel_operator_apply(const impulse_response& ir,
                                                 const std::vector<double>& u_past, int j_max) {
  const int t_len = static_cast<int>(u_past.size());
  if (j_max < 0 || j_max + t_len > ir.horizon())
    throw std::out_of_range("hankel_operator_apply: horizon exceeded (need j_max + T <= N)");
  std::vector<double> y(static_cast<size_t>(j_max) + 1, 0.0);
  for (int j = 0; j <= j_max; ++j)
    for (int tau = 1; tau <= t_len; ++tau) y[j] += ir.g(j + tau) * u_past[tau - 1];
  return y;
}

/// j-th order forward difference of a sequence.
inline std::vector<double> difference(const std::vector<double>& s, int order) {
  if (order < 0) throw std::invalid_argument("difference: negative order");
  if (static_cast<int>(s.size()) <= order)
    throw std::invalid_argument("difference: sequence too short");
  std::vector<double> cur = s;
  for (int r = 0; r < order; ++r) {
    std::vector<double> next(cur.size() - 1);
    for (size_t i = 0; i + 1 < cur.size(); ++i) next[i] = cur[i + 1] - cur[i];
    cur = std::move(next);
  }
  return cur;
}

}  // namespace ck
