#pragma once

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>
#include <type_traits>
#include <vector>

#include "compoundkit/compound.hpp"
#include "compoundkit/index_sets.hpp"
#include "compoundkit/matrix.hpp"
#include "compoundkit/spectral.hpp"
#include "compoundkit/systems.hpp"
#include "compoundkit/verdict.hpp"

namespace ck {

enum class norm_tag { l1, l2, linf };

inline std::string to_string(norm_tag p) {
  switch (p) {
    case norm_tag::l1: return "L1";
    case norm_tag::l2: return "L2";
    case norm_tag::linf: return "Linf";
  }
  return "?";
}

namespace detail {

template <class T>
double diag_real(const T& v) {
  if constexpr (std::is_same_v<T, cplx>)
    return v.real();
  else
    return v;
}

}  // namespace detail

/// Matrix measure for the L1, L2, Linf norms. Complex inputs use the real part
/// on the diagonal and the Hermitian part for mu_2.
template <class T>
double mu(const matrix<T>& a, norm_tag p) {
  if (!a.is_square()) throw std::invalid_argument("mu: matrix not square");
  const int n = a.rows();
  switch (p) {
    case norm_tag::l1: {
      double best = -1e300;
      for (int j = 0; j < n; ++j) {
        double s = detail::diag_real(a(j, j));
        for (int i = 0; i < n; ++i)
          if (i != j) s += abs_of(a(i, j));
        best = std::max(best, s);
      }
      return best;
    }
    case norm_tag::linf: {
      double best = -1e300;
      for (int i = 0; i < n; ++i) {
        double s = detail::diag_real(a(i, i));
        for (int j = 0; j < n; ++j)
          if (j != i) s += abs_of(a(i, j));
        best = std::max(best, s);
      }
      return best;
    }
    case norm_tag::l2: {
      if constexpr (std::is_same_v<T, cplx>) {
        cmatrix h(n, n);
        for (int i = 0; i < n; ++i)
          for (int j = 0; j < n; ++j) h(i, j) = 0.5 * (a(i, j) + std::conj(a(j, i)));
        return eig_hermitian(h).front();
      } else {
        rmatrix s(n, n);
        for (int i = 0; i < n; ++i)
          for (int j = 0; j < n; ++j) s(i, j) = 0.5 * (a(i, j) + a(j, i));
        return eig_sym(s).front();
      }
    }
  }
  throw std::logic_error("mu: unknown norm");
}

struct measure_result {
  norm_tag norm = norm_tag::l1;
  double value = 0.0;
  double k_or_alpha = 1.0;
  std::string witness;  // index set or eigen-index achieving the max
};

/// Closed-form mu_p(A^[k]) without building the compound:
///   mu_1: max over alpha in Q(k,n) of the alpha-trace plus off-alpha column sums,
///   mu_inf: the row analogue,
///   mu_2: sum of the k largest eigenvalues of (A + A^T)/2.
inline measure_result mu_compound(const rmatrix& a, int k, norm_tag p) {
  if (!a.is_square()) throw std::invalid_argument("mu_compound: matrix not square");
  const int n = a.rows();
  if (k < 1 || k > n) throw std::invalid_argument("mu_compound: need 1 <= k <= n");
  measure_result r;
  r.norm = p;
  r.k_or_alpha = k;
  if (p == norm_tag::l2) {
    rmatrix s(n, n);
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j) s(i, j) = 0.5 * (a(i, j) + a(j, i));
    const std::vector<double> ev = eig_sym(s);
    double sum = 0.0;
    for (int i = 0; i < k; ++i) sum += ev[i];
    r.value = sum;
    r.witness = "top-" + std::to_string(k) + " eigenvalues of (A+A^T)/2";
    return r;
  }
  double best = -1e300;
  index_set best_set;
  for (const index_set& alpha : index_sets::enumerate(k, n)) {
    double s = 0.0;
    for (int e : alpha.elements) s += a(e - 1, e - 1);
    for (int j = 1; j <= n; ++j) {
      if (alpha.contains(j)) continue;
      for (int e : alpha.elements)
        s += (p == norm_tag::l1) ? std::abs(a(j - 1, e - 1)) : std::abs(a(e - 1, j - 1));
    }
    if (s > best) {
      best = s;
      best_set = alpha;
    }
  }
  r.value = best;
  r.witness = best_set.str();
  return r;
}

// ---------------------------------------------------------------------------
// Contraction verdicts over sample grids.
// ---------------------------------------------------------------------------

struct sample_grid {
  std::vector<double> times;  // time samples for LTV checks
  int points_per_axis = 9;    // per-axis resolution of the state-box grid
};

namespace detail {

/// Walks the sample set of a system: (t, A(t)) for linear tags, (x, J(x))
/// over the box grid for nonlinear ones.
template <class Fn>
void for_each_sample(const system_def& sys, const sample_grid& grid, Fn&& fn) {
  if (sys.tag == system_tag::lti) {
    fn(sys.A, std::string("t=0 (time-invariant)"));
    return;
  }
  if (sys.linear()) {
    if (grid.times.empty())
      throw std::invalid_argument("contraction verdict: empty time grid for LTV system");
    for (double t : grid.times) fn(system_matrix(sys, t), "t=" + std::to_string(t));
    return;
  }
  if (!sys.omega) throw std::invalid_argument("contraction verdict: nonlinear system needs a state box");
  const int n = sys.dim;
  const int m = std::max(2, grid.points_per_axis);
  std::vector<int> idx(n, 0);
  std::vector<double> x(n);
  while (true) {
    for (int d = 0; d < n; ++d) {
      const double w = static_cast<double>(idx[d]) / (m - 1);
      x[d] = sys.omega->lo[d] + w * (sys.omega->hi[d] - sys.omega->lo[d]);
    }
    std::string where = "x=(";
    for (int d = 0; d < n; ++d) where += (d ? "," : "") + std::to_string(x[d]);
    where += ")";
    fn(jacobian(sys, 0.0, x), where);
    int d = 0;
    while (d < n && ++idx[d] == m) idx[d++] = 0;
    if (d == n) break;
  }
}

}  // namespace detail

/// Sufficient-condition check mu(A^[k](t)) <= -eta over the sample set.
/// For nonlinear systems the verdict is a sampled check, not a proof.
inline verdict k_contraction_verdict(const system_def& sys, int k, norm_tag p, double eta,
                                     const sample_grid& grid) {
  verdict v;
  v.kind = "k-contraction(k=" + std::to_string(k) + "," + to_string(p) + ")";
  v.tolerance = 1e-12;
  double worst = -1e300;
  std::string worst_at;
  long count = 0;
  detail::for_each_sample(sys, grid, [&](const rmatrix& j, const std::string& where) {
    const double val = mu_compound(j, k, p).value;
    ++count;
    if (val > worst) {
      worst = val;
      worst_at = where;
    }
  });
  v.pass = worst <= -eta + 1e-12;
  v.margin = -eta - worst;
  v.witness = "worst sample at " + worst_at;
  v.data["worst_mu"] = worst;
  v.data["eta"] = eta;
  v.data["samples"] = static_cast<double>(count);
  v.note = sys.linear() ? (sys.tag == system_tag::lti ? "exact LTI evaluation"
                                                      : "sampled time grid")
                        : "sampled sufficient-condition check over state-box grid, not a proof";
  return v;
}

/// Same contract for the alpha-additive compound, alpha = k + s in (1, n).
inline verdict alpha_contraction_verdict(const system_def& sys, double alpha, norm_tag p,
                                         double eta, const sample_grid& grid) {
  verdict v;
  v.kind = "alpha-contraction(alpha=" + std::to_string(alpha) + "," + to_string(p) + ")";
  v.tolerance = 1e-12;
  double worst = -1e300;
  std::string worst_at;
  long count = 0;
  detail::for_each_sample(sys, grid, [&](const rmatrix& j, const std::string& where) {
    const double val = mu(alpha_add_compound(j, alpha), p);
    ++count;
    if (val > worst) {
      worst = val;
      worst_at = where;
    }
  });
  v.pass = worst <= -eta + 1e-12;
  v.margin = -eta - worst;
  v.witness = "worst sample at " + worst_at;
  v.data["worst_mu"] = worst;
  v.data["eta"] = eta;
  v.data["samples"] = static_cast<double>(count);
  if (sys.tag == system_tag::thomas && p == norm_tag::l1) {
    const double b = sys.thomas_b;
    const double s = alpha - std::floor(alpha);
    double bound = 1.0 - 2.0 * b - s * (b + 1.0);
    if (sys.thomas_gain) bound += (1.0 + s) * *sys.thomas_gain;
    v.data["analytic_mu1_bound"] = bound;
  }
  v.note = sys.linear() ? (sys.tag == system_tag::lti ? "exact LTI evaluation"
                                                      : "sampled time grid")
                        : "sampled sufficient-condition check over state-box grid, not a proof";
  return v;
}

/// Spectral form of the subspace criterion for uniformly stable LTIs: every
/// k-fold eigenvalue sum has negative real part; reports how many eigenvalues
/// are strictly stable (at least n-k+1 when the check passes).
inline verdict lti_k_subspace_check(const rmatrix& a, int k) {
  verdict v;
  v.kind = "lti-k-subspace(k=" + std::to_string(k) + ")";
  const spectrum sp = eig(a);
  const int n = a.rows();
  double max_re = -1e300;
  for (const cplx& l : sp.values) max_re = std::max(max_re, l.real());
  if (max_re > 1e-9) v.note = "warning: matrix is not Hurwitz-or-marginally-stable";
  double worst_sum = -1e300;
  std::string worst_set;
  for (const index_set& s : index_sets::enumerate(k, n)) {
    double re = 0.0;
    for (int e : s.elements) re += sp.values[e - 1].real();
    if (re > worst_sum) {
      worst_sum = re;
      worst_set = s.str();
    }
  }
  v.pass = worst_sum < 0.0;
  v.margin = -worst_sum;
  v.data["worst_k_sum_real_part"] = worst_sum;
  int stable = 0;
  for (const cplx& l : sp.values)
    if (l.real() < 0.0) ++stable;
  v.data["stable_eigenvalue_count"] = stable;
  v.data["n_minus_k_plus_1"] = n - k + 1;
  std::vector<double> res;
  for (const cplx& l : sp.values) res.push_back(l.real());
  std::sort(res.begin(), res.end());
  std::string w = "sorted eigenvalue real parts: ";
  for (size_t i = 0; i < res.size(); ++i) w += (i ? ", " : "") + std::to_string(res[i]);
  v.witness = w + "; worst k-sum at " + worst_set;
  return v;
}

}  // namespace ck
