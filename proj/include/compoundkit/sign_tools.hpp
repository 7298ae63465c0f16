#pragma once

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>
#include <vector>

#include "compoundkit/compound.hpp"
#include "compoundkit/matrix.hpp"
#include "compoundkit/verdict.hpp"

namespace ck {

struct sign_stats {
  int s_minus = 0;
  int s_plus = 0;
  int first_nonzero_sign = 0;
  int last_nonzero_sign = 0;
};

namespace detail {

inline int sgn_of(double v, double tau) {
  if (v > tau) return 1;
  if (v < -tau) return -1;
  return 0;
}

}  // namespace detail

/// Sign variations after deleting zero entries; s_minus(0) = 0.
inline int s_minus(const std::vector<double>& x, double tau_zero = 0.0) {
  int count = 0;
  int prev = 0;
  for (double v : x) {
    const int s = detail::sgn_of(v, tau_zero);
    if (s == 0) continue;
    if (prev != 0 && s != prev) ++count;
    prev = s;
  }
  return count;
}

/// Maximal sign variations over all +-1 assignments to zero entries. Each zero
/// run is resolved by the optimal-alternation rule: a run of z zeros between
/// nonzeros of signs a, b contributes z+1 changes when b = a (-1)^(z+1) and z
/// otherwise; boundary runs always contribute their full length.
inline int s_plus(const std::vector<double>& x, double tau_zero = 0.0) {
  const int n = static_cast<int>(x.size());
  if (n == 0) return 0;
  std::vector<int> pos;
  std::vector<int> sign;
  for (int i = 0; i < n; ++i) {
    const int s = detail::sgn_of(x[i], tau_zero);
    if (s != 0) {
      pos.push_back(i);
      sign.push_back(s);
    }
  }
  if (pos.empty()) return n - 1;
  int total = pos.front() + (n - 1 - pos.back());
  for (size_t i = 1; i < pos.size(); ++i) {
    const int z = pos[i] - pos[i - 1] - 1;
    const int alternating_end = (z % 2 == 0) ? -sign[i - 1] : sign[i - 1];
    total += (sign[i] == alternating_end) ? z + 1 : z;
  }
  return total;
}

inline sign_stats sign_statistics(const std::vector<double>& x, double tau_zero = 0.0) {
  sign_stats st;
  st.s_minus = s_minus(x, tau_zero);
  st.s_plus = s_plus(x, tau_zero);
  for (double v : x) {
    const int s = detail::sgn_of(v, tau_zero);
    if (s != 0) {
      if (st.first_nonzero_sign == 0) st.first_nonzero_sign = s;
      st.last_nonzero_sign = s;
    }
  }
  return st;
}

/// Sign of the first component in the canonical optimal assignment used by
/// s_plus (leading zeros alternate into the first nonzero entry).
inline int s_plus_first_sign(const std::vector<double>& x, double tau_zero = 0.0) {
  for (size_t i = 0; i < x.size(); ++i) {
    const int s = detail::sgn_of(x[i], tau_zero);
    if (s != 0) return (i % 2 == 0) ? s : -s;
  }
  return 1;  // all-zero vector: orientation conventionally positive
}

/// Verifies s^-(x) + s^+(D x) = n - 1 with D = diag(1,-1,1,...).
inline verdict duality_check(const std::vector<double>& x, double tau_zero = 0.0) {
  verdict v;
  v.kind = "sign-duality";
  std::vector<double> flipped = x;
  for (size_t i = 0; i < flipped.size(); ++i)
    if (i % 2 == 1) flipped[i] = -flipped[i];
  const int lhs = s_minus(x, tau_zero);
  const int rhs = s_plus(flipped, tau_zero);
  v.data["s_minus_x"] = lhs;
  v.data["s_plus_Dx"] = rhs;
  v.data["n_minus_1"] = static_cast<double>(x.size()) - 1.0;
  v.pass = (lhs + rhs == static_cast<int>(x.size()) - 1);
  v.margin = v.pass ? 0.0 : -1.0;
  return v;
}

// ---------------------------------------------------------------------------
// Sign-regularity classification.
// ---------------------------------------------------------------------------

enum class sign_class {
  ssr_pos,   // strictly sign-regular, signature +1
  ssr_neg,   // strictly sign-regular, signature -1
  sr_pos,    // sign-regular, all minors >= 0
  sr_neg,    // sign-regular, all minors <= 0
  sr_zero,   // all minors vanish
  none,
};

inline std::string to_string(sign_class c) {
  switch (c) {
    case sign_class::ssr_pos: return "SSR(+1)";
    case sign_class::ssr_neg: return "SSR(-1)";
    case sign_class::sr_pos: return "SR(+1)";
    case sign_class::sr_neg: return "SR(-1)";
    case sign_class::sr_zero: return "SR(0)";
    case sign_class::none: return "NONE";
  }
  return "?";
}

struct sign_regularity {
  std::vector<sign_class> per_order;  // entry k-1 classifies the k-minors
  int max_tp_order = 0;               // largest r with all minors of size <= r positive
  int max_tn_order = 0;               // largest r with all minors of size <= r nonnegative
  double minor_threshold = 0.0;

  sign_class order(int k) const { return per_order.at(static_cast<size_t>(k) - 1); }
  bool tp(int r) const { return max_tp_order >= r; }
  bool tn(int r) const { return max_tn_order >= r; }
};

/// Exhaustive minor scan classifying SSR/SR per order and the TP_r/TN_r reach.
inline sign_regularity classify_sign_regularity(const rmatrix& a, int max_k,
                                                double tau_minor = 1e-10) {
  const int kmax = std::min({max_k, a.rows(), a.cols()});
  if (kmax < 1) throw std::invalid_argument("classify_sign_regularity: empty order range");
  sign_regularity out;
  out.minor_threshold = tau_minor;
  bool tp_chain = true, tn_chain = true;
  for (int k = 1; k <= kmax; ++k) {
    const auto rows = index_sets::enumerate(k, a.rows());
    const auto cols = index_sets::enumerate(k, a.cols());
    if (static_cast<std::uint64_t>(rows.size()) * cols.size() > max_compound_dim())
      throw std::invalid_argument("classify_sign_regularity: minor count exceeds guardrail");
    double lo = 1e300, hi = -1e300;
    for (const index_set& al : rows)
      for (const index_set& be : cols) {
        const double m = minor_of(a, al, be);
        lo = std::min(lo, m);
        hi = std::max(hi, m);
      }
    sign_class c;
    if (lo > tau_minor)
      c = sign_class::ssr_pos;
    else if (hi < -tau_minor)
      c = sign_class::ssr_neg;
    else if (std::abs(lo) <= tau_minor && std::abs(hi) <= tau_minor)
      c = sign_class::sr_zero;
    else if (lo >= -tau_minor)
      c = sign_class::sr_pos;
    else if (hi <= tau_minor)
      c = sign_class::sr_neg;
    else
      c = sign_class::none;
    out.per_order.push_back(c);
    tp_chain = tp_chain && (c == sign_class::ssr_pos);
    tn_chain = tn_chain && (lo >= -tau_minor);
    if (tp_chain) out.max_tp_order = k;
    if (tn_chain) out.max_tn_order = k;
  }
  return out;
}

/// TP_k recognition from initial minors up to order k-1 plus contiguous
/// k-minors only.
inline verdict tp_recognize_fast(const rmatrix& a, int k, double tau_minor = 1e-10) {
  if (k < 1 || k > std::min(a.rows(), a.cols()))
    throw std::invalid_argument("tp_recognize_fast: bad order");
  verdict v;
  v.kind = "TP_" + std::to_string(k) + "-fast";
  v.tolerance = tau_minor;
  v.pass = true;
  v.margin = 1e300;

  auto contiguous_set = [](int start, int len, int n) {
    index_set s;
    s.n = n;
    for (int i = 0; i < len; ++i) s.elements.push_back(start + i);
    return s;
  };
  auto check = [&](const index_set& al, const index_set& be) {
    const double m = minor_of(a, al, be);
    if (m <= tau_minor) {
      if (v.pass) {
        v.pass = false;
        v.witness = "minor " + al.str() + "|" + be.str() + " = " + std::to_string(m);
      }
    }
    v.margin = std::min(v.margin, m);
  };

  // initial minors: contiguous with one side anchored at {1..j}
  for (int j = 1; j < k; ++j) {
    const index_set lead = contiguous_set(1, j, std::max(a.rows(), a.cols()));
    index_set lead_rows = lead, lead_cols = lead;
    lead_rows.n = a.rows();
    lead_cols.n = a.cols();
    for (int q = 1; q + j - 1 <= a.cols(); ++q) check(lead_rows, contiguous_set(q, j, a.cols()));
    for (int p = 1; p + j - 1 <= a.rows(); ++p) check(contiguous_set(p, j, a.rows()), lead_cols);
  }
  // all contiguous k-minors
  for (int p = 1; p + k - 1 <= a.rows(); ++p)
    for (int q = 1; q + k - 1 <= a.cols(); ++q)
      check(contiguous_set(p, k, a.rows()), contiguous_set(q, k, a.cols()));
  return v;
}

enum class svdp_mode { sr, ssr, tp };

/// Evaluates the variation-diminishing implication for one vector:
/// sr:  s^-(x) <= k-1  =>  s^-(Ax) <= k-1          (A nonsingular)
/// ssr: s^-(x) <= k-1  =>  s^+(Ax) <= k-1          (A nonsingular)
/// tp:  s^+(Ax) <= s^-(x), and on equality the leading orientations agree.
inline verdict svdp_check(const rmatrix& a, const std::vector<double>& x, int k, svdp_mode mode,
                          double tau_zero = 0.0) {
  if (!a.is_square()) throw std::invalid_argument("svdp_check: matrix not square");
  if (a.cols() != static_cast<int>(x.size()))
    throw std::invalid_argument("svdp_check: vector length mismatch");
  if (mode != svdp_mode::tp) {
    auto f = lu_factor(a);
    if (f.singular) throw std::domain_error("svdp_check: mode requires nonsingular matrix");
  }
  verdict v;
  v.kind = "svdp";
  const std::vector<double> y = a * x;
  const int sx = s_minus(x, tau_zero);
  v.data["s_minus_x"] = sx;
  switch (mode) {
    case svdp_mode::sr: {
      const int sy = s_minus(y, tau_zero);
      v.data["s_minus_Ax"] = sy;
      if (sx > k - 1) {
        v.pass = true;
        v.note = "premise s^-(x) <= k-1 not satisfied; implication vacuous";
      } else {
        v.pass = sy <= k - 1;
      }
      break;
    }
    case svdp_mode::ssr: {
      const int sy = s_plus(y, tau_zero);
      v.data["s_plus_Ax"] = sy;
      if (sx > k - 1) {
        v.pass = true;
        v.note = "premise s^-(x) <= k-1 not satisfied; implication vacuous";
      } else {
        v.pass = sy <= k - 1;
      }
      break;
    }
    case svdp_mode::tp: {
      const int sy = s_plus(y, tau_zero);
      v.data["s_plus_Ax"] = sy;
      v.pass = sy <= sx;
      if (v.pass && sy == sx) {
        int first_x = 0;
        for (double vx : x) {
          const int s = detail::sgn_of(vx, tau_zero);
          if (s != 0) {
            first_x = s;
            break;
          }
        }
        const int first_y = s_plus_first_sign(y, tau_zero);
        v.data["first_sign_x"] = first_x;
        v.data["first_sign_Ax"] = first_y;
        if (first_x != 0 && first_y != first_x) {
          v.pass = false;
          v.witness = "orientation flip on equal variation count";
        }
      }
      break;
    }
  }
  return v;
}

}  // namespace ck
