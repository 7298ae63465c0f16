#pragma once

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>
#include <vector>

#include "compoundkit/compound.hpp"
#include "compoundkit/matrix.hpp"
#include "compoundkit/measures.hpp"
#include "compoundkit/sign_tools.hpp"
#include "compoundkit/systems.hpp"
#include "compoundkit/verdict.hpp"

namespace ck {

inline verdict is_metzler(const rmatrix& a, double tau = 1e-12) {
  if (!a.is_square()) throw std::invalid_argument("is_metzler: matrix not square");
  verdict v;
  v.kind = "metzler";
  v.tolerance = tau;
  v.pass = true;
  v.margin = 1e300;
  for (int i = 0; i < a.rows(); ++i)
    for (int j = 0; j < a.cols(); ++j) {
      if (i == j) continue;
      v.margin = std::min(v.margin, a(i, j));
      if (a(i, j) < -tau && v.pass) {
        v.pass = false;
        v.witness = "entry (" + std::to_string(i + 1) + "," + std::to_string(j + 1) +
                    ") = " + std::to_string(a(i, j));
      }
    }
  return v;
}

/// Strong connectivity of the directed graph on nonzero off-diagonal entries.
inline verdict is_irreducible(const rmatrix& a, double tau = 1e-12) {
  if (!a.is_square()) throw std::invalid_argument("is_irreducible: matrix not square");
  const int n = a.rows();
  verdict v;
  v.kind = "irreducible";
  v.tolerance = tau;
  if (n == 1) {
    v.pass = true;
    return v;
  }
  std::vector<std::vector<bool>> reach(n, std::vector<bool>(n, false));
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) reach[i][j] = (i == j) || std::abs(a(i, j)) > tau;
  for (int k = 0; k < n; ++k)
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j)
        if (reach[i][k] && reach[k][j]) reach[i][j] = true;
  v.pass = true;
  for (int i = 0; i < n && v.pass; ++i)
    for (int j = 0; j < n; ++j)
      if (!reach[i][j]) {
        v.pass = false;
        v.witness = "no path " + std::to_string(i + 1) + " -> " + std::to_string(j + 1);
        break;
      }
  return v;
}

// ---------------------------------------------------------------------------
// Sign patterns characterizing Metzler additive compounds.
// ---------------------------------------------------------------------------

enum class entry_constraint { free_entry, nonneg, nonpos, zero };

struct sign_pattern {
  int n = 0;
  int k = 0;
  std::vector<entry_constraint> grid;  // row-major n*n

  entry_constraint at(int i, int j) const { return grid[static_cast<size_t>(i) * n + j]; }

  bool matches(const rmatrix& a, double tau = 1e-12) const {
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j) {
        const double v = a(i, j);
        switch (at(i, j)) {
          case entry_constraint::free_entry: break;
          case entry_constraint::nonneg:
            if (v < -tau) return false;
            break;
          case entry_constraint::nonpos:
            if (v > tau) return false;
            break;
          case entry_constraint::zero:
            if (std::abs(v) > tau) return false;
            break;
        }
      }
    return true;
  }
};

/// Exact sign pattern on A equivalent to A^[k] being Metzler (n >= 3,
/// 1 < k <= n-1): checkerboard by parity of i-j when k = n-1, otherwise
/// tridiagonal-band nonnegativity with corner signs set by the parity of k.
inline sign_pattern metzler_compound_pattern(int n, int k) {
  if (n < 3) throw std::invalid_argument("metzler_compound_pattern: need n >= 3");
  if (k <= 1 || k > n - 1)
    throw std::invalid_argument("metzler_compound_pattern: need 1 < k <= n-1");
  sign_pattern p;
  p.n = n;
  p.k = k;
  p.grid.assign(static_cast<size_t>(n) * n, entry_constraint::free_entry);
  auto set = [&](int i, int j, entry_constraint c) {
    p.grid[static_cast<size_t>(i) * n + j] = c;
  };
  if (k == n - 1) {
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j) {
        if (i == j) continue;
        set(i, j, ((i - j) % 2 != 0) ? entry_constraint::nonneg : entry_constraint::nonpos);
      }
    return p;
  }
  const entry_constraint corner =
      (k % 2 == 1) ? entry_constraint::nonneg : entry_constraint::nonpos;
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) {
      if (i == j) continue;
      const int d = std::abs(i - j);
      if (d == 1)
        set(i, j, entry_constraint::nonneg);
      else if (d == n - 1)
        set(i, j, corner);
      else
        set(i, j, entry_constraint::zero);
    }
  return p;
}

/// PASS iff A^[k](t) is Metzler at every sample; strong mode additionally
/// requires irreducibility, allowing failures on at most allowed_fraction of
/// the samples (isolated-point semantics cannot be decided from samples).
inline verdict k_positive_verdict(const system_def& sys, int k, bool strong,
                                  const std::vector<double>& times = {0.0},
                                  double tau = 1e-12, double allowed_fraction = 0.0) {
  if (!sys.linear())
    throw std::invalid_argument("k_positive_verdict: needs an LTI or time-sampled LTV");
  if (times.empty()) throw std::invalid_argument("k_positive_verdict: empty sampling");
  verdict v;
  v.kind = std::string(strong ? "strong-" : "") + "k-positive(k=" + std::to_string(k) + ")";
  v.tolerance = tau;
  v.pass = true;
  v.margin = 1e300;
  int irreducible_failures = 0;
  const std::vector<double> sample_times =
      (sys.tag == system_tag::lti) ? std::vector<double>{0.0} : times;
  for (double t : sample_times) {
    const rmatrix ak = add_compound(system_matrix(sys, t), k).entries;
    const verdict m = is_metzler(ak, tau);
    v.margin = std::min(v.margin, m.margin);
    if (!m.pass) {
      v.pass = false;
      if (v.witness.empty())
        v.witness = "A^[k] not Metzler at t=" + std::to_string(t) + ": " + m.witness;
    }
    if (strong && !is_irreducible(ak, tau).pass) ++irreducible_failures;
  }
  if (strong) {
    const double frac = static_cast<double>(irreducible_failures) /
                        static_cast<double>(sample_times.size());
    v.data["irreducibility_failure_fraction"] = frac;
    if (frac > allowed_fraction) {
      v.pass = false;
      if (v.witness.empty())
        v.witness = "irreducibility failed on " + std::to_string(irreducible_failures) +
                    " of " + std::to_string(sample_times.size()) + " samples";
    }
    v.note = "strong positivity on sampled LTV approximates 'except isolated points' semantics";
  }
  return v;
}

/// Tridiagonal with strictly positive super- and sub-diagonal entries.
inline verdict is_jacobi(const rmatrix& a) {
  if (!a.is_square()) throw std::invalid_argument("is_jacobi: matrix not square");
  const int n = a.rows();
  verdict v;
  v.kind = "jacobi";
  v.pass = true;
  v.margin = 1e300;
  for (int i = 0; i < n && v.pass; ++i)
    for (int j = 0; j < n; ++j) {
      const int d = std::abs(i - j);
      if (d == 1) {
        v.margin = std::min(v.margin, a(i, j));
        if (!(a(i, j) > 0.0)) {
          v.pass = false;
          v.witness = "off-band neighbour (" + std::to_string(i + 1) + "," +
                      std::to_string(j + 1) + ") = " + std::to_string(a(i, j));
          break;
        }
      } else if (d > 1 && a(i, j) != 0.0) {
        v.pass = false;
        v.witness = "nonzero outside the band at (" + std::to_string(i + 1) + "," +
                    std::to_string(j + 1) + ")";
        break;
      }
    }
  return v;
}

/// Membership of x in the cones P^k_- (s^- <= k-1) and P^k_+ (s^+ <= k-1).
inline verdict cone_membership(const std::vector<double>& x, int k, double tau_zero = 0.0) {
  verdict v;
  v.kind = "cone-membership(k=" + std::to_string(k) + ")";
  const sign_stats st = sign_statistics(x, tau_zero);
  v.data["s_minus"] = st.s_minus;
  v.data["s_plus"] = st.s_plus;
  const bool in_minus = st.s_minus <= k - 1;
  const bool in_plus = st.s_plus <= k - 1;
  v.data["in_P_minus"] = in_minus ? 1.0 : 0.0;
  v.data["in_P_plus"] = in_plus ? 1.0 : 0.0;
  v.pass = in_minus;
  v.witness = std::string("P^k_-: ") + (in_minus ? "yes" : "no") + ", P^k_+: " +
              (in_plus ? "yes" : "no");
  return v;
}

}  // namespace ck
