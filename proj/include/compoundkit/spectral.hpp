#pragma once

#include <algorithm>
#include <cmath>
#include <complex>
#include <stdexcept>
#include <string>
#include <vector>

#include "compoundkit/compound.hpp"
#include "compoundkit/index_sets.hpp"
#include "compoundkit/matrix.hpp"
#include "compoundkit/verdict.hpp"

namespace ck {

struct spectrum {
  std::vector<cplx> values;
  cmatrix vectors;  // column i pairs with values[i]; empty unless requested
  bool converged = true;
  bool used_fallback = false;
  int iterations = 0;
};

namespace detail {

constexpr int kMaxEigDim = 64;

inline void givens(const cplx& a, const cplx& b, double& c, cplx& s) {
  const double aa = std::abs(a), bb = std::abs(b);
  if (bb == 0.0) {
    c = 1.0;
    s = cplx(0.0, 0.0);
    return;
  }
  if (aa == 0.0) {
    c = 0.0;
    s = cplx(1.0, 0.0);
    return;
  }
  const double t = std::hypot(aa, bb);
  c = aa / t;
  s = (a / aa) * std::conj(b) / t;
}

inline cmatrix hessenberg(cmatrix a) {
  const int n = a.rows();
  for (int k = 0; k + 2 < n; ++k) {
    double colnorm = 0.0;
    for (int i = k + 1; i < n; ++i) colnorm = std::hypot(colnorm, std::abs(a(i, k)));
    if (colnorm == 0.0) continue;
    cplx x0 = a(k + 1, k);
    cplx alpha = (std::abs(x0) == 0.0) ? cplx(-colnorm, 0.0) : -(x0 / std::abs(x0)) * colnorm;
    std::vector<cplx> v(n, cplx(0, 0));
    v[k + 1] = x0 - alpha;
    for (int i = k + 2; i < n; ++i) v[i] = a(i, k);
    double vnorm = 0.0;
    for (int i = k + 1; i < n; ++i) vnorm = std::hypot(vnorm, std::abs(v[i]));
    if (vnorm == 0.0) continue;
    for (int i = k + 1; i < n; ++i) v[i] /= vnorm;
    // left: A <- (I - 2 v v^*) A
    for (int j = k; j < n; ++j) {
      cplx dot(0, 0);
      for (int i = k + 1; i < n; ++i) dot += std::conj(v[i]) * a(i, j);
      dot *= 2.0;
      for (int i = k + 1; i < n; ++i) a(i, j) -= dot * v[i];
    }
    // right: A <- A (I - 2 v v^*)
    for (int i = 0; i < n; ++i) {
      cplx dot(0, 0);
      for (int j = k + 1; j < n; ++j) dot += a(i, j) * v[j];
      dot *= 2.0;
      for (int j = k + 1; j < n; ++j) a(i, j) -= dot * std::conj(v[j]);
    }
    for (int i = k + 2; i < n; ++i) a(i, k) = cplx(0, 0);
  }
  return a;
}

inline std::pair<cplx, cplx> eig2x2(const cplx& a, const cplx& b, const cplx& c, const cplx& d) {
  const cplx tr = a + d;
  const cplx disc = std::sqrt(tr * tr - 4.0 * (a * d - b * c));
  return {(tr + disc) / 2.0, (tr - disc) / 2.0};
}

/// Explicit single-shift QR sweep on a Hessenberg block, in place.
inline void qr_step(cmatrix& h, const cplx& shift) {
  const int m = h.rows();
  for (int i = 0; i < m; ++i) h(i, i) -= shift;
  std::vector<double> cs(m - 1);
  std::vector<cplx> sn(m - 1);
  for (int i = 0; i + 1 < m; ++i) {
    givens(h(i, i), h(i + 1, i), cs[i], sn[i]);
    for (int j = i; j < m; ++j) {
      const cplx t1 = h(i, j), t2 = h(i + 1, j);
      h(i, j) = cs[i] * t1 + sn[i] * t2;
      h(i + 1, j) = -std::conj(sn[i]) * t1 + cs[i] * t2;
    }
    h(i + 1, i) = cplx(0, 0);
  }
  for (int i = 0; i + 1 < m; ++i) {
    const int top = std::min(i + 1, m - 1);
    for (int r = 0; r <= top; ++r) {
      const cplx t1 = h(r, i), t2 = h(r, i + 1);
      h(r, i) = cs[i] * t1 + std::conj(sn[i]) * t2;
      h(r, i + 1) = -sn[i] * t1 + cs[i] * t2;
    }
  }
  for (int i = 0; i < m; ++i) h(i, i) += shift;
}

inline bool qr_eigenvalues(cmatrix h, std::vector<cplx>& out, int iter_cap, int& used) {
  const int n = h.rows();
  std::vector<cmatrix> work{std::move(h)};
  while (!work.empty()) {
    cmatrix b = std::move(work.back());
    work.pop_back();
    int stagnation = 0;
    while (true) {
      const int m = b.rows();
      if (m == 0) break;
      if (m == 1) {
        out.push_back(b(0, 0));
        break;
      }
      if (m == 2) {
        auto [l1, l2] = eig2x2(b(0, 0), b(0, 1), b(1, 0), b(1, 1));
        out.push_back(l1);
        out.push_back(l2);
        break;
      }
      // deflation scan
      int split = -1;
      for (int i = 1; i < m; ++i) {
        const double s = std::abs(b(i - 1, i - 1)) + std::abs(b(i, i));
        const double floor_v = (s == 0.0) ? b.frobenius_norm() : s;
        if (std::abs(b(i, i - 1)) <= 1e-15 * floor_v) {
          split = i;
          break;
        }
      }
      if (split >= 0) {
        cmatrix top(split, split), bot(m - split, m - split);
        for (int i = 0; i < split; ++i)
          for (int j = 0; j < split; ++j) top(i, j) = b(i, j);
        for (int i = 0; i < m - split; ++i)
          for (int j = 0; j < m - split; ++j) bot(i, j) = b(split + i, split + j);
        work.push_back(std::move(top));
        b = std::move(bot);
        stagnation = 0;
        continue;
      }
      if (used >= iter_cap) return false;
      cplx shift;
      if (++stagnation % 12 == 0) {
        shift = b(m - 1, m - 1) + 0.75 * std::abs(b(m - 1, m - 2));
      } else {
        auto [l1, l2] = eig2x2(b(m - 2, m - 2), b(m - 2, m - 1), b(m - 1, m - 2), b(m - 1, m - 1));
        shift = (std::abs(l1 - b(m - 1, m - 1)) < std::abs(l2 - b(m - 1, m - 1))) ? l1 : l2;
      }
      qr_step(b, shift);
      ++used;
    }
  }
  return static_cast<int>(out.size()) == n;
}

/// Characteristic polynomial coefficients by Faddeev-LeVerrier:
/// p(x) = x^n + c[0] x^(n-1) + ... + c[n-1].
inline std::vector<cplx> char_poly(const cmatrix& a) {
  const int n = a.rows();
  std::vector<cplx> c(n);
  cmatrix m = a;  // M_1 = A
  cplx tr(0, 0);
  for (int i = 0; i < n; ++i) tr += m(i, i);
  c[0] = -tr;
  for (int k = 2; k <= n; ++k) {
    cmatrix shifted = m;
    for (int i = 0; i < n; ++i) shifted(i, i) += c[k - 2];
    m = a * shifted;  // M_k = A (M_{k-1} + c_{k-1} I)
    cplx trk(0, 0);
    for (int i = 0; i < n; ++i) trk += m(i, i);
    c[k - 1] = -trk / static_cast<double>(k);
  }
  return c;
}

inline std::vector<cplx> durand_kerner(const std::vector<cplx>& c) {
  const int n = static_cast<int>(c.size());
  double radius = 1.0;
  for (const cplx& v : c) radius = std::max(radius, std::abs(v));
  radius = 1.0 + radius;
  auto eval = [&](const cplx& z) {
    cplx p(1, 0);
    for (int i = 0; i < n; ++i) p = p * z + c[i];
    return p;
  };
  std::vector<cplx> z(n);
  const cplx seed(0.4, 0.9);
  cplx w = seed;
  for (int i = 0; i < n; ++i) {
    z[i] = radius * w;
    w *= seed;
  }
  for (int it = 0; it < 500; ++it) {
    double move = 0.0;
    for (int i = 0; i < n; ++i) {
      cplx denom(1, 0);
      for (int j = 0; j < n; ++j)
        if (j != i) denom *= (z[i] - z[j]);
      if (std::abs(denom) == 0.0) {
        z[i] += cplx(1e-8, 1e-8);
        continue;
      }
      const cplx step = eval(z[i]) / denom;
      z[i] -= step;
      move = std::max(move, std::abs(step));
    }
    if (move < 1e-14 * radius) break;
  }
  return z;
}

inline bool nearly_hermitian(const cmatrix& a, double tol) {
  for (int i = 0; i < a.rows(); ++i)
    for (int j = 0; j < a.cols(); ++j)
      if (std::abs(a(i, j) - std::conj(a(j, i))) > tol) return false;
  return true;
}

}  // namespace detail

// ---------------------------------------------------------------------------
// Real symmetric path: cyclic Jacobi rotations.
// ---------------------------------------------------------------------------

/// Eigenvalues (descending) and orthonormal eigenvectors of a symmetric matrix.
inline std::pair<std::vector<double>, rmatrix> eig_sym_vectors(rmatrix s) {
  if (!s.is_square()) throw std::invalid_argument("eig_sym: matrix not square");
  const int n = s.rows();
  rmatrix v = rmatrix::identity(n);
  const double target = 1e-12 * std::max(1e-300, s.frobenius_norm());
  for (int sweep = 0; sweep < 100; ++sweep) {
    double off = 0.0;
    for (int p = 0; p < n; ++p)
      for (int q = p + 1; q < n; ++q) off = std::hypot(off, s(p, q));
    if (off <= target) break;
    for (int p = 0; p < n; ++p)
      for (int q = p + 1; q < n; ++q) {
        if (std::abs(s(p, q)) <= target / (n * n + 1.0)) continue;
        const double theta = (s(q, q) - s(p, p)) / (2.0 * s(p, q));
        const double t = (theta >= 0 ? 1.0 : -1.0) /
                         (std::abs(theta) + std::sqrt(theta * theta + 1.0));
        const double c = 1.0 / std::sqrt(t * t + 1.0);
        const double sn = t * c;
        for (int i = 0; i < n; ++i) {
          const double sip = s(i, p), siq = s(i, q);
          s(i, p) = c * sip - sn * siq;
          s(i, q) = sn * sip + c * siq;
        }
        for (int j = 0; j < n; ++j) {
          const double spj = s(p, j), sqj = s(q, j);
          s(p, j) = c * spj - sn * sqj;
          s(q, j) = sn * spj + c * sqj;
        }
        for (int i = 0; i < n; ++i) {
          const double vip = v(i, p), viq = v(i, q);
          v(i, p) = c * vip - sn * viq;
          v(i, q) = sn * vip + c * viq;
        }
      }
  }
  std::vector<int> order(n);
  for (int i = 0; i < n; ++i) order[i] = i;
  std::sort(order.begin(), order.end(), [&](int a, int b) { return s(a, a) > s(b, b); });
  std::vector<double> vals(n);
  rmatrix vecs(n, n);
  for (int i = 0; i < n; ++i) {
    vals[i] = s(order[i], order[i]);
    for (int r = 0; r < n; ++r) vecs(r, i) = v(r, order[i]);
  }
  return {vals, vecs};
}

inline std::vector<double> eig_sym(const rmatrix& s) { return eig_sym_vectors(s).first; }

/// Eigenvalues (descending) of a Hermitian matrix via the real 2n-embedding
/// [[Re, -Im], [Im, Re]], whose spectrum is that of the input doubled.
inline std::vector<double> eig_hermitian(const cmatrix& h) {
  const int n = h.rows();
  rmatrix e(2 * n, 2 * n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) {
      e(i, j) = h(i, j).real();
      e(i, j + n) = -h(i, j).imag();
      e(i + n, j) = h(i, j).imag();
      e(i + n, j + n) = h(i, j).real();
    }
  const std::vector<double> doubled = eig_sym(e);
  std::vector<double> vals(n);
  for (int i = 0; i < n; ++i) vals[i] = doubled[2 * i];
  return vals;
}

// ---------------------------------------------------------------------------
// General eigensolver: Hessenberg reduction + shifted QR, inverse iteration
// for eigenvectors, companion fallback for small dimensions.
// ---------------------------------------------------------------------------

inline spectrum eig(const cmatrix& a, bool want_vectors = false) {
  if (!a.is_square()) throw std::invalid_argument("eig: matrix not square");
  const int n = a.rows();
  if (n > detail::kMaxEigDim) throw std::invalid_argument("eig: dimension capped at 64");
  spectrum sp;
  if (n == 0) return sp;
  if (!a.all_finite()) throw std::invalid_argument("eig: non-finite entries");

  const double scale = std::max(a.max_abs(), 1e-300);
  int used = 0;
  std::vector<cplx> vals;
  const bool ok = detail::qr_eigenvalues(detail::hessenberg(a), vals, 100 * n, used);
  sp.iterations = used;
  if (!ok) {
    if (n <= 8) {
      vals.clear();
      vals = detail::durand_kerner(detail::char_poly(a));
      sp.used_fallback = true;
    } else {
      throw std::runtime_error("eig: QR iteration failed to converge within 100n steps");
    }
  }
  sp.values = std::move(vals);

  if (want_vectors) {
    sp.vectors = cmatrix(n, n);
    // cluster bookkeeping: perturb shifts of repeated eigenvalues and keep the
    // vectors of one cluster mutually orthogonal
    std::vector<int> cluster_pos(n, 0);
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < i; ++j)
        if (std::abs(sp.values[i] - sp.values[j]) <= 1e-7 * scale)
          cluster_pos[i] = std::max(cluster_pos[i], cluster_pos[j] + 1);

    std::uint64_t rng_state = 0x9e3779b97f4a7c15ull;
    auto next_rand = [&rng_state]() {
      rng_state += 0x9e3779b97f4a7c15ull;
      std::uint64_t z = rng_state;
      z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
      z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
      z ^= z >> 31;
      return 2.0 * (static_cast<double>(z) / 18446744073709551616.0) - 1.0;
    };

    for (int i = 0; i < n; ++i) {
      const cplx shift = sp.values[i] + cplx(cluster_pos[i] * 3e-11 * scale, 1e-13 * scale);
      cmatrix m = a;
      for (int d = 0; d < n; ++d) m(d, d) -= shift;
      auto f = lu_factor(m);
      if (f.singular) {
        for (int d = 0; d < n; ++d) m(d, d) -= cplx(1e-10 * scale, 1e-10 * scale);
        f = lu_factor(m);
      }
      std::vector<cplx> v(n);
      bool accepted = false;
      for (int restart = 0; restart < 5 && !accepted; ++restart) {
        for (int d = 0; d < n; ++d) v[d] = cplx(next_rand(), next_rand());
        for (int it = 0; it < 8; ++it) {
          if (!f.singular) v = f.solve(v);
          // orthogonalize against previously accepted members of the cluster
          for (int j = 0; j < i; ++j) {
            if (std::abs(sp.values[i] - sp.values[j]) > 1e-7 * scale) continue;
            cplx dot(0, 0);
            for (int d = 0; d < n; ++d) dot += std::conj(sp.vectors(d, j)) * v[d];
            for (int d = 0; d < n; ++d) v[d] -= dot * sp.vectors(d, j);
          }
          const double nv = vec_norm2(v);
          if (nv < 1e-280) break;
          for (int d = 0; d < n; ++d) v[d] /= nv;
          // residual ||A v - lambda v||
          std::vector<cplx> av = a * v;
          double res = 0.0;
          for (int d = 0; d < n; ++d) res = std::hypot(res, std::abs(av[d] - sp.values[i] * v[d]));
          if (res <= 1e-9 * scale * n) {
            accepted = true;
            break;
          }
        }
      }
      for (int d = 0; d < n; ++d) sp.vectors(d, i) = v[d];
      if (!accepted) sp.converged = false;
    }
  }
  return sp;
}

inline spectrum eig(const rmatrix& a, bool want_vectors = false) {
  if (!a.is_square()) throw std::invalid_argument("eig: matrix not square");
  const int n = a.rows();
  bool symmetric = true;
  const double tol = 1e-14 * std::max(1.0, a.max_abs());
  for (int i = 0; i < n && symmetric; ++i)
    for (int j = i + 1; j < n; ++j)
      if (std::abs(a(i, j) - a(j, i)) > tol) {
        symmetric = false;
        break;
      }
  if (symmetric) {
    spectrum sp;
    if (want_vectors) {
      auto [vals, vecs] = eig_sym_vectors(a);
      sp.values.resize(n);
      sp.vectors = cmatrix(n, n);
      for (int i = 0; i < n; ++i) {
        sp.values[i] = cplx(vals[i], 0.0);
        for (int r = 0; r < n; ++r) sp.vectors(r, i) = cplx(vecs(r, i), 0.0);
      }
    } else {
      for (double v : eig_sym(a)) sp.values.push_back(cplx(v, 0.0));
    }
    return sp;
  }
  return eig(to_complex(a), want_vectors);
}

// ---------------------------------------------------------------------------
// Spectrum utilities.
// ---------------------------------------------------------------------------

namespace detail {

inline bool lex_less(const cplx& a, const cplx& b) {
  if (a.real() != b.real()) return a.real() < b.real();
  return a.imag() < b.imag();
}

}  // namespace detail

/// Greedy nearest-neighbour multiset match after sorting by (real, imag);
/// returns the worst pairwise distance.
inline double multiset_mismatch(std::vector<cplx> expected, std::vector<cplx> got) {
  if (expected.size() != got.size())
    throw std::invalid_argument("multiset_mismatch: length mismatch");
  std::sort(expected.begin(), expected.end(), detail::lex_less);
  std::sort(got.begin(), got.end(), detail::lex_less);
  std::vector<bool> taken(got.size(), false);
  double worst = 0.0;
  for (const cplx& e : expected) {
    int best = -1;
    double bestd = 0.0;
    for (size_t j = 0; j < got.size(); ++j) {
      if (taken[j]) continue;
      const double d = std::abs(e - got[j]);
      if (best < 0 || d < bestd) {
        best = static_cast<int>(j);
        bestd = d;
      }
    }
    taken[best] = true;
    worst = std::max(worst, bestd);
  }
  return worst;
}

/// Verifies eig(A^(k)) = k-fold eigenvalue products and eig(A^[k]) = k-fold sums.
inline verdict check_compound_spectrum(const rmatrix& a, int k, double tol = 1e-5) {
  verdict v;
  v.kind = "compound-spectrum";
  v.tolerance = tol;
  const spectrum base = eig(a);
  std::vector<cplx> prods, sums;
  for (const index_set& s : index_sets::enumerate(k, a.rows())) {
    cplx p(1, 0), q(0, 0);
    for (int e : s.elements) {
      p *= base.values[e - 1];
      q += base.values[e - 1];
    }
    prods.push_back(p);
    sums.push_back(q);
  }
  const spectrum mk = eig(mult_compound(a, k).entries);
  const spectrum ak = eig(add_compound(a, k).entries);
  double mag = 1.0;
  for (const cplx& p : prods) mag = std::max(mag, std::abs(p));
  for (const cplx& q : sums) mag = std::max(mag, std::abs(q));
  const double worst_mult = multiset_mismatch(prods, mk.values);
  const double worst_add = multiset_mismatch(sums, ak.values);
  const double worst = std::max(worst_mult, worst_add);
  v.data["worst_mult_mismatch"] = worst_mult;
  v.data["worst_add_mismatch"] = worst_add;
  v.margin = tol * mag - worst;
  v.pass = worst <= tol * mag;
  v.witness = "relative to eigenvalue magnitude " + std::to_string(mag);
  return v;
}

inline verdict is_hurwitz(const rmatrix& a, double tol = 1e-9) {
  verdict v;
  v.kind = "hurwitz";
  v.tolerance = tol;
  const spectrum sp = eig(a);
  double maxre = -1e300;
  for (const cplx& l : sp.values) maxre = std::max(maxre, l.real());
  v.margin = -maxre;
  v.pass = maxre < -tol;
  v.data["max_real_part"] = maxre;
  return v;
}

inline verdict is_schur(const rmatrix& a, double tol = 1e-9) {
  verdict v;
  v.kind = "schur";
  v.tolerance = tol;
  const spectrum sp = eig(a);
  double rho = 0.0;
  for (const cplx& l : sp.values) rho = std::max(rho, std::abs(l));
  v.margin = 1.0 - rho;
  v.pass = rho < 1.0 - tol;
  v.data["spectral_radius"] = rho;
  return v;
}

inline double spectral_radius(const rmatrix& a) {
  double rho = 0.0;
  for (const cplx& l : eig(a).values) rho = std::max(rho, std::abs(l));
  return rho;
}

// ---------------------------------------------------------------------------
// Fractional matrix powers and the alpha-compounds.
// ---------------------------------------------------------------------------

/// Principal-branch fractional power V diag(lambda^s) V^-1 of a diagonalizable
/// matrix. Rejects singular inputs, eigenvalues on the closed negative real
/// axis (for non-integer s), and eigenvector matrices with condition number
/// above 1e8.
inline cmatrix frac_power(const cmatrix& a, double s) {
  if (!a.is_square()) throw std::invalid_argument("frac_power: matrix not square");
  const int n = a.rows();
  const double scale = std::max(a.max_abs(), 1e-300);
  const spectrum sp = eig(a, true);
  if (!sp.converged)
    throw std::domain_error(
        "frac_power: eigenvector computation did not converge (defective input?)");
  const bool integer_s = std::abs(s - std::round(s)) < 1e-14;
  for (const cplx& l : sp.values) {
    if (std::abs(l) <= 1e-13 * scale) throw std::domain_error("frac_power: singular input");
    if (!integer_s && l.real() < 0.0 && std::abs(l.imag()) <= 1e-12 * std::abs(l))
      throw std::domain_error(
          "frac_power: eigenvalue on the closed negative real axis (principal branch cut)");
  }
  cmatrix vinv;
  try {
    vinv = inverse(sp.vectors);
  } catch (const std::domain_error&) {
    throw std::domain_error("frac_power: eigenvector matrix numerically singular");
  }
  const double cond = sp.vectors.one_norm() * vinv.one_norm();
  if (cond > 1e8)
    throw std::domain_error("frac_power: input defective within tolerance (cond(V) > 1e8)");
  cmatrix d(n, n);
  for (int i = 0; i < n; ++i) d(i, i) = std::exp(s * std::log(sp.values[i]));
  return sp.vectors * (d * vinv);
}

inline cmatrix frac_power(const rmatrix& a, double s) { return frac_power(to_complex(a), s); }

struct alpha_parts {
  int k = 0;
  double s = 0.0;
};

inline alpha_parts split_alpha(double alpha, int n) {
  const int k = static_cast<int>(std::floor(alpha));
  const double s = alpha - k;
  if (!(alpha > 1.0) || !(alpha < static_cast<double>(n)))
    throw std::invalid_argument("alpha compound: need alpha in (1, n)");
  if (s <= 0.0 || s >= 1.0)
    throw std::invalid_argument("alpha compound: alpha must be non-integer (k + s, s in (0,1))");
  return {k, s};
}

/// A^(alpha) := (A^(k))^(1-s) (x) (A^(k+1))^s, alpha = k + s.
inline cmatrix alpha_mult_compound(const rmatrix& a, double alpha) {
  if (!a.is_square()) throw std::invalid_argument("alpha_mult_compound: matrix not square");
  const auto [k, s] = split_alpha(alpha, a.rows());
  if (std::abs(det(a)) == 0.0)
    throw std::domain_error("alpha_mult_compound: singular input");
  const cmatrix mk = to_complex(mult_compound(a, k).entries);
  const cmatrix mk1 = to_complex(mult_compound(a, k + 1).entries);
  return kron(frac_power(mk, 1.0 - s), frac_power(mk1, s));
}

/// A^[alpha] := ((1-s) A^[k]) (+) (s A^[k+1]), alpha = k + s.
template <class T>
matrix<T> alpha_add_compound(const matrix<T>& a, double alpha) {
  if (!a.is_square()) throw std::invalid_argument("alpha_add_compound: matrix not square");
  const auto [k, s] = split_alpha(alpha, a.rows());
  const matrix<T> ak = add_compound(a, k).entries;
  const matrix<T> ak1 = add_compound(a, k + 1).entries;
  return kron_sum((1.0 - s) * ak, s * ak1);
}

}  // namespace ck
