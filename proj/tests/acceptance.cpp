// Acceptance suite: one numbered criterion per function, each printing a
// single [PASS]/[FAIL] line. Run with no arguments for all criteria or with a
// criterion number. Exit code 0 iff every executed criterion passed.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <functional>
#include <iostream>
#include <string>
#include <vector>

#include "compoundkit/compoundkit.hpp"

#include "test_support.hpp"

using namespace ck;

namespace {

struct criterion_state {
  bool ok = true;
  long checks = 0;
  std::string first_failure;

  void expect(bool cond, const std::string& what) {
    ++checks;
    if (!cond && ok) {
      ok = false;
      first_failure = what;
    }
  }
};

bool run_criterion(int number, const std::string& label, double time_limit_s,
                   const std::function<void(criterion_state&)>& body) {
  criterion_state st;
  const auto t0 = std::chrono::steady_clock::now();
  try {
    body(st);
  } catch (const std::exception& e) {
    st.expect(false, std::string("exception: ") + e.what());
  }
  const double secs =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  if (time_limit_s > 0.0 && secs > time_limit_s)
    st.expect(false, "runtime " + std::to_string(secs) + "s exceeds " +
                         std::to_string(time_limit_s) + "s");
  std::printf("[%s] criterion %2d: %s (%ld checks, %.2fs)%s%s\n", st.ok ? "PASS" : "FAIL",
              number, label.c_str(), st.checks, secs, st.ok ? "" : " -- ",
              st.ok ? "" : st.first_failure.c_str());
  std::fflush(stdout);
  return st.ok;
}

double rel_err(double got, double expect) {
  return std::abs(got - expect) / std::max(1.0, std::abs(expect));
}

// --------------------------------------------------------------------------
// 1. Cauchy-Binet: 500 random (A,B), dims <= 6, all valid k, rel tol 1e-8.
// --------------------------------------------------------------------------
void criterion_1(criterion_state& st) {
  rng g(1001);
  for (int rep = 0; rep < 500; ++rep) {
    const int n = g.uniform_int(2, 6), m = g.uniform_int(2, 6), p = g.uniform_int(2, 6);
    const rmatrix a = g.matrix_uniform(n, m), b = g.matrix_uniform(m, p);
    const rmatrix ab = a * b;
    for (int k = 1; k <= std::min({n, m, p}); ++k) {
      const rmatrix lhs = mult_compound(ab, k).entries;
      const rmatrix rhs = mult_compound(a, k).entries * mult_compound(b, k).entries;
      for (int i = 0; i < lhs.rows(); ++i)
        for (int j = 0; j < lhs.cols(); ++j) {
          const double scale = std::max({1.0, std::abs(lhs(i, j)), std::abs(rhs(i, j))});
          st.expect(std::abs(lhs(i, j) - rhs(i, j)) <= 1e-8 * scale,
                    "(AB)^(k) != A^(k) B^(k) at rep " + std::to_string(rep));
        }
    }
  }
}

// --------------------------------------------------------------------------
// 2. Spectral mapping: 200 random A (n <= 6), all k, multiset tol 1e-5.
// --------------------------------------------------------------------------
void criterion_2(criterion_state& st) {
  rng g(1002);
  for (int rep = 0; rep < 200; ++rep) {
    const int n = g.uniform_int(2, 6);
    const rmatrix a = g.matrix_uniform(n, n);
    for (int k = 1; k <= n; ++k) {
      const verdict v = check_compound_spectrum(a, k, 1e-5);
      st.expect(v.pass, "eigenvalue multiset mismatch at rep " + std::to_string(rep) +
                            ", k=" + std::to_string(k));
    }
  }
}

// --------------------------------------------------------------------------
// 3. Exponential identity: 100 random A (n <= 5), k <= n, t in {0.1, 1}.
// --------------------------------------------------------------------------
void criterion_3(criterion_state& st) {
  rng g(1003);
  for (int rep = 0; rep < 100; ++rep) {
    const int n = g.uniform_int(2, 5);
    const rmatrix a = g.matrix_uniform(n, n);
    for (int k = 1; k <= n; ++k)
      for (double t : {0.1, 1.0}) {
        const rmatrix lhs = expm(t * add_compound(a, k).entries);
        const rmatrix rhs = mult_compound(expm(t * a), k).entries;
        for (int i = 0; i < lhs.rows(); ++i)
          for (int j = 0; j < lhs.cols(); ++j)
            st.expect(rel_err(lhs(i, j), rhs(i, j)) <= 1e-6,
                      "exp(A^[k] t) != (exp(At))^(k) at rep " + std::to_string(rep));
      }
  }
}

// --------------------------------------------------------------------------
// 4. Paper-value regressions, exact.
// --------------------------------------------------------------------------
void criterion_4(criterion_state& st) {
  const rmatrix a8(3, 3, {2, 1, -0.5, 0, -1, 0.5, -1, 0, 5});
  const rmatrix a8_expect(3, 3, {1, 0.5, 0.5, 0, 7, 1, 1, 0, 4});
  const rmatrix a8_got = add_compound(a8, 2).entries;
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j)
      st.expect(a8_got(i, j) == a8_expect(i, j), "A^[2] regression mismatch");

  const rmatrix b23(2, 3, {2, 1, 1, 1, 3, 4});
  const rmatrix b23_got = mult_compound(b23, 2).entries;
  const double b23_expect[3] = {5, 7, 1};
  for (int j = 0; j < 3; ++j)
    st.expect(b23_got(0, j) == b23_expect[j], "A^(2) of the 2x3 example mismatch");

  const rmatrix fallat(3, 3, {3, 1, 2, 2, 1, 3, 1, 3, 10});
  const double contiguous_expect[2][2] = {{1, 1}, {5, 1}};
  for (int p = 1; p <= 2; ++p)
    for (int q = 1; q <= 2; ++q) {
      index_set al{{p, p + 1}, 3}, be{{q, q + 1}, 3};
      st.expect(minor_of(fallat, al, be) == contiguous_expect[p - 1][q - 1],
                "contiguous 2-minor mismatch");
    }

  const sign_regularity sr = classify_sign_regularity(rmatrix(2, 2, {1, 2, 3, 4}), 2);
  st.expect(sr.order(1) == sign_class::ssr_pos, "SSR_1 signature");
  st.expect(sr.order(2) == sign_class::ssr_neg, "SSR_2 signature");
}

// --------------------------------------------------------------------------
// 5. SVDP fuzz: 50 TP matrices (bidiagonal products), 1e4 random x each.
// --------------------------------------------------------------------------
void criterion_5(criterion_state& st) {
  rng g(1005);
  for (int m = 0; m < 50; ++m) {
    const int n = g.uniform_int(2, 5);
    rmatrix a(0, 0);
    try {
      a = ts::random_tp(g, n);
    } catch (const std::exception& e) {
      st.expect(false, e.what());
      return;
    }
    for (int t = 0; t < 10000; ++t) {
      std::vector<double> x = g.vector(n, -2.0, 2.0);
      const std::vector<double> ax = a * x;
      const int sx = s_minus(x);
      const int sax = s_plus(ax);
      st.expect(sax <= sx, "s+(Ax) > s-(x)");
      if (sax == sx) {
        int first_x = 0;
        for (double v : x)
          if (v != 0.0) {
            first_x = v > 0 ? 1 : -1;
            break;
          }
        st.expect(s_plus_first_sign(ax) == first_x, "orientation flip on equality");
      }
    }
  }
}

// --------------------------------------------------------------------------
// 6. Metzler-pattern equivalence: n in {3,4,5}, k in 2..n-1, 300 each.
// --------------------------------------------------------------------------
void criterion_6(criterion_state& st) {
  rng g(1006);
  for (int n = 3; n <= 5; ++n)
    for (int k = 2; k <= n - 1; ++k) {
      const sign_pattern pat = metzler_compound_pattern(n, k);
      for (int rep = 0; rep < 300; ++rep) {
        rmatrix a = ts::random_pattern_conforming(g, pat);
        if (rep % 2 == 1) {
          const int i = g.uniform_int(0, n - 1), j = g.uniform_int(0, n - 1);
          a(i, j) += g.uniform(-1.0, 1.0);
        }
        const bool member = pat.matches(a, 1e-12);
        const bool metzler = is_metzler(add_compound(a, k).entries, 1e-12).pass;
        st.expect(member == metzler, "pattern/Metzler disagreement at n=" +
                                         std::to_string(n) + " k=" + std::to_string(k));
      }
    }
}

// --------------------------------------------------------------------------
// 7. Squares-example dynamics.
// --------------------------------------------------------------------------
void criterion_7(criterion_state& st) {
  const system_def sq = make_squares_ltv();
  for (double t : {0.5, 1.0, 2.0}) {
    const rmatrix phi = transition_matrix(sq, 0.0, t, 1e-3);
    const rmatrix expect = squares_transition_closed_form(t);
    for (int i = 0; i < 2; ++i)
      for (int j = 0; j < 2; ++j)
        st.expect(std::abs(phi(i, j) - expect(i, j)) <= 1e-6,
                  "transition matrix off the closed form at t=" + std::to_string(t));
  }

  const volume_series vs =
      volume_evolution(sq, rmatrix::identity(2), 0.0, 5.0, 1e-3);
  for (size_t i = 0; i < vs.times.size(); i += 50)
    st.expect(std::abs(vs.volumes[i] - std::exp(-vs.times[i])) <= 1e-5,
              "unit-square area differs from exp(-t)");

  rng g(1007);
  for (int rep = 0; rep < 5; ++rep) {
    const std::vector<double> x0 = g.vector(2, -2.0, 2.0);
    const trajectory tr = integrate(sq, x0, 0.0, 10.0, 1e-3);
    st.expect(std::abs(tr.states.back()[0] - 0.0) <= 1e-3, "limit first component");
    st.expect(std::abs(tr.states.back()[1] - (x0[1] - x0[0])) <= 1e-3,
              "limit second component");
  }
}

// --------------------------------------------------------------------------
// 8. Thomas de-chaotification, b = 0.15, c = 2b - 1.15, and open-loop volume.
// --------------------------------------------------------------------------
void criterion_8(criterion_state& st) {
  const double b = 0.15;
  const double c = 2.0 * b - 1.15;
  const system_def closed = make_thomas(b, c);
  rng g(1008);
  for (int rep = 0; rep < 12; ++rep) {
    const std::vector<double> x0 = g.vector(3, -1.0 / b, 1.0 / b);
    const trajectory tr = integrate(closed, x0, 0.0, 200.0, 1e-3);
    st.expect(!tr.aborted, "closed-loop trajectory blew up");
    st.expect(final_window_max_speed(closed, tr, 0.1) < 1e-6,
              "trajectory " + std::to_string(rep) + " did not settle");
  }

  const double b_open = 0.1;
  rng g2(10080);
  const rmatrix frame = g2.matrix_uniform(3, 3);
  const volume_series vs =
      volume_evolution(make_thomas(b_open), frame, 0.0, 10.0, 1e-3, {0.4, -0.3, 0.7});
  const double ratio = vs.volumes.back() / vs.volumes.front();
  const double expect = std::exp(-3.0 * b_open * 10.0);
  st.expect(std::abs(ratio - expect) <= 0.02 * expect, "open-loop 3-volume decay ratio");
}

// --------------------------------------------------------------------------
// 9. alpha-compound consistency.
// --------------------------------------------------------------------------
void criterion_9(criterion_state& st) {
  rng g(1009);
  for (int rep = 0; rep < 100; ++rep) {
    const int n = g.uniform_int(3, 5);
    int k = g.uniform_int(1, n - 1);
    // keep the alpha compound within the eigensolver's dimension cap
    while (binomial(n, k) * binomial(n, k + 1) > 64) k = g.uniform_int(1, n - 1);
    const rmatrix a = g.matrix_uniform(n, n);
    const double s = g.uniform(0.05, 0.95);
    const auto sk = eig(add_compound(a, k).entries).values;
    const auto sk1 = eig(add_compound(a, k + 1).entries).values;
    std::vector<cplx> expect;
    for (const cplx& sig : sk)
      for (const cplx& tau : sk1) expect.push_back((1.0 - s) * sig + s * tau);
    const auto got = eig(alpha_add_compound(a, k + s)).values;
    double mag = 1.0;
    for (const cplx& e : expect) mag = std::max(mag, std::abs(e));
    st.expect(multiset_mismatch(expect, got) <= 1e-5 * mag,
              "alpha additive spectrum mismatch at rep " + std::to_string(rep));
  }

  for (int rep = 0; rep < 20; ++rep) {
    std::vector<double> d(4);
    for (double& v : d) v = g.uniform(0.2, 3.0);
    const double s = g.uniform(0.05, 0.95);
    const cmatrix c = alpha_mult_compound(rmatrix::diagonal(d), 2.0 + s);
    const auto pairs = index_sets::enumerate(2, 4);
    const auto triples = index_sets::enumerate(3, 4);
    for (size_t i = 0; i < pairs.size(); ++i)
      for (size_t j = 0; j < triples.size(); ++j) {
        double dp = 1.0, dt = 1.0;
        for (int e : pairs[i].elements) dp *= d[e - 1];
        for (int e : triples[j].elements) dt *= d[e - 1];
        const double expect = std::pow(dp, 1.0 - s) * std::pow(dt, s);
        const int row = static_cast<int>(i * triples.size() + j);
        st.expect(std::abs(c(row, row) - cplx(expect, 0.0)) <=
                      1e-10 * std::max(1.0, expect),
                  "diagonal alpha-compound entry mismatch");
        // off-diagonal entries of a diagonal interpolation vanish
        for (int col = 0; col < c.cols(); ++col)
          if (col != row)
            st.expect(std::abs(c(row, col)) <= 1e-10,
                      "diagonal alpha-compound has off-diagonal mass");
      }
  }
}

// --------------------------------------------------------------------------
// 10. Diagonal stability: Lemma conditions + lifting.
// --------------------------------------------------------------------------
void criterion_10(criterion_state& st) {
  rng g(1010);
  for (int rep = 0; rep < 200; ++rep) {
    const int n = g.uniform_int(2, 5);
    const rmatrix a = ts::random_nonneg_schur(g, n);
    st.expect(is_schur(a).pass, "constructed matrix not Schur");
    const rmatrix ima = rmatrix::identity(n) - a;
    const std::vector<double> ones(n, 1.0);
    const std::vector<double> xi = solve(ima, ones);
    const std::vector<double> z = solve(ima.transpose(), ones);
    const std::vector<double> axi = a * xi;
    const std::vector<double> atz = a.transpose() * z;
    for (int i = 0; i < n; ++i) {
      st.expect(xi[i] > 0.0 && axi[i] < xi[i], "A xi << xi fails");
      st.expect(z[i] > 0.0 && atz[i] < z[i], "A^T z << z fails");
    }
    const rmatrix inv = inverse(ima);
    for (const double v : inv.data()) st.expect(v >= -1e-12, "(I-A)^-1 not nonnegative");
    const diagonal_certificate cert = construct_dlf_nonneg(a);
    st.expect(cert.margin > 0.0, "constructed certificate fails verification");
  }

  for (int rep = 0; rep < 100; ++rep) {
    const int n = g.uniform_int(2, 5);
    std::vector<double> p;
    const rmatrix a = ts::random_diag_stable(g, n, p);
    st.expect(verify_k_diag_stability(a, 1, p).pass, "base certificate invalid");
    for (int k = 1; k <= n; ++k)
      st.expect(lift_dlf(a, p, k).margin > 0.0,
                "lifted certificate fails at k=" + std::to_string(k));
  }
}

// --------------------------------------------------------------------------
// 11. Hankel suite.
// --------------------------------------------------------------------------
void criterion_11(criterion_state& st) {
  st.expect(hankel_k_positive_verdict(first_order_lag(0.5, 2.0), 1, 200).pass,
            "positive lag fails k=1");
  st.expect(hankel_k_positive_verdict(first_order_lag(0.5, 2.0), 2, 200).pass,
            "positive lag fails boundary k=2");
  st.expect(!hankel_k_positive_verdict(first_order_lag(-0.5, 2.0), 1, 200).pass,
            "alternating lag passes k=1");

  rng g(1011);
  for (int rep = 0; rep < 100; ++rep) {
    const double p1 = g.uniform(0.05, 0.9), p2 = g.uniform(0.05, 0.9);
    const double r1 = g.uniform(0.1, 2.0), r2 = g.uniform(0.1, 2.0);
    st.expect(hankel_k_positive_verdict(first_order_lag(p1, r1), 1, 150).pass &&
                  hankel_k_positive_verdict(first_order_lag(p2, r2), 1, 150).pass &&
                  hankel_k_positive_verdict(parallel_lags({p1, p2}, {r1, r2}), 1, 150).pass,
              "parallel closure violated at rep " + std::to_string(rep));
  }

  const hankel_system relax = parallel_lags({0.75, 0.35, 0.15}, {1.0, 0.6, 0.3});
  for (int k = 1; k <= 3; ++k) {
    st.expect(hankel_k_positive_verdict(relax, k, 200).pass,
              "relaxation system fails k=" + std::to_string(k));
    const impulse_response ir = impulse_response_of(relax, 200);
    for (int rep = 0; rep < 1000; ++rep) {
      const int t_len = g.uniform_int(2, 8);
      const std::vector<double> u = g.vector(t_len);
      if (s_minus(u) > k - 1) continue;
      const std::vector<double> y = hankel_operator_apply(ir, u, 60);
      const double scale = vec_norm_inf(y);
      const int sy = s_minus(y, 1e-12 * scale);
      const int su = s_minus(u);
      st.expect(sy <= su, "operator SVDP violated");
      if (sy == su) {
        int first_u = 0, first_y = 0;
        for (double v : u)
          if (v != 0.0) {
            first_u = v > 0 ? 1 : -1;
            break;
          }
        for (double v : y)
          if (std::abs(v) > 1e-12 * scale) {
            first_y = v > 0 ? 1 : -1;
            break;
          }
        st.expect(first_u == first_y, "operator SVDP orientation flip");
      }
    }
  }
}

}  // namespace

int main(int argc, char** argv) {
  int only = 0;
  if (argc > 1) only = std::atoi(argv[1]);

  struct entry {
    int number;
    const char* label;
    double limit;
    std::function<void(criterion_state&)> body;
  };
  const std::vector<entry> entries = {
      {1, "Cauchy-Binet, 500 random pairs, rel tol 1e-8", 10.0, criterion_1},
      {2, "spectral mapping of both compounds, tol 1e-5", 30.0, criterion_2},
      {3, "exponential identity, tol 1e-6", 0.0, criterion_3},
      {4, "paper-value regressions, exact", 0.0, criterion_4},
      {5, "SVDP fuzz on TP matrices, zero violations", 0.0, criterion_5},
      {6, "Metzler-pattern equivalence, zero disagreements", 0.0, criterion_6},
      {7, "squares-example dynamics", 0.0, criterion_7},
      {8, "Thomas de-chaotification and volume decay", 60.0, criterion_8},
      {9, "alpha-compound consistency", 0.0, criterion_9},
      {10, "diagonal stability recipe and lifting", 0.0, criterion_10},
      {11, "Hankel positivity suite", 0.0, criterion_11},
  };

  bool all_ok = true;
  for (const entry& e : entries) {
    if (only != 0 && e.number != only) continue;
    all_ok = run_criterion(e.number, e.label, e.limit, e.body) && all_ok;
  }
  return all_ok ? 0 : 1;
}
