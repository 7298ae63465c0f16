#include <doctest.h>

#include "test_support.hpp"

using namespace ck;

TEST_SUITE_BEGIN("positivity");

TEST_CASE("metzler and irreducibility on the section-8 matrices") {
  const rmatrix a(3, 3, {2, 1, -0.5, 0, -1, 0.5, -1, 0, 5});
  CHECK_FALSE(is_metzler(a).pass);
  const rmatrix a2 = add_compound(a, 2).entries;
  CHECK(is_metzler(a2).pass);
  CHECK(is_irreducible(a2).pass);

  // block upper-triangular with a zero lower block is reducible
  const rmatrix red(3, 3, {1, 2, 3, 0, 4, 5, 0, 0, 6});
  CHECK_FALSE(is_irreducible(red).pass);
}

TEST_CASE("metzler_compound_pattern matches the n=5 displays") {
  const sign_pattern p4 = metzler_compound_pattern(5, 4);
  // first row: *, +, -, +, -
  CHECK(p4.at(0, 1) == entry_constraint::nonneg);
  CHECK(p4.at(0, 2) == entry_constraint::nonpos);
  CHECK(p4.at(0, 3) == entry_constraint::nonneg);
  CHECK(p4.at(0, 4) == entry_constraint::nonpos);
  CHECK(p4.at(0, 0) == entry_constraint::free_entry);

  const sign_pattern p3 = metzler_compound_pattern(5, 3);
  CHECK(p3.at(0, 4) == entry_constraint::nonneg);  // corner a15 >= 0
  CHECK(p3.at(4, 0) == entry_constraint::nonneg);
  CHECK(p3.at(0, 1) == entry_constraint::nonneg);
  CHECK(p3.at(0, 2) == entry_constraint::zero);

  const sign_pattern p2 = metzler_compound_pattern(5, 2);
  CHECK(p2.at(0, 4) == entry_constraint::nonpos);  // corner a15 <= 0
  CHECK(p2.at(4, 0) == entry_constraint::nonpos);
  CHECK(p2.at(0, 1) == entry_constraint::nonneg);

  CHECK_THROWS_AS(metzler_compound_pattern(2, 1), std::invalid_argument);
}

TEST_CASE("pattern membership is equivalent to the compound being Metzler") {
  ck::rng g(401);
  for (int n = 3; n <= 6; ++n)
    for (int k = 2; k <= n - 1; ++k) {
      const sign_pattern pat = metzler_compound_pattern(n, k);
      for (int rep = 0; rep < 100; ++rep) {
        rmatrix a;
        if (rep % 2 == 0) {
          a = ts::random_pattern_conforming(g, pat);
        } else {
          a = ts::random_pattern_conforming(g, pat);
          // random off-pattern perturbation
          const int i = g.uniform_int(0, n - 1), j = g.uniform_int(0, n - 1);
          a(i, j) += g.uniform(-1.0, 1.0);
        }
        const bool member = pat.matches(a, 1e-12);
        const bool metzler = is_metzler(add_compound(a, k).entries, 1e-12).pass;
        CHECK(member == metzler);
      }
    }
}

TEST_CASE("k_positive_verdict on the worked example and perturbations") {
  const rmatrix a(3, 3, {2, 1, -0.5, 0, -1, 0.5, -1, 0, 5});
  const verdict strong = k_positive_verdict(make_lti(a), 2, true);
  CHECK(strong.pass);

  CHECK(k_positive_verdict(make_lti(rmatrix(2, 2, {-1, 0.5, 0.25, -2})), 1, false).pass);

  // perturb one entry to break the k=2 pattern: a13 must be <= 0 for n=3, k=2
  rmatrix broken = a;
  broken(0, 2) = +0.5;
  const verdict v = k_positive_verdict(make_lti(broken), 2, false);
  CHECK_FALSE(v.pass);
  CHECK(!v.witness.empty());
}

TEST_CASE("strong positivity with an isolated irreducibility exception") {
  // Jacobi band with one superdiagonal entry crossing zero at t = 1: the
  // compound stays Metzler everywhere but irreducibility fails at that sample
  std::vector<double> times;
  std::vector<rmatrix> samples;
  for (int i = 0; i <= 20; ++i) {
    const double t = 0.1 * i;
    rmatrix a(3, 3);
    for (int d = 0; d < 3; ++d) a(d, d) = -1.0;
    a(0, 1) = std::abs(t - 1.0);
    a(1, 0) = 1.0;
    a(1, 2) = 1.0;
    a(2, 1) = 1.0;
    samples.push_back(a);
    times.push_back(t);
  }
  const system_def sys = make_ltv(times, samples);
  CHECK(k_positive_verdict(sys, 2, false, times).pass);
  const verdict strict = k_positive_verdict(sys, 2, true, times, 1e-12, 0.0);
  CHECK_FALSE(strict.pass);
  const verdict tolerant = k_positive_verdict(sys, 2, true, times, 1e-12, 0.05);
  CHECK(tolerant.pass);
  CHECK(tolerant.data.at("irreducibility_failure_fraction") > 0.0);
}

TEST_CASE("k_positive_verdict rejects nonlinear systems and empty sampling") {
  CHECK_THROWS_AS(k_positive_verdict(make_thomas(0.1), 2, false), std::invalid_argument);
  CHECK_THROWS_AS(k_positive_verdict(make_squares_ltv(), 1, false, {}), std::invalid_argument);
}

TEST_CASE("jacobi recognition and the TP flow") {
  rmatrix j(4, 4);
  for (int i = 0; i < 4; ++i) j(i, i) = -0.5;
  for (int i = 0; i + 1 < 4; ++i) {
    j(i, i + 1) = 1.0;
    j(i + 1, i) = 1.0;
  }
  CHECK(is_jacobi(j).pass);

  // A Jacobi => A^[k] Metzler and irreducible for all k <= n-1
  for (int k = 1; k <= 3; ++k) {
    const rmatrix jk = add_compound(j, k).entries;
    CHECK(is_metzler(jk).pass);
    CHECK(is_irreducible(jk).pass);
  }

  // exp(At) is TP at t = 0.5: every compound strictly positive
  const rmatrix e = expm(0.5 * j);
  const sign_regularity sr = classify_sign_regularity(e, 4);
  CHECK(sr.tp(4));

  rmatrix broken = j;
  broken(1, 2) = 0.0;
  CHECK_FALSE(is_jacobi(broken).pass);
  rmatrix offband = j;
  offband(0, 2) = 0.1;
  CHECK_FALSE(is_jacobi(offband).pass);
}

TEST_CASE("cone membership") {
  CHECK(cone_membership({2, 1}, 1).pass);
  const verdict mid = cone_membership({0.5, -0.5}, 1);  // midpoint of (2,1) and (-1,-2)
  CHECK_FALSE(mid.pass);

  const verdict v = cone_membership({-1, 0, 0, 2, -3}, 3);
  CHECK(v.pass);                            // s^- = 2 <= 2
  CHECK(v.data.at("in_P_plus") == 0.0);     // s^+ = 4 > 2
}

TEST_CASE("trajectory invariance of P^k_- for the strongly 2-positive LTI") {
  const rmatrix a(3, 3, {2, 1, -0.5, 0, -1, 0.5, -1, 0, 5});
  const system_def sys = make_lti(a);
  ck::rng g(409);
  int tested = 0;
  for (int rep = 0; rep < 100; ++rep) {
    std::vector<double> x0 = g.vector(3, -5.0, 5.0);
    if (s_minus(x0) > 1) continue;
    ++tested;
    const trajectory tr = integrate(sys, x0, 0.0, 2.0, 1e-2);
    for (size_t i = 0; i < tr.states.size(); i += 5)
      CHECK(s_minus(tr.states[i]) <= 1);
  }
  CHECK(tested >= 30);

  // the figure's worked initial point
  const trajectory tr = integrate(sys, {2, -30, -6}, 0.0, 3.0, 1e-3);
  for (size_t i = 0; i < tr.states.size(); i += 50) CHECK(s_minus(tr.states[i]) <= 1);
}

TEST_CASE("Schwarz property: Jacobi flows never increase sign variation") {
  rmatrix j(4, 4);
  for (int i = 0; i < 4; ++i) j(i, i) = -0.3;
  for (int i = 0; i + 1 < 4; ++i) {
    j(i, i + 1) = 0.8;
    j(i + 1, i) = 1.1;
  }
  REQUIRE(is_jacobi(j).pass);
  const system_def sys = make_lti(j);
  ck::rng g(419);
  for (int rep = 0; rep < 20; ++rep) {
    const std::vector<double> x0 = g.vector(4, -2.0, 2.0);
    const trajectory tr = integrate(sys, x0, 0.0, 3.0, 1e-2);
    int prev_minus = s_minus(tr.states.front());
    int prev_plus = s_plus(tr.states.front());
    for (size_t i = 1; i < tr.states.size(); i += 10) {
      const int sm = s_minus(tr.states[i]);
      const int sp = s_plus(tr.states[i]);
      CHECK(sm <= prev_minus);
      CHECK(sp <= prev_plus);
      prev_minus = sm;
      prev_plus = sp;
    }
  }
}

TEST_SUITE_END();
