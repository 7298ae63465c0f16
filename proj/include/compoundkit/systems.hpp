#pragma once

#include <cmath>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "compoundkit/matrix.hpp"

namespace ck {

enum class system_tag { lti, ltv_sampled, squares_ltv, thomas };

struct state_box {
  std::vector<double> lo;
  std::vector<double> hi;
};

/// Tagged dynamical-system description: LTI, time-sampled LTV with linear
/// interpolation, or one of the built-in closed-form systems.
struct system_def {
  system_tag tag = system_tag::lti;
  int dim = 0;
  std::string name;

  rmatrix A;  // lti

  std::vector<double> sample_times;  // ltv_sampled, strictly increasing
  std::vector<rmatrix> samples;

  double thomas_b = 0.0;  // thomas
  std::optional<double> thomas_gain;

  std::optional<state_box> omega;

  bool linear() const { return tag != system_tag::thomas; }
};

inline system_def make_lti(rmatrix a, std::string name = "lti") {
  if (!a.is_square()) throw std::invalid_argument("make_lti: matrix not square");
  system_def s;
  s.tag = system_tag::lti;
  s.dim = a.rows();
  s.A = std::move(a);
  s.name = std::move(name);
  return s;
}

inline system_def make_rotation(double c) {
  return make_lti(rmatrix(2, 2, {0.0, c, -c, 0.0}), "rotation");
}

inline system_def make_squares_ltv() {
  system_def s;
  s.tag = system_tag::squares_ltv;
  s.dim = 2;
  s.name = "squares_ltv";
  return s;
}

inline system_def make_thomas(double b, std::optional<double> gain = std::nullopt) {
  if (!(b > 0.0)) throw std::invalid_argument("make_thomas: need b > 0");
  system_def s;
  s.tag = system_tag::thomas;
  s.dim = 3;
  s.name = "thomas";
  s.thomas_b = b;
  s.thomas_gain = gain;
  state_box box;
  box.lo = {-1.0 / b, -1.0 / b, -1.0 / b};
  box.hi = {1.0 / b, 1.0 / b, 1.0 / b};
  s.omega = box;
  return s;
}

inline system_def make_ltv(std::vector<double> times, std::vector<rmatrix> samples) {
  if (times.size() != samples.size() || times.size() < 2)
    throw std::invalid_argument("make_ltv: need matching times/samples, at least two");
  for (size_t i = 1; i < times.size(); ++i)
    if (!(times[i] > times[i - 1]))
      throw std::invalid_argument("make_ltv: times must be strictly increasing");
  const int n = samples.front().rows();
  for (const rmatrix& m : samples)
    if (m.rows() != n || m.cols() != n)
      throw std::invalid_argument("make_ltv: inconsistent sample dimensions");
  system_def s;
  s.tag = system_tag::ltv_sampled;
  s.dim = n;
  s.name = "ltv_sampled";
  s.sample_times = std::move(times);
  s.samples = std::move(samples);
  return s;
}

struct weighted_edge {
  int from = 0;  // 1-based vertices
  int to = 0;
  double weight = 1.0;
};

/// Consensus system xdot = -L x from a weighted edge list. Requires a
/// globally reachable vertex (one reachable from every vertex along edge
/// directions); undirected graphs should list both directions.
inline system_def make_consensus_laplacian(int n, const std::vector<weighted_edge>& edges) {
  if (n < 2) throw std::invalid_argument("consensus: need at least two vertices");
  rmatrix l(n, n);
  std::vector<std::vector<bool>> reach(n, std::vector<bool>(n, false));
  for (int i = 0; i < n; ++i) reach[i][i] = true;
  for (const weighted_edge& e : edges) {
    if (e.from < 1 || e.from > n || e.to < 1 || e.to > n)
      throw std::invalid_argument("consensus: vertex out of range");
    if (!(e.weight > 0.0)) throw std::invalid_argument("consensus: weights must be positive");
    l(e.to - 1, e.from - 1) -= e.weight;
    l(e.to - 1, e.to - 1) += e.weight;
    reach[e.from - 1][e.to - 1] = true;
  }
  for (int k = 0; k < n; ++k)
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j)
        if (reach[i][k] && reach[k][j]) reach[i][j] = true;
  bool has_root = false;
  for (int v = 0; v < n && !has_root; ++v) {
    bool all = true;
    for (int u = 0; u < n; ++u) all = all && reach[u][v];
    has_root = all;
  }
  if (!has_root)
    throw std::invalid_argument("consensus: graph has no globally reachable vertex");
  system_def s = make_lti(-1.0 * l, "consensus_laplacian");
  return s;
}

// ---------------------------------------------------------------------------
// Evaluation.
// ---------------------------------------------------------------------------

inline rmatrix squares_matrix(double t) {
  return rmatrix(2, 2, {-1.0, 0.0, -2.0 * std::cos(t), 0.0});
}

/// A(t) of a linear system; rejects nonlinear tags.
inline rmatrix system_matrix(const system_def& s, double t) {
  switch (s.tag) {
    case system_tag::lti:
      return s.A;
    case system_tag::squares_ltv:
      return squares_matrix(t);
    case system_tag::ltv_sampled: {
      const auto& ts = s.sample_times;
      if (t <= ts.front()) return s.samples.front();
      if (t >= ts.back()) return s.samples.back();
      size_t hi = 1;
      while (ts[hi] < t) ++hi;
      const double w = (t - ts[hi - 1]) / (ts[hi] - ts[hi - 1]);
      return (1.0 - w) * s.samples[hi - 1] + w * s.samples[hi];
    }
    case system_tag::thomas:
      throw std::invalid_argument("system_matrix: nonlinear system has no A(t)");
  }
  throw std::logic_error("system_matrix: unknown tag");
}

inline rmatrix thomas_jacobian(const system_def& s, const std::vector<double>& x) {
  const double b = s.thomas_b;
  rmatrix j(3, 3,
            {-b, std::cos(x[1]), 0.0,
             0.0, -b, std::cos(x[2]),
             std::cos(x[0]), 0.0, -b});
  if (s.thomas_gain) {
    const double c = *s.thomas_gain;
    j(0, 0) += c;
    j(1, 1) += c;
  }
  return j;
}

/// Jacobian of the vector field at (t, x); for linear systems this is A(t).
inline rmatrix jacobian(const system_def& s, double t, const std::vector<double>& x) {
  if (s.tag == system_tag::thomas) return thomas_jacobian(s, x);
  return system_matrix(s, t);
}

inline std::vector<double> vector_field(const system_def& s, double t,
                                        const std::vector<double>& x) {
  if (static_cast<int>(x.size()) != s.dim)
    throw std::invalid_argument("vector_field: state dimension mismatch");
  if (s.tag == system_tag::thomas) {
    const double b = s.thomas_b;
    std::vector<double> f = {std::sin(x[1]) - b * x[0],
                             std::sin(x[2]) - b * x[1],
                             std::sin(x[0]) - b * x[2]};
    if (s.thomas_gain) {
      const double c = *s.thomas_gain;
      f[0] += c * x[0];
      f[1] += c * x[1];
    }
    return f;
  }
  return system_matrix(s, t) * x;
}

}  // namespace ck
