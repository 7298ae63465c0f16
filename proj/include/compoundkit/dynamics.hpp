#pragma once

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>
#include <vector>

#include "compoundkit/compound.hpp"
#include "compoundkit/matrix.hpp"
#include "compoundkit/sign_tools.hpp"
#include "compoundkit/systems.hpp"
#include "compoundkit/verdict.hpp"

namespace ck {

struct trajectory {
  std::vector<double> times;
  std::vector<std::vector<double>> states;
  double step = 0.0;
  std::string method = "rk4";
  bool aborted = false;  // non-finite state encountered; series ends at last valid time
};

namespace detail {

template <class F>
std::vector<double> rk4_step(F&& f, double t, const std::vector<double>& x, double h) {
  const size_t n = x.size();
  std::vector<double> k1 = f(t, x);
  std::vector<double> xs(n);
  for (size_t i = 0; i < n; ++i) xs[i] = x[i] + 0.5 * h * k1[i];
  std::vector<double> k2 = f(t + 0.5 * h, xs);
  for (size_t i = 0; i < n; ++i) xs[i] = x[i] + 0.5 * h * k2[i];
  std::vector<double> k3 = f(t + 0.5 * h, xs);
  for (size_t i = 0; i < n; ++i) xs[i] = x[i] + h * k3[i];
  std::vector<double> k4 = f(t + h, xs);
  std::vector<double> out(n);
  for (size_t i = 0; i < n; ++i)
    out[i] = x[i] + h / 6.0 * (k1[i] + 2.0 * (k2[i] + k3[i]) + k4[i]);
  return out;
}

inline bool finite_state(const std::vector<double>& x) {
  for (double v : x)
    if (!std::isfinite(v)) return false;
  return true;
}

// 16-point Gauss-Legendre nodes and weights on [-1, 1].
inline const double* gl16_nodes() {
  static const double x[8] = {0.0950125098376374, 0.2816035507792589, 0.4580167776572274,
                              0.6178762444026438, 0.7554044083550030, 0.8656312023878318,
                              0.9445750230732326, 0.9894009349916499};
  return x;
}

inline const double* gl16_weights() {
  static const double w[8] = {0.1894506104550685, 0.1826034150449236, 0.1691565193950025,
                              0.1495959888165767, 0.1246289712555339, 0.0951585116824928,
                              0.0622535239386479, 0.0271524594117541};
  return w;
}

}  // namespace detail

/// Classical fixed-step RK4 over [t0, t1]. Aborts early (flagged) if the state
/// leaves the finite range.
template <class F>
trajectory integrate_field(F&& f, std::vector<double> x0, double t0, double t1, double h) {
  if (!(h > 0.0)) throw std::invalid_argument("integrate: need h > 0");
  if (!(t1 >= t0)) throw std::invalid_argument("integrate: need t1 >= t0");
  trajectory tr;
  tr.step = h;
  const long steps = static_cast<long>(std::ceil((t1 - t0) / h - 1e-12));
  tr.times.reserve(steps + 1);
  tr.states.reserve(steps + 1);
  double t = t0;
  std::vector<double> x = std::move(x0);
  tr.times.push_back(t);
  tr.states.push_back(x);
  for (long i = 0; i < steps; ++i) {
    const double hh = std::min(h, t1 - t);
    x = detail::rk4_step(f, t, x, hh);
    t = (i + 1 == steps) ? t1 : t + hh;
    if (!detail::finite_state(x)) {
      tr.aborted = true;
      break;
    }
    tr.times.push_back(t);
    tr.states.push_back(x);
  }
  return tr;
}

inline trajectory integrate(const system_def& sys, const std::vector<double>& x0, double t0,
                            double t1, double h) {
  if (static_cast<int>(x0.size()) != sys.dim)
    throw std::invalid_argument("integrate: x0 dimension mismatch");
  return integrate_field(
      [&sys](double t, const std::vector<double>& x) { return vector_field(sys, t, x); }, x0, t0,
      t1, h);
}

/// Transition matrix Phi(t1, t0) of a linear system by RK4 on the matrix ODE.
inline rmatrix transition_matrix(const system_def& sys, double t0, double t1, double h) {
  if (!sys.linear())
    throw std::invalid_argument("transition_matrix: defined for LTI/LTV systems only");
  const int n = sys.dim;
  auto field = [&](double t, const std::vector<double>& phi) {
    const rmatrix a = system_matrix(sys, t);
    std::vector<double> d(phi.size(), 0.0);
    for (int i = 0; i < n; ++i)
      for (int l = 0; l < n; ++l) {
        const double ail = a(i, l);
        if (ail == 0.0) continue;
        for (int j = 0; j < n; ++j) d[i * n + j] += ail * phi[l * n + j];
      }
    return d;
  };
  std::vector<double> phi0(static_cast<size_t>(n) * n, 0.0);
  for (int i = 0; i < n; ++i) phi0[i * n + i] = 1.0;
  const trajectory tr = integrate_field(field, phi0, t0, t1, h);
  if (tr.aborted) throw std::runtime_error("transition_matrix: integration blew up");
  rmatrix phi(n, n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) phi(i, j) = tr.states.back()[i * n + j];
  return phi;
}

inline rmatrix squares_transition_closed_form(double t) {
  return rmatrix(2, 2,
                 {std::exp(-t), 0.0,
                  -1.0 + std::exp(-t) * (std::cos(t) - std::sin(t)), 1.0});
}

struct compound_series {
  int order = 0;
  std::vector<double> times;
  std::vector<std::vector<double>> values;  // compound vectors, length C(n,k)
};

/// Integrates the compound ODE dy/dt = A^[k](t) y from y(0) = X0^(k).
/// Linear systems use A(t) directly; nonlinear systems propagate a tangent
/// frame along the anchor trajectory (default anchor: the origin), i.e. the
/// compound of the variational flow.
inline compound_series compound_propagate(const system_def& sys, int k, const rmatrix& x0,
                                          double t0, double t1, double h,
                                          std::vector<double> anchor = {}) {
  if (x0.rows() != sys.dim || x0.cols() != k)
    throw std::invalid_argument("compound_propagate: X0 must be dim x k");
  const int n = sys.dim;
  const std::vector<double> y0 = mult_compound(x0, k).entries.col(0);
  const int r = static_cast<int>(y0.size());
  compound_series out;
  out.order = k;

  if (sys.linear()) {
    auto field = [&](double t, const std::vector<double>& y) {
      return add_compound(system_matrix(sys, t), k).entries * y;
    };
    const trajectory tr = integrate_field(field, y0, t0, t1, h);
    out.times = tr.times;
    out.values = tr.states;
    return out;
  }

  if (anchor.empty()) anchor.assign(n, 0.0);
  if (static_cast<int>(anchor.size()) != n)
    throw std::invalid_argument("compound_propagate: anchor dimension mismatch");
  std::vector<double> joint(anchor.begin(), anchor.end());
  joint.insert(joint.end(), y0.begin(), y0.end());
  auto field = [&](double t, const std::vector<double>& u) {
    const std::vector<double> x(u.begin(), u.begin() + n);
    const std::vector<double> y(u.begin() + n, u.end());
    std::vector<double> d = vector_field(sys, t, x);
    const std::vector<double> dy = add_compound(jacobian(sys, t, x), k).entries * y;
    d.insert(d.end(), dy.begin(), dy.end());
    return d;
  };
  const trajectory tr = integrate_field(field, joint, t0, t1, h);
  out.times = tr.times;
  out.values.reserve(tr.states.size());
  for (const auto& u : tr.states)
    out.values.emplace_back(u.begin() + n, u.end());
  (void)r;
  return out;
}

/// Directly propagates the n x k frame ODE dV/dt = A(t) V (variational frame
/// for nonlinear systems); the oracle side of the compound cross-check.
inline rmatrix propagate_frame(const system_def& sys, const rmatrix& v0, double t0, double t1,
                               double h, std::vector<double> anchor = {}) {
  const int n = sys.dim;
  const int k = v0.cols();
  const bool nonlinear = !sys.linear();
  if (anchor.empty()) anchor.assign(n, 0.0);
  std::vector<double> joint;
  if (nonlinear) joint.insert(joint.end(), anchor.begin(), anchor.end());
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < k; ++j) joint.push_back(v0(i, j));
  auto field = [&](double t, const std::vector<double>& u) {
    std::vector<double> d;
    rmatrix a;
    size_t off = 0;
    if (nonlinear) {
      const std::vector<double> x(u.begin(), u.begin() + n);
      d = vector_field(sys, t, x);
      a = jacobian(sys, t, x);
      off = static_cast<size_t>(n);
    } else {
      a = system_matrix(sys, t);
    }
    d.resize(off + static_cast<size_t>(n) * k, 0.0);
    for (int i = 0; i < n; ++i)
      for (int l = 0; l < n; ++l) {
        const double ail = a(i, l);
        if (ail == 0.0) continue;
        for (int j = 0; j < k; ++j) d[off + i * k + j] += ail * u[off + l * k + j];
      }
    return d;
  };
  const trajectory tr = integrate_field(field, joint, t0, t1, h);
  if (tr.aborted) throw std::runtime_error("propagate_frame: integration blew up");
  const size_t off = nonlinear ? static_cast<size_t>(n) : 0;
  rmatrix v(n, k);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < k; ++j) v(i, j) = tr.states.back()[off + i * k + j];
  return v;
}

struct volume_series {
  std::vector<double> times;
  std::vector<double> volumes;
};

/// |X^(k)(t)|_2 along the flow, k = number of frame columns.
inline volume_series volume_evolution(const system_def& sys, const rmatrix& x0, double t0,
                                      double t1, double h, std::vector<double> anchor = {}) {
  const compound_series cs =
      compound_propagate(sys, x0.cols(), x0, t0, t1, h, std::move(anchor));
  volume_series out;
  out.times = cs.times;
  out.volumes.reserve(cs.values.size());
  for (const auto& y : cs.values) out.volumes.push_back(vec_norm2(y));
  return out;
}

/// Line-integral averaged Jacobian A^ab(t) = int_0^1 J(t, gamma(s)) ds along
/// the segment between x(t,b) and x(t,a), by 16-point Gauss-Legendre.
inline rmatrix variational_matrix(const system_def& sys, const std::vector<double>& a,
                                  const std::vector<double>& b, double t, double h = 1e-3) {
  const int n = sys.dim;
  std::vector<double> xa = a, xb = b;
  if (t > 0.0) {
    xa = integrate(sys, a, 0.0, t, h).states.back();
    xb = integrate(sys, b, 0.0, t, h).states.back();
  }
  rmatrix acc(n, n);
  const double* nodes = detail::gl16_nodes();
  const double* weights = detail::gl16_weights();
  for (int half = 0; half < 2; ++half)
    for (int q = 0; q < 8; ++q) {
      const double xi = half == 0 ? -nodes[q] : nodes[q];
      const double s = 0.5 + 0.5 * xi;
      std::vector<double> g(n);
      for (int i = 0; i < n; ++i) g[i] = s * xa[i] + (1.0 - s) * xb[i];
      acc = acc + (0.5 * weights[q]) * jacobian(sys, t, g);
    }
  return acc;
}

/// Right-hand side of the forced compound dynamics: A^[k] X^(k) plus the k
/// replacement compounds with column i swapped for the forcing column f^i.
inline std::vector<double> forced_compound_derivative(const rmatrix& a, const rmatrix& x,
                                                      const rmatrix& f) {
  if (!a.is_square() || a.rows() != x.rows() || x.rows() != f.rows() || x.cols() != f.cols())
    throw std::invalid_argument("forced_compound_derivative: inconsistent shapes");
  const int k = x.cols();
  std::vector<double> out =
      add_compound(a, k).entries * mult_compound(x, k).entries.col(0);
  for (int i = 0; i < k; ++i) {
    rmatrix swapped = x;
    swapped.set_col(i, f.col(i));
    const std::vector<double> term = mult_compound(swapped, k).entries.col(0);
    for (size_t j = 0; j < out.size(); ++j) out[j] += term[j];
  }
  return out;
}

/// Supremum feedback gain c* = (s(b+1) + 2b - 1)/(1+s): any c < c* makes the
/// Thomas closed loop (2+s)-contracting w.r.t. L1; s = 0 gives 2b - 1.
inline double thomas_gain_designer(double b, double s) {
  if (!(b > 0.0)) throw std::invalid_argument("thomas_gain_designer: need b > 0");
  if (!(s >= 0.0) || s >= 1.0)
    throw std::invalid_argument("thomas_gain_designer: need s in [0, 1)");
  return (s * (b + 1.0) + 2.0 * b - 1.0) / (1.0 + s);
}

/// Simulates x(t,a), x(t,b) and asserts s^-(x(t,a) - x(t,b)) <= k-1 at every
/// sampled time. Precondition: a - b in P^k_-.
inline verdict cone_invariance_sim(const system_def& sys, const std::vector<double>& a,
                                   const std::vector<double>& b, int k, double t1,
                                   double h = 1e-3, int stride = 10) {
  std::vector<double> diff(a.size());
  for (size_t i = 0; i < a.size(); ++i) diff[i] = a[i] - b[i];
  if (s_minus(diff) > k - 1)
    throw std::invalid_argument("cone_invariance_sim: a - b must lie in P^k_-");
  const trajectory ta = integrate(sys, a, 0.0, t1, h);
  const trajectory tb = integrate(sys, b, 0.0, t1, h);
  verdict v;
  v.kind = "cone-invariance(k=" + std::to_string(k) + ")";
  v.pass = true;
  int worst = 0;
  const size_t m = std::min(ta.states.size(), tb.states.size());
  for (size_t i = 0; i < m; i += std::max(1, stride)) {
    for (size_t d = 0; d < diff.size(); ++d) diff[d] = ta.states[i][d] - tb.states[i][d];
    const int s = s_minus(diff);
    worst = std::max(worst, s);
    if (s > k - 1 && v.pass) {
      v.pass = false;
      v.witness = "s^-(x(t,a)-x(t,b)) = " + std::to_string(s) +
                  " at t=" + std::to_string(ta.times[i]);
    }
  }
  v.data["worst_s_minus"] = worst;
  v.note = "sampled trajectory check";
  return v;
}

/// Max of ||f(x)||_inf over the trailing fraction of a trajectory; the
/// equilibrium-convergence criterion.
inline double final_window_max_speed(const system_def& sys, const trajectory& tr,
                                     double window_fraction = 0.1) {
  if (tr.states.empty()) throw std::invalid_argument("final_window_max_speed: empty trajectory");
  const size_t start =
      tr.states.size() - std::max<size_t>(1, static_cast<size_t>(window_fraction * tr.states.size()));
  double worst = 0.0;
  for (size_t i = start; i < tr.states.size(); ++i)
    worst = std::max(worst, vec_norm_inf(vector_field(sys, tr.times[i], tr.states[i])));
  return worst;
}

}  // namespace ck
