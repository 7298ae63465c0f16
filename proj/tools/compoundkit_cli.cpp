// compoundkit command-line front end: parse matrix/system inputs, dispatch
// analyses, emit human-readable and machine-readable reports.

#include <chrono>
#include <cmath>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "compoundkit/compoundkit.hpp"
#include "compoundkit/io.hpp"

namespace {

using ck::json;

struct common_options {
  std::string format = "text";
  std::string out_path;
  std::uint64_t seed = 42;
  bool timing = false;
};

void add_common(CLI::App* cmd, common_options& opt) {
  cmd->add_option("--format", opt.format, "Output format: text, json or csv")
      ->check(CLI::IsMember({"text", "json", "csv"}));
  cmd->add_option("--out", opt.out_path, "Write the report to this path instead of stdout");
  cmd->add_option("--seed", opt.seed, "Seed for randomized inputs (default 42)");
  cmd->add_flag("--timing", opt.timing, "Include wall time in the report");
}

void emit(const common_options& opt, const std::string& payload) {
  if (opt.out_path.empty()) {
    std::cout << payload;
    if (!payload.empty() && payload.back() != '\n') std::cout << "\n";
  } else {
    std::ofstream f(opt.out_path);
    if (!f) throw std::invalid_argument("cannot write to " + opt.out_path);
    f << payload;
  }
}

std::string verdict_text(const ck::verdict& v) {
  std::ostringstream os;
  os << (v.pass ? "PASS" : "FAIL") << "  " << v.kind << "  margin=" << v.margin;
  if (!v.witness.empty()) os << "\n      witness: " << v.witness;
  if (!v.note.empty()) os << "\n      note: " << v.note;
  for (const auto& [k, val] : v.data) os << "\n      " << k << " = " << val;
  return os.str();
}

struct report {
  json j;
  std::vector<ck::verdict> verdicts;
  std::ostringstream text;
  std::chrono::steady_clock::time_point start = std::chrono::steady_clock::now();

  void add_verdict(const ck::verdict& v) {
    verdicts.push_back(v);
    if (!j.contains("verdicts")) j["verdicts"] = json::array();
    j["verdicts"].push_back(ck::verdict_to_json(v));
    text << verdict_text(v) << "\n";
  }

  int finish(const common_options& opt) {
    const double wall =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    if (opt.timing) {
      j["walltime_s"] = wall;
      text << "walltime_s: " << wall << "\n";
    }
    if (opt.format == "json")
      emit(opt, j.dump(2));
    else if (opt.format == "csv" && j.contains("csv"))
      emit(opt, j.at("csv").get<std::string>());
    else if (opt.format == "csv") {
      std::ostringstream os;
      for (const ck::verdict& v : verdicts) {
        os << v.kind << ",pass," << (v.pass ? 1 : 0) << "\n";
        os << v.kind << ",margin," << ck::format_double(v.margin) << "\n";
      }
      emit(opt, os.str());
    } else
      emit(opt, text.str());
    for (const ck::verdict& v : verdicts)
      if (!v.pass) return 1;
    return 0;
  }
};

json request_echo(const std::string& sub, const json& params, const common_options& opt) {
  return json{{"subcommand", sub}, {"params", params}, {"seed", opt.seed}};
}

std::vector<double> parse_vector_arg(const std::string& s) {
  std::vector<double> v;
  std::string item;
  std::istringstream is(s);
  while (std::getline(is, item, ',')) {
    if (!item.empty()) v.push_back(std::stod(item));
  }
  if (v.empty()) throw std::invalid_argument("empty vector argument");
  return v;
}

std::string matrix_csv(const ck::rmatrix& m) {
  std::ostringstream os;
  for (int i = 0; i < m.rows(); ++i) {
    for (int j = 0; j < m.cols(); ++j) os << (j ? "," : "") << ck::format_double(m(i, j));
    os << "\n";
  }
  return os.str();
}

ck::norm_tag parse_norm(const std::string& s) {
  if (s == "L1" || s == "l1") return ck::norm_tag::l1;
  if (s == "L2" || s == "l2") return ck::norm_tag::l2;
  if (s == "Linf" || s == "linf" || s == "LInf") return ck::norm_tag::linf;
  throw std::invalid_argument("unknown norm '" + s + "'");
}

// ---------------------------------------------------------------------------

int cmd_compound(const std::string& file, int k, bool additive, std::optional<double> alpha,
                 const common_options& opt) {
  report rep;
  const ck::rmatrix a = ck::parse_matrix_file(file);
  json params{{"file", file}, {"k", k}};
  std::string mode = "multiplicative";
  if (additive) mode = "additive";
  if (alpha) mode = "alpha";
  params["mode"] = mode;
  if (alpha) params["alpha"] = *alpha;
  rep.j["request"] = request_echo("compound", params, opt);

  if (alpha) {
    const ck::cmatrix c = ck::alpha_mult_compound(a, *alpha);
    const auto add = ck::alpha_add_compound(a, *alpha);
    rep.j["alpha_mult_compound"] = ck::cmatrix_to_json(c);
    rep.j["alpha_add_compound"] = ck::matrix_to_json(add);
    rep.j["notes"] = json::array({"principal branch used for fractional matrix powers"});
    rep.text << "A^(" << *alpha << ") (" << c.rows() << "x" << c.cols()
             << ", principal branch):\n";
    for (int i = 0; i < c.rows(); ++i) {
      for (int j = 0; j < c.cols(); ++j) {
        const ck::cplx v = c(i, j);
        rep.text << (j ? "  " : "") << v.real();
        if (std::abs(v.imag()) > 0) rep.text << (v.imag() >= 0 ? "+" : "") << v.imag() << "i";
      }
      rep.text << "\n";
    }
    rep.text << "A^[" << *alpha << "]:\n" << matrix_csv(add);
    return rep.finish(opt);
  }

  const ck::compound_matrix<double> c =
      additive ? ck::add_compound(a, k) : ck::mult_compound(a, k);
  json row_idx = json::array(), col_idx = json::array();
  for (const auto& s : c.row_index) row_idx.push_back(s.elements);
  for (const auto& s : c.col_index) col_idx.push_back(s.elements);
  rep.j["compound"] = {{"order", k},
                       {"kind", mode},
                       {"row_index", row_idx},
                       {"col_index", col_idx},
                       {"entries", ck::matrix_to_json(c.entries)}};
  rep.j["csv"] = matrix_csv(c.entries);
  rep.text << (additive ? "A^[" : "A^(") << k << (additive ? "]" : ")")
           << " with index-set labels:\n        ";
  for (const auto& s : c.col_index) rep.text << s.str() << "  ";
  rep.text << "\n";
  for (size_t i = 0; i < c.row_index.size(); ++i) {
    rep.text << c.row_index[i].str() << "  ";
    for (int j = 0; j < c.entries.cols(); ++j)
      rep.text << c.entries(static_cast<int>(i), j) << "  ";
    rep.text << "\n";
  }
  return rep.finish(opt);
}

int cmd_classify(const std::string& file, int max_k, int fuzz_count, double tau_zero,
                 const common_options& opt) {
  report rep;
  const ck::rmatrix a = ck::parse_matrix_file(file);
  const int kmax = std::min({max_k, a.rows(), a.cols()});
  rep.j["request"] = request_echo(
      "classify",
      json{{"file", file}, {"max_k", kmax}, {"svdp_fuzz", fuzz_count}, {"tau_zero", tau_zero}},
      opt);

  const ck::sign_regularity sr = ck::classify_sign_regularity(a, kmax);
  json orders = json::array();
  rep.text << "sign regularity (minor threshold " << sr.minor_threshold << "):\n";
  for (int k = 1; k <= kmax; ++k) {
    orders.push_back(ck::to_string(sr.order(k)));
    rep.text << "  order " << k << ": " << ck::to_string(sr.order(k)) << "\n";
  }
  rep.j["sign_regularity"] = {{"per_order", orders},
                              {"max_tp_order", sr.max_tp_order},
                              {"max_tn_order", sr.max_tn_order}};
  rep.text << "  max TP order: " << sr.max_tp_order << ", max TN order: " << sr.max_tn_order
           << "\n";

  if (a.is_square()) {
    const ck::verdict metzler = ck::is_metzler(a);
    const ck::verdict irr = ck::is_irreducible(a);
    const ck::verdict jac = ck::is_jacobi(a);
    ck::diagonal_certificate cert;
    const ck::verdict cyc = ck::classify_cyclic(a, &cert);
    rep.j["metzler"] = ck::verdict_to_json(metzler);
    rep.j["irreducible"] = ck::verdict_to_json(irr);
    rep.j["jacobi"] = ck::verdict_to_json(jac);
    rep.j["cyclic"] = ck::verdict_to_json(cyc);
    rep.text << "metzler: " << (metzler.pass ? "yes" : "no")
             << ", irreducible: " << (irr.pass ? "yes" : "no")
             << ", jacobi: " << (jac.pass ? "yes" : "no")
             << ", cyclic shape: " << (cyc.pass ? "yes" : "no") << "\n";
    if (a.rows() >= 3) {
      json patterns = json::array();
      rep.text << "Metzler additive compounds:\n";
      for (int k = 2; k <= a.rows() - 1; ++k) {
        const bool pat = ck::metzler_compound_pattern(a.rows(), k).matches(a);
        const bool direct = ck::is_metzler(ck::add_compound(a, k).entries).pass;
        patterns.push_back(json{{"k", k}, {"pattern_match", pat}, {"compound_metzler", direct}});
        rep.text << "  k=" << k << ": pattern " << (pat ? "matches" : "differs")
                 << ", A^[k] Metzler: " << (direct ? "yes" : "no") << "\n";
      }
      rep.j["metzler_compound_patterns"] = patterns;
    }

    // seeded SVDP fuzz: for the largest order k with the matrix SR_j (SSR_j)
    // for all j <= k, random vectors with s^-(x) <= k-1 must satisfy the
    // variation-diminishing implication
    if (fuzz_count > 0) {
      int k_weak = 0, k_strict = 0;
      for (int k = 1; k <= kmax; ++k) {
        const ck::sign_class c = sr.order(k);
        const bool weak = c != ck::sign_class::none;
        const bool strict =
            c == ck::sign_class::ssr_pos || c == ck::sign_class::ssr_neg;
        if (weak && k_weak == k - 1) k_weak = k;
        if (strict && k_strict == k - 1) k_strict = k;
      }
      ck::verdict fuzz;
      fuzz.kind = "svdp-fuzz";
      fuzz.tolerance = tau_zero;
      fuzz.pass = true;
      fuzz.data["k_weak"] = k_weak;
      fuzz.data["k_strict"] = k_strict;
      if (k_weak == 0) {
        fuzz.note = "matrix is not SR_1; nothing to fuzz";
      } else {
        ck::rng gen(opt.seed);
        long ran = 0;
        for (int t = 0; t < fuzz_count; ++t) {
          const std::vector<double> x = gen.vector(a.cols(), -1.0, 1.0);
          if (ck::s_minus(x, tau_zero) > k_weak - 1) continue;
          ++ran;
          const std::vector<double> ax = a * x;
          if (ck::s_minus(ax, tau_zero) > ck::s_minus(x, tau_zero)) {
            fuzz.pass = false;
            fuzz.witness = "s^- increased on trial " + std::to_string(t);
          }
          if (k_strict > 0 && ck::s_minus(x, tau_zero) <= k_strict - 1 &&
              ck::s_plus(ax, tau_zero) > ck::s_minus(x, tau_zero)) {
            fuzz.pass = false;
            fuzz.witness = "s^+ exceeded s^- on trial " + std::to_string(t);
          }
        }
        fuzz.data["trials_run"] = static_cast<double>(ran);
        fuzz.note = "seeded fuzz of the variation-diminishing implication";
      }
      rep.add_verdict(fuzz);
    }
  }
  return rep.finish(opt);
}

int cmd_contract(const std::string& file, std::optional<int> k, std::optional<double> alpha,
                 const std::string& norm, double eta, int grid_points,
                 std::pair<double, double> tspan, int tsamples, const common_options& opt) {
  if (!k && !alpha) throw CLI::ValidationError("contract", "need --k or --alpha");
  report rep;
  const ck::system_def sys = ck::parse_system_file(file);
  json params{{"system", file},     {"norm", norm},          {"eta", eta},
              {"grid", grid_points}, {"tspan", {tspan.first, tspan.second}},
              {"tsamples", tsamples}};
  if (k) params["k"] = *k;
  if (alpha) params["alpha"] = *alpha;
  rep.j["request"] = request_echo("contract", params, opt);

  ck::sample_grid grid;
  grid.points_per_axis = grid_points;
  for (int i = 0; i < tsamples; ++i)
    grid.times.push_back(tspan.first +
                         (tspan.second - tspan.first) * i / std::max(1, tsamples - 1));
  const ck::verdict v =
      k ? ck::k_contraction_verdict(sys, *k, parse_norm(norm), eta, grid)
        : ck::alpha_contraction_verdict(sys, *alpha, parse_norm(norm), eta, grid);
  rep.add_verdict(v);
  return rep.finish(opt);
}

int cmd_simulate(const std::string& file, const std::string& x0_arg, const std::string& frame_arg,
                 std::pair<double, double> tspan, double h, bool volume_mode, int stride,
                 const common_options& opt) {
  report rep;
  const ck::system_def sys = ck::parse_system_file(file);
  ck::rng gen(opt.seed);
  rep.j["request"] = request_echo(
      "simulate",
      json{{"system", file}, {"x0", x0_arg}, {"frame", frame_arg},
           {"tspan", {tspan.first, tspan.second}}, {"step", h}, {"volume", volume_mode},
           {"stride", stride}},
      opt);

  std::ostringstream csv;
  if (volume_mode) {
    if (frame_arg.empty())
      throw CLI::ValidationError("simulate", "--volume needs --frame identity:k or random:k");
    ck::rmatrix frame;
    const auto colon = frame_arg.find(':');
    const std::string kind = frame_arg.substr(0, colon);
    const int k = colon == std::string::npos ? sys.dim : std::stoi(frame_arg.substr(colon + 1));
    if (kind == "identity") {
      frame = ck::rmatrix(sys.dim, k);
      for (int i = 0; i < k; ++i) frame(i, i) = 1.0;
    } else if (kind == "random") {
      frame = gen.matrix_uniform(sys.dim, k);
    } else {
      throw CLI::ValidationError("simulate", "unknown frame kind '" + kind + "'");
    }
    const ck::volume_series vs = ck::volume_evolution(sys, frame, tspan.first, tspan.second, h);
    csv << "t,volume\n";
    json series = json::array();
    for (size_t i = 0; i < vs.times.size(); i += std::max(1, stride)) {
      csv << ck::format_double(vs.times[i]) << "," << ck::format_double(vs.volumes[i]) << "\n";
      series.push_back(json{{"t", vs.times[i]}, {"volume", vs.volumes[i]}});
    }
    rep.j["volume_series"] = series;
    rep.text << "volume series (" << vs.times.size() << " points, stride " << stride << "):\n"
             << csv.str();
  } else {
    std::vector<double> x0;
    if (x0_arg == "random")
      x0 = gen.vector(sys.dim);
    else if (!x0_arg.empty())
      x0 = parse_vector_arg(x0_arg);
    else
      throw CLI::ValidationError("simulate", "need --x0 (list or 'random')");
    if (static_cast<int>(x0.size()) != sys.dim)
      throw std::invalid_argument("simulate: x0 has wrong dimension");
    const ck::trajectory tr = ck::integrate(sys, x0, tspan.first, tspan.second, h);
    csv << "t";
    for (int d = 0; d < sys.dim; ++d) csv << ",x" << (d + 1);
    csv << "\n";
    json series = json::array();
    for (size_t i = 0; i < tr.times.size(); i += std::max(1, stride)) {
      csv << ck::format_double(tr.times[i]);
      for (int d = 0; d < sys.dim; ++d) csv << "," << ck::format_double(tr.states[i][d]);
      csv << "\n";
      series.push_back(json{{"t", tr.times[i]}, {"x", tr.states[i]}});
    }
    rep.j["trajectory"] = series;
    rep.j["aborted"] = tr.aborted;
    rep.text << "trajectory (" << tr.times.size() << " points, stride " << stride << ")"
             << (tr.aborted ? " [aborted: non-finite state]" : "") << ":\n"
             << csv.str();
  }
  rep.j["csv"] = csv.str();
  return rep.finish(opt);
}

int cmd_diagstab(const std::string& file, int k, const std::string& cert_file,
                 const common_options& opt) {
  report rep;
  const ck::rmatrix a = ck::parse_matrix_file(file);
  rep.j["request"] = request_echo(
      "diagstab", json{{"file", file}, {"k", k}, {"certificate", cert_file}}, opt);

  if (!cert_file.empty()) {
    const json cj = json::parse(ck::read_file(cert_file));
    const std::vector<double> d = cj.is_array() ? cj.get<std::vector<double>>()
                                                : cj.at("d").get<std::vector<double>>();
    rep.add_verdict(ck::verify_k_diag_stability(a, k, d));
    return rep.finish(opt);
  }

  // no certificate supplied: try the constructive route on A^(k)
  const ck::rmatrix ak = ck::mult_compound(a, k).entries;
  bool nonneg = true;
  for (double v : ak.data()) nonneg = nonneg && v >= 0.0;
  if (nonneg && ck::is_schur(ak).pass) {
    const ck::diagonal_certificate base = ck::construct_dlf_nonneg(ak);
    ck::verdict v = ck::verify_k_diag_stability(a, k, base.d);
    v.note = "certificate constructed by the nonnegative-Schur recipe on A^(" +
             std::to_string(k) + ")";
    rep.add_verdict(v);
    json dj = json::array();
    for (double x : base.d) dj.push_back(x);
    rep.j["certificate"] = {{"k", k}, {"d", dj}};
    rep.text << "certificate d:";
    for (double x : base.d) rep.text << " " << ck::format_double(x);
    rep.text << "\n";
  } else {
    ck::verdict v;
    v.kind = "k-diagonal-stability(k=" + std::to_string(k) + ")";
    v.pass = false;
    v.note = "no certificate supplied and A^(k) is not nonnegative Schur; "
             "the constructive recipe does not apply";
    v.witness = nonneg ? "A^(k) not Schur" : "A^(k) has negative entries";
    rep.add_verdict(v);
  }
  return rep.finish(opt);
}

int cmd_hankel(const std::string& file, int k, int horizon, const common_options& opt) {
  report rep;
  rep.j["request"] =
      request_echo("hankel", json{{"file", file}, {"k", k}, {"horizon", horizon}}, opt);
  const std::string text = ck::read_file(file);
  const json j = json::parse(text, nullptr, false);
  if (!j.is_discarded() && j.is_object()) {
    ck::hankel_system sys = ck::hankel_from_json(j);
    if (horizon > 0) sys.horizon = horizon;
    rep.add_verdict(ck::hankel_k_positive_verdict(sys, k, sys.horizon));
  } else {
    const ck::impulse_response ir = ck::ir_from_csv_text(text);
    ck::verdict v = ck::hankel_positivity_scan(ir, k);
    v.note = "explicit impulse response over " + std::to_string(ir.horizon()) +
             " samples; no realization tail bound available";
    rep.add_verdict(v);
  }
  return rep.finish(opt);
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"compoundkit: compound-matrix calculus and k-generalized system analysis"};
  app.require_subcommand(1);

  common_options opt;

  // compound
  auto* c_cmd = app.add_subcommand("compound", "Multiplicative/additive/alpha compounds");
  std::string c_file;
  int c_k = 1;
  bool c_add = false;
  std::optional<double> c_alpha;
  double c_alpha_raw = 0.0;
  c_cmd->add_option("file", c_file, "Matrix file (JSON or whitespace CSV)")->required();
  c_cmd->add_option("--k", c_k, "Compound order");
  c_cmd->add_flag("--additive", c_add, "Additive compound A^[k]");
  auto* alpha_opt = c_cmd->add_option("--alpha", c_alpha_raw, "Fractional order alpha in (1,n)");
  add_common(c_cmd, opt);

  // classify
  auto* cl_cmd = app.add_subcommand("classify", "Sign regularity, TP/TN, Metzler, Jacobi, cyclic");
  std::string cl_file;
  int cl_maxk = 4, cl_fuzz = 0;
  double cl_tau_zero = 0.0;
  cl_cmd->add_option("file", cl_file, "Matrix file")->required();
  cl_cmd->add_option("--max-k", cl_maxk, "Largest minor order to scan");
  cl_cmd->add_option("--svdp-fuzz", cl_fuzz, "Fuzz the variation-diminishing implication");
  cl_cmd->add_option("--tau-zero", cl_tau_zero,
                     "Zero-detection tolerance for sign-variation counts (default exact 0)");
  add_common(cl_cmd, opt);

  // contract
  auto* ct_cmd = app.add_subcommand("contract", "k- or alpha-contraction verdicts");
  std::string ct_file, ct_norm = "L1";
  std::optional<int> ct_k;
  std::optional<double> ct_alpha;
  int ct_k_raw = 0;
  double ct_alpha_raw = 0.0, ct_eta = 0.0;
  int ct_grid = 9, ct_tsamples = 101;
  std::pair<double, double> ct_tspan{0.0, 10.0};
  ct_cmd->add_option("system", ct_file, "System spec JSON")->required();
  auto* ct_k_opt = ct_cmd->add_option("--k", ct_k_raw, "Integer contraction order");
  auto* ct_a_opt = ct_cmd->add_option("--alpha", ct_alpha_raw, "Fractional order");
  ct_cmd->add_option("--norm", ct_norm, "L1, L2 or Linf");
  ct_cmd->add_option("--eta", ct_eta, "Required contraction rate eta > 0")->required();
  ct_cmd->add_option("--grid", ct_grid, "Points per axis on the state box (nonlinear)");
  ct_cmd->add_option("--tspan", ct_tspan, "Time window for LTV sampling");
  ct_cmd->add_option("--tsamples", ct_tsamples, "Number of time samples");
  add_common(ct_cmd, opt);

  // simulate
  auto* s_cmd = app.add_subcommand("simulate", "Integrate a system; emit series");
  std::string s_file, s_x0, s_frame;
  std::pair<double, double> s_tspan{0.0, 10.0};
  double s_h = 1e-3;
  bool s_vol = false;
  int s_stride = 1;
  s_cmd->add_option("system", s_file, "System spec JSON")->required();
  s_cmd->add_option("--x0", s_x0, "Initial state: comma list or 'random'");
  s_cmd->add_option("--frame", s_frame, "Frame for volume mode: identity:k or random:k");
  s_cmd->add_option("--tspan", s_tspan, "Integration window");
  s_cmd->add_option("--step", s_h, "RK4 step (default 1e-3)");
  s_cmd->add_flag("--volume", s_vol, "Emit the parallelotope volume series");
  s_cmd->add_option("--stride", s_stride, "Output thinning stride");
  add_common(s_cmd, opt);

  // diagstab
  auto* d_cmd = app.add_subcommand("diagstab", "Discrete-time k-diagonal stability");
  std::string d_file, d_cert;
  int d_k = 1;
  d_cmd->add_option("file", d_file, "Matrix file")->required();
  d_cmd->add_option("--k", d_k, "Compound order");
  d_cmd->add_option("--certificate", d_cert, "JSON file with the diagonal d");
  add_common(d_cmd, opt);

  // hankel
  auto* h_cmd = app.add_subcommand("hankel", "Hankel k-positivity of DT SISO systems");
  std::string h_file;
  int h_k = 1, h_horizon = 0;
  h_cmd->add_option("input", h_file, "Realization JSON {A,b,c} or impulse-response CSV")
      ->required();
  h_cmd->add_option("--k", h_k, "Positivity order");
  h_cmd->add_option("--horizon", h_horizon, "Truncation horizon override");
  add_common(h_cmd, opt);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? 0 : 2;
  }

  try {
    if (*c_cmd) {
      if (*alpha_opt) c_alpha = c_alpha_raw;
      return cmd_compound(c_file, c_k, c_add, c_alpha, opt);
    }
    if (*cl_cmd) return cmd_classify(cl_file, cl_maxk, cl_fuzz, cl_tau_zero, opt);
    if (*ct_cmd) {
      if (*ct_k_opt) ct_k = ct_k_raw;
      if (*ct_a_opt) ct_alpha = ct_alpha_raw;
      return cmd_contract(ct_file, ct_k, ct_alpha, ct_norm, ct_eta, ct_grid, ct_tspan,
                          ct_tsamples, opt);
    }
    if (*s_cmd) return cmd_simulate(s_file, s_x0, s_frame, s_tspan, s_h, s_vol, s_stride, opt);
    if (*d_cmd) return cmd_diagstab(d_file, d_k, d_cert, opt);
    if (*h_cmd) return cmd_hankel(h_file, h_k, h_horizon, opt);
  } catch (const CLI::ValidationError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
  return 2;
}
