#pragma once

#include <fstream>
#include <optional>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include <json.hpp>

#include "compoundkit/hankel.hpp"
#include "compoundkit/matrix.hpp"
#include "compoundkit/systems.hpp"
#include "compoundkit/verdict.hpp"

namespace ck {

using json = nlohmann::json;

/// Decimal serialization with 17 significant digits; re-parses bit-identically.
inline std::string format_double(double v) {
  std::ostringstream os;
  os.precision(17);
  os << v;
  return os.str();
}

inline json matrix_to_json(const rmatrix& a) {
  json rows = json::array();
  for (int i = 0; i < a.rows(); ++i) {
    json row = json::array();
    for (int j = 0; j < a.cols(); ++j) row.push_back(a(i, j));
    rows.push_back(row);
  }
  return json{{"rows", a.rows()}, {"cols", a.cols()}, {"data", rows}};
}

inline json cmatrix_to_json(const cmatrix& a) {
  json re = json::array(), im = json::array();
  for (int i = 0; i < a.rows(); ++i) {
    json rrow = json::array(), irow = json::array();
    for (int j = 0; j < a.cols(); ++j) {
      rrow.push_back(a(i, j).real());
      irow.push_back(a(i, j).imag());
    }
    re.push_back(rrow);
    im.push_back(irow);
  }
  return json{{"rows", a.rows()}, {"cols", a.cols()}, {"real", re}, {"imag", im}};
}

inline rmatrix matrix_from_json(const json& j) {
  if (j.is_array()) {  // bare nested array form
    const int rows = static_cast<int>(j.size());
    if (rows == 0) throw std::invalid_argument("matrix json: empty array");
    const int cols = static_cast<int>(j.at(0).size());
    rmatrix a(rows, cols);
    for (int i = 0; i < rows; ++i) {
      if (static_cast<int>(j.at(i).size()) != cols)
        throw std::invalid_argument("matrix json: ragged rows");
      for (int c = 0; c < cols; ++c) a(i, c) = j.at(i).at(c).get<double>();
    }
    return a;
  }
  const int rows = j.at("rows").get<int>();
  const int cols = j.at("cols").get<int>();
  const json& data = j.at("data");
  if (static_cast<int>(data.size()) != rows)
    throw std::invalid_argument("matrix json: row count mismatch");
  rmatrix a(rows, cols);
  for (int i = 0; i < rows; ++i) {
    if (static_cast<int>(data.at(i).size()) != cols)
      throw std::invalid_argument("matrix json: column count mismatch");
    for (int c = 0; c < cols; ++c) a(i, c) = data.at(i).at(c).get<double>();
  }
  return a;
}

inline rmatrix matrix_from_csv_text(const std::string& text) {
  std::vector<std::vector<double>> rows;
  std::istringstream is(text);
  std::string line;
  while (std::getline(is, line)) {
    std::istringstream ls(line);
    std::vector<double> row;
    double v;
    while (ls >> v) row.push_back(v);
    if (!ls.eof() && ls.fail()) {
      ls.clear();
      std::string tok;
      if (ls >> tok) throw std::invalid_argument("matrix csv: non-numeric token '" + tok + "'");
    }
    if (!row.empty()) rows.push_back(std::move(row));
  }
  if (rows.empty()) throw std::invalid_argument("matrix csv: no data");
  const size_t cols = rows.front().size();
  for (const auto& r : rows)
    if (r.size() != cols) throw std::invalid_argument("matrix csv: ragged rows");
  rmatrix a(static_cast<int>(rows.size()), static_cast<int>(cols));
  for (int i = 0; i < a.rows(); ++i)
    for (int j = 0; j < a.cols(); ++j) a(i, j) = rows[i][j];
  return a;
}

inline std::string read_file(const std::string& path) {
  std::ifstream f(path);
  if (!f) throw std::invalid_argument("cannot open file: " + path);
  std::ostringstream os;
  os << f.rdbuf();
  return os.str();
}

/// Dense matrix from a file: JSON {"rows","cols","data"} if it parses as
/// JSON, otherwise whitespace-separated CSV.
inline rmatrix parse_matrix_file(const std::string& path) {
  const std::string text = read_file(path);
  const json j = json::parse(text, nullptr, false);
  if (!j.is_discarded()) return matrix_from_json(j);
  return matrix_from_csv_text(text);
}

// ---------------------------------------------------------------------------
// System specs.
// ---------------------------------------------------------------------------

inline system_def system_from_json(const json& j) {
  const std::string tag = j.at("tag").get<std::string>();
  if (tag == "lti") return make_lti(matrix_from_json(j.at("A")));
  if (tag == "rotation") return make_rotation(j.at("c").get<double>());
  if (tag == "squares") return make_squares_ltv();
  if (tag == "thomas") {
    std::optional<double> gain;
    if (j.contains("c")) gain = j.at("c").get<double>();
    return make_thomas(j.at("b").get<double>(), gain);
  }
  if (tag == "ltv") {
    std::vector<double> times = j.at("times").get<std::vector<double>>();
    std::vector<rmatrix> samples;
    for (const json& s : j.at("samples")) samples.push_back(matrix_from_json(s));
    return make_ltv(std::move(times), std::move(samples));
  }
  if (tag == "consensus") {
    std::vector<weighted_edge> edges;
    for (const json& e : j.at("edges")) {
      weighted_edge we;
      we.from = e.at(0).get<int>();
      we.to = e.at(1).get<int>();
      we.weight = e.size() > 2 ? e.at(2).get<double>() : 1.0;
      edges.push_back(we);
    }
    return make_consensus_laplacian(j.at("n").get<int>(), edges);
  }
  throw std::invalid_argument("system json: unknown tag '" + tag + "'");
}

inline system_def parse_system_file(const std::string& path) {
  return system_from_json(json::parse(read_file(path)));
}

// ---------------------------------------------------------------------------
// Hankel inputs.
// ---------------------------------------------------------------------------

inline hankel_system hankel_from_json(const json& j) {
  hankel_system s;
  s.A = matrix_from_json(j.at("A"));
  s.b = j.at("b").get<std::vector<double>>();
  s.c = j.at("c").get<std::vector<double>>();
  if (j.contains("horizon")) s.horizon = j.at("horizon").get<int>();
  s.validate();
  return s;
}

inline impulse_response ir_from_csv_text(const std::string& text) {
  impulse_response ir;
  ir.source = "explicit";
  std::istringstream is(text);
  double v;
  while (is >> v) ir.samples.push_back(v);
  if (ir.samples.empty()) throw std::invalid_argument("impulse response csv: no samples");
  return ir;
}

// ---------------------------------------------------------------------------
// Reports.
// ---------------------------------------------------------------------------

inline json verdict_to_json(const verdict& v) {
  json d = json::object();
  for (const auto& [key, val] : v.data) d[key] = val;
  return json{{"kind", v.kind},   {"pass", v.pass},       {"margin", v.margin},
              {"tolerance", v.tolerance}, {"witness", v.witness}, {"note", v.note},
              {"data", d}};
}

}  // namespace ck
