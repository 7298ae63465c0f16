#pragma once

#include <map>
#include <string>

namespace ck {

/// Structured analysis result: pass/fail plus the witness data and the
/// tolerances that produced it.
struct verdict {
  std::string kind;
  bool pass = false;
  double margin = 0.0;
  double tolerance = 0.0;
  std::string witness;
  std::string note;                     // provenance, e.g. "sampled sufficient-condition check"
  std::map<std::string, double> data;   // named numeric details

  explicit operator bool() const { return pass; }
};

}  // namespace ck
