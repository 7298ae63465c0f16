#pragma once

#include <algorithm>
#include <cstdint>
#include <cstdlib>
#include <stdexcept>
#include <string>
#include <vector>

namespace ck {

/// Guardrail on the number of index sets (hence compound dimensions) a single
/// call may materialize. Overridable through COMPOUNDKIT_MAX_DIM.
inline std::uint64_t max_compound_dim() {
  static const std::uint64_t limit = [] {
    if (const char* env = std::getenv("COMPOUNDKIT_MAX_DIM")) {
      const unsigned long long v = std::strtoull(env, nullptr, 10);
      if (v > 0) return static_cast<std::uint64_t>(v);
    }
    return static_cast<std::uint64_t>(1000000);
  }();
  return limit;
}

inline std::uint64_t binomial(int n, int k) {
  if (k < 0 || k > n) return 0;
  k = std::min(k, n - k);
  std::uint64_t r = 1;
  for (int i = 1; i <= k; ++i) {
    r = r * static_cast<std::uint64_t>(n - k + i) / static_cast<std::uint64_t>(i);
  }
  return r;
}

/// Strictly increasing k-tuple from {1..n}, the row/column address of a
/// compound-matrix entry. Elements are 1-based, ranks 0-based.
struct index_set {
  std::vector<int> elements;
  int n = 0;

  int k() const { return static_cast<int>(elements.size()); }

  bool valid() const {
    if (elements.empty() || n <= 0) return false;
    if (elements.front() < 1 || elements.back() > n) return false;
    for (size_t i = 1; i < elements.size(); ++i)
      if (elements[i] <= elements[i - 1]) return false;
    return true;
  }

  bool contains(int v) const {
    for (int e : elements)
      if (e == v) return true;
    return false;
  }

  bool contiguous() const {
    for (size_t i = 1; i < elements.size(); ++i)
      if (elements[i] != elements[i - 1] + 1) return false;
    return true;
  }

  std::string str() const {
    std::string s = "(";
    for (size_t i = 0; i < elements.size(); ++i) {
      if (i) s += ",";
      s += std::to_string(elements[i]);
    }
    return s + ")";
  }

  bool operator==(const index_set& o) const { return n == o.n && elements == o.elements; }
};

namespace index_sets {

inline void check_args(int k, int n) {
  if (k < 1 || k > n) throw std::invalid_argument("index_sets: need 1 <= k <= n");
  if (n > 64) throw std::invalid_argument("index_sets: n capped at 64");
}

/// All C(n,k) index sets of Q(k,n) in lexicographic order.
inline std::vector<index_set> enumerate(int k, int n) {
  check_args(k, n);
  const std::uint64_t count = binomial(n, k);
  if (count > max_compound_dim())
    throw std::invalid_argument("index_sets: C(n,k)=" + std::to_string(count) +
                                " exceeds guardrail " + std::to_string(max_compound_dim()));
  std::vector<index_set> out;
  out.reserve(static_cast<size_t>(count));
  std::vector<int> cur(k);
  for (int i = 0; i < k; ++i) cur[i] = i + 1;
  while (true) {
    out.push_back(index_set{cur, n});
    int i = k - 1;
    while (i >= 0 && cur[i] == n - k + 1 + i) --i;
    if (i < 0) break;
    ++cur[i];
    for (int j = i + 1; j < k; ++j) cur[j] = cur[j - 1] + 1;
  }
  return out;
}

/// 0-based lexicographic position of s within Q(k,n).
inline std::uint64_t rank(const index_set& s) {
  if (!s.valid()) throw std::invalid_argument("index_sets::rank: malformed index set");
  const int k = s.k();
  const int n = s.n;
  check_args(k, n);
  std::uint64_t r = 0;
  int prev = 0;
  for (int i = 0; i < k; ++i) {
    for (int v = prev + 1; v < s.elements[i]; ++v) r += binomial(n - v, k - 1 - i);
    prev = s.elements[i];
  }
  return r;
}

inline index_set unrank(std::uint64_t r, int k, int n) {
  check_args(k, n);
  if (r >= binomial(n, k)) throw std::invalid_argument("index_sets::unrank: rank out of range");
  index_set s;
  s.n = n;
  s.elements.resize(k);
  int v = 1;
  for (int i = 0; i < k; ++i) {
    while (true) {
      const std::uint64_t block = binomial(n - v, k - 1 - i);
      if (r < block) break;
      r -= block;
      ++v;
    }
    s.elements[i] = v;
    ++v;
  }
  return s;
}

}  // namespace index_sets

}  // namespace ck
