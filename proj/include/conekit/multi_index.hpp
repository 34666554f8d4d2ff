#pragma once

#include <algorithm>
#include <cstdint>
#include <numeric>
#include <stdexcept>
#include <vector>

namespace conekit {

// Exponent vector of a monomial; length equals the ambient variable count.
using MultiIndex = std::vector<int>;

inline int total_degree(const MultiIndex& a) {
  return std::accumulate(a.begin(), a.end(), 0);
}

inline MultiIndex add(const MultiIndex& a, const MultiIndex& b) {
  if (a.size() != b.size()) throw std::invalid_argument("multi-index dimension mismatch");
  MultiIndex c(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) c[i] = a[i] + b[i];
  return c;
}

// Graded lexicographic order: first by total degree, ties broken
// lexicographically on the exponent vector. Used for canonical printing and
// for enumerating Gram bases.
struct GradedLexLess {
  bool operator()(const MultiIndex& a, const MultiIndex& b) const {
    int da = total_degree(a), db = total_degree(b);
    if (da != db) return da < db;
    return std::lexicographical_compare(a.begin(), a.end(), b.begin(), b.end());
  }
};

// All monomials in `nvars` variables of total degree <= max_degree,
// graded-lex ascending.
inline std::vector<MultiIndex> monomials_up_to(int nvars, int max_degree) {
  std::vector<MultiIndex> out;
  if (nvars <= 0 || max_degree < 0) return out;
  MultiIndex cur(static_cast<std::size_t>(nvars), 0);
  // Enumerate exponent vectors of each exact degree, then sort within degree.
  for (int deg = 0; deg <= max_degree; ++deg) {
    std::vector<MultiIndex> level;
    std::fill(cur.begin(), cur.end(), 0);
    cur[0] = deg;
    while (true) {
      level.push_back(cur);
      // next composition of `deg` into nvars parts, colex-style walk
      int k = nvars - 1;
      while (k > 0 && cur[k - 1] == 0) --k;
      if (k == 0) break;
      --cur[k - 1];
      int rest = deg - std::accumulate(cur.begin(), cur.begin() + k, 0);
      std::fill(cur.begin() + k, cur.end(), 0);
      cur[k] = rest;
    }
    std::sort(level.begin(), level.end(),
              [](const MultiIndex& a, const MultiIndex& b) {
                return std::lexicographical_compare(a.begin(), a.end(), b.begin(), b.end());
              });
    for (auto& m : level) out.push_back(std::move(m));
  }
  return out;
}

}  // namespace conekit
