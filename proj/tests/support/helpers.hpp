#pragma once

#include <array>
#include <cstdio>
#include <random>
#include <string>
#include <vector>

#include "conekit/conekit.hpp"

namespace testsupport {

using namespace conekit;

inline Polynomial poly(const std::string& text, int nvars) {
  return Polynomial::parse(text, nvars);
}

// Random sparse polynomial with dyadic coefficients in [-2, 2] (multiples of
// 1/16), every monomial kept with the given density.
inline Polynomial random_polynomial(std::mt19937_64& rng, int nvars, int max_degree,
                                    double density = 0.7) {
  std::uniform_int_distribution<int> coef(-32, 32);
  std::uniform_real_distribution<double> keep(0.0, 1.0);
  Polynomial p(nvars);
  for (const auto& mono : monomials_up_to(nvars, max_degree)) {
    if (keep(rng) > density) continue;
    int k = coef(rng);
    if (k == 0) continue;
    p.add_term(mono, Rational(k, 16));
  }
  return p;
}

inline Rational random_scalar(std::mt19937_64& rng) {
  std::uniform_int_distribution<int> num(-16, 16);
  int k = num(rng);
  if (k == 0) k = 3;
  return Rational(k, 8);
}

// Enumeration oracle: max |f| over a regular grid in the box.
inline double grid_sup(const Polynomial& f, const Box& box, int per_axis = 201) {
  std::vector<int> idx(box.size(), 0);
  double best = 0;
  while (true) {
    Point x(box.size());
    for (std::size_t i = 0; i < box.size(); ++i)
      x[i] = box[i][0] + (box[i][1] - box[i][0]) * idx[i] / double(per_axis - 1);
    best = std::max(best, std::abs(f.eval(x)));
    std::size_t k = 0;
    while (k < idx.size() && ++idx[k] == per_axis) idx[k++] = 0;
    if (k == idx.size()) break;
  }
  return best;
}

// Enumeration oracle: min f over a regular grid in the box.
inline double grid_min(const Polynomial& f, const Box& box, int per_axis = 201) {
  std::vector<int> idx(box.size(), 0);
  double best = std::numeric_limits<double>::infinity();
  while (true) {
    Point x(box.size());
    for (std::size_t i = 0; i < box.size(); ++i)
      x[i] = box[i][0] + (box[i][1] - box[i][0]) * idx[i] / double(per_axis - 1);
    best = std::min(best, f.eval(x));
    std::size_t k = 0;
    while (k < idx.size() && ++idx[k] == per_axis) idx[k++] = 0;
    if (k == idx.size()) break;
  }
  return best;
}

// Binomial-count oracle for the size of the monomial basis.
inline long long monomial_count(int nvars, int degree) {
  // C(nvars + degree, nvars)
  long long r = 1;
  for (int i = 1; i <= nvars; ++i) r = r * (degree + i) / i;
  return r;
}

struct ProcessResult {
  int exit_code = -1;
  std::string output;
};

inline ProcessResult run_process(const std::string& command) {
  ProcessResult res;
  FILE* pipe = popen((command + " 2>/dev/null").c_str(), "r");
  if (pipe == nullptr) return res;
  std::array<char, 4096> buf{};
  std::size_t got;
  while ((got = fread(buf.data(), 1, buf.size(), pipe)) > 0) res.output.append(buf.data(), got);
  int status = pclose(pipe);
  if (WIFEXITED(status)) res.exit_code = WEXITSTATUS(status);
  return res;
}

inline std::string shell_quote(const std::string& s) { return "'" + s + "'"; }

}  // namespace testsupport
