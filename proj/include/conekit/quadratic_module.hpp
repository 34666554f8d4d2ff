#pragma once

#include <array>
#include <cmath>
#include <cstdint>
#include <optional>
#include <random>
#include <set>
#include <string>
#include <vector>

#include "conekit/defaults.hpp"
#include "conekit/polynomial.hpp"

namespace conekit {

// Finitely generated quadratic module M = { sigma_0 + sum sigma_i g_i } or,
// with kind == preordering, the cone generated by all square-free products
// of the generators. The constant generator g_0 = 1 is implicit.
struct QuadraticModule {
  enum class Kind { quadratic_module, preordering };

  int nvars = 1;
  std::vector<Polynomial> generators;
  Kind kind = Kind::quadratic_module;

  QuadraticModule(int nvars_, std::vector<Polynomial> gens, Kind kind_ = Kind::quadratic_module)
      : nvars(nvars_), generators(std::move(gens)), kind(kind_) {
    for (const auto& g : generators) {
      if (g.nvars() != nvars) throw std::invalid_argument("generator dimension mismatch");
      if (g.is_zero()) throw std::invalid_argument("zero generator");
    }
  }

  int max_generator_degree() const {
    int d = 0;
    for (const auto& g : generators) d = std::max(d, g.degree());
    return d;
  }

  bool is_preordering() const { return kind == Kind::preordering; }
};

// All products g^e, e in {0,1}^m, deduplicated, e enumerated as ascending
// bitmasks so the constant 1 comes first. Guarded against the 2^m blowup.
inline std::vector<Polynomial> schmudgen_products(const QuadraticModule& m) {
  const std::size_t count = m.generators.size();
  if (count > 20) throw std::invalid_argument("too many generators for preordering expansion (max 20)");
  std::vector<Polynomial> out;
  std::set<Polynomial> seen;
  for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << count); ++mask) {
    Polynomial prod = Polynomial::constant(m.nvars, Rational(1));
    for (std::size_t i = 0; i < count; ++i)
      if (mask & (std::uint64_t{1} << i)) prod = prod * m.generators[i];
    if (seen.insert(prod).second) out.push_back(std::move(prod));
  }
  return out;
}

// Generators whose sums-of-squares combinations span the cone at a given
// truncation: [1, g_1..g_m] for a quadratic module, the square-free products
// for a preordering.
inline std::vector<Polynomial> effective_generators(const QuadraticModule& m) {
  if (m.is_preordering()) return schmudgen_products(m);
  std::vector<Polynomial> out;
  out.reserve(m.generators.size() + 1);
  out.push_back(Polynomial::constant(m.nvars, Rational(1)));
  for (const auto& g : m.generators) out.push_back(g);
  return out;
}

// x in K_M up to tol: every generator evaluates >= -tol.
inline bool kset_contains(const QuadraticModule& m, const Point& x, double tol = 0.0) {
  if (static_cast<int>(x.size()) != m.nvars)
    throw std::invalid_argument("point dimension mismatch");
  if (tol < 0) throw std::invalid_argument("tol must be non-negative");
  for (const auto& g : m.generators)
    if (g.eval(x) < -tol) return false;
  return true;
}

using Box = std::vector<std::array<double, 2>>;

// Finite stand-in for a compact subset of K_M: points that passed the
// generator test, plus the sampling parameters needed to reproduce them.
struct SampleSet {
  std::vector<Point> points;
  std::uint64_t seed = 0;
  Box box;
  double tol = 0.0;
  bool possibly_empty = false;

  bool empty() const { return points.empty(); }
  std::size_t size() const { return points.size(); }
};

// Deterministic rejection sampling of K_M inside a box. Box corners and the
// midpoint are always tried first, which pins down extreme points of thin
// feasible sets that uniform sampling would miss.
inline SampleSet sample_kset(const QuadraticModule& m, const Box& box, int count,
                             std::uint64_t seed,
                             long max_trials_factor = defaults::max_trials_factor) {
  if (static_cast<int>(box.size()) != m.nvars) throw std::invalid_argument("box dimension mismatch");
  if (count < 1) throw std::invalid_argument("count must be >= 1");
  for (const auto& iv : box)
    if (!(std::isfinite(iv[0]) && std::isfinite(iv[1])) || iv[0] > iv[1])
      throw std::invalid_argument("box intervals must be finite and ordered");

  SampleSet out;
  out.seed = seed;
  out.box = box;
  out.tol = 0.0;

  const int n = m.nvars;
  if (n <= 20) {
    for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << n); ++mask) {
      Point corner(n);
      for (int i = 0; i < n; ++i) corner[i] = box[i][(mask >> i) & 1u];
      if (kset_contains(m, corner, out.tol)) out.points.push_back(std::move(corner));
      if (out.points.size() >= static_cast<std::size_t>(count)) break;
    }
  }
  if (out.points.size() < static_cast<std::size_t>(count)) {
    Point mid(n);
    for (int i = 0; i < n; ++i) mid[i] = 0.5 * (box[i][0] + box[i][1]);
    if (kset_contains(m, mid, out.tol)) out.points.push_back(std::move(mid));
  }

  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  long trials = 0;
  const long max_trials = max_trials_factor * count;
  while (out.points.size() < static_cast<std::size_t>(count) && trials < max_trials) {
    ++trials;
    Point x(n);
    for (int i = 0; i < n; ++i) x[i] = box[i][0] + (box[i][1] - box[i][0]) * unit(rng);
    if (kset_contains(m, x, out.tol)) out.points.push_back(std::move(x));
  }
  out.possibly_empty = out.points.empty();
  return out;
}

}  // namespace conekit
