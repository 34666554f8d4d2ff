#pragma once

#include <algorithm>
#include <set>
#include <string>
#include <vector>

#include "conekit/seminorm.hpp"

namespace conekit {

// Finite family of sup-seminorms rho_D, each given by a labelled sample set.
// Saturated means closed under pairwise max, which for sup-seminorms is the
// union of the underlying point sets.
struct SeminormFamily {
  struct Member {
    std::string label;
    SampleSet set;
  };
  std::vector<Member> members;
  bool saturated = false;
};

namespace detail {

inline std::vector<Point> sorted_unique_points(std::vector<Point> pts) {
  std::sort(pts.begin(), pts.end());
  pts.erase(std::unique(pts.begin(), pts.end()), pts.end());
  return pts;
}

inline SampleSet union_sets(const SampleSet& a, const SampleSet& b) {
  SampleSet u;
  u.seed = a.seed;
  u.tol = std::max(a.tol, b.tol);
  u.box = a.box;
  for (std::size_t i = 0; i < u.box.size() && i < b.box.size(); ++i) {
    u.box[i][0] = std::min(u.box[i][0], b.box[i][0]);
    u.box[i][1] = std::max(u.box[i][1], b.box[i][1]);
  }
  std::vector<Point> pts = a.points;
  pts.insert(pts.end(), b.points.begin(), b.points.end());
  u.points = sorted_unique_points(std::move(pts));
  u.possibly_empty = u.points.empty();
  return u;
}

}  // namespace detail

// Closure under pairwise max: rho_{D1 u D2} = max(rho_{D1}, rho_{D2}), so the
// union sets realize the saturation. The induced bounds are unchanged; only
// the family's shape grows.
inline SeminormFamily saturate(const SeminormFamily& f) {
  if (f.members.size() > 16)
    throw std::invalid_argument("saturation of more than 16 members is not supported");
  SeminormFamily out = f;
  std::set<std::vector<Point>> seen;
  for (const auto& m : out.members) seen.insert(detail::sorted_unique_points(m.set.points));

  bool grew = true;
  while (grew) {
    grew = false;
    const std::size_t count = out.members.size();
    for (std::size_t i = 0; i < count; ++i) {
      for (std::size_t j = i + 1; j < count; ++j) {
        SampleSet u = detail::union_sets(out.members[i].set, out.members[j].set);
        auto key = detail::sorted_unique_points(u.points);
        if (seen.insert(std::move(key)).second) {
          out.members.push_back(
              {out.members[i].label + "|" + out.members[j].label, std::move(u)});
          grew = true;
        }
      }
    }
  }
  out.saturated = true;
  return out;
}

// Archimedean extension attached to a single point: M' = {a : a(alpha) >= 0}.
// Its cone seminorm collapses to |a(alpha)|, evaluated exactly.
struct PointExtension {
  Point alpha;
};

inline double extension_seminorm(const PointExtension& ext, const Polynomial& a) {
  return to_double(rational_abs(a.eval_exact(ext.alpha)));
}

struct DirectLimitBound {
  double value = 0.0;
  Point attained_at;
};

// Best lower bound obtainable from the finite subfamily of point extensions
// {M'_alpha : alpha in D}: the max of the extension seminorms, which equals
// rho_D. Works for non-Archimedean modules, where the cone seminorm itself
// is unavailable.
inline DirectLimitBound direct_limit_lb(const QuadraticModule& m, const Polynomial& a,
                                        const SampleSet& d) {
  if (d.empty()) throw std::invalid_argument("direct limit bound over an empty sample set");
  if (a.nvars() != m.nvars) throw std::invalid_argument("polynomial dimension mismatch");
  DirectLimitBound out;
  Rational best(-1);
  for (const auto& p : d.points) {
    Rational v = rational_abs(a.eval_exact(p));
    if (v > best) {
      best = v;
      out.attained_at = p;
    }
  }
  out.value = to_double(best);
  return out;
}

// Explicit separator for the spectrum of rho_D: the squared-distance product
// vanishes identically on D but not at beta, so the evaluation at beta is not
// rho_D-continuous. Exact because D is finite.
inline Polynomial spectrum_separation(const SampleSet& d, const Point& beta) {
  if (d.empty()) throw std::invalid_argument("spectrum separation needs a non-empty set");
  const int n = static_cast<int>(beta.size());
  for (const auto& p : d.points) {
    if (static_cast<int>(p.size()) != n) throw std::invalid_argument("point dimension mismatch");
    double dist2 = 0;
    for (int i = 0; i < n; ++i) dist2 += (beta[i] - p[i]) * (beta[i] - p[i]);
    if (std::sqrt(dist2) <= 1e-9)
      throw std::invalid_argument("beta coincides with a member of D");
  }
  Polynomial f = Polynomial::constant(n, Rational(1));
  for (const auto& p : d.points) {
    Polynomial factor(n);
    for (int i = 0; i < n; ++i) {
      Polynomial diff = Polynomial::variable(n, i) -
                        Polynomial::constant(n, rational_from_double(p[static_cast<std::size_t>(i)]));
      factor += diff * diff;
    }
    f = f * factor;
  }
  return f;
}

}  // namespace conekit
