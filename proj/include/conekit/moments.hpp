#pragma once

#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "conekit/seminorm.hpp"

namespace conekit {

// Linear functional on polynomials of degree <= degree, encoded by its
// moment vector. The index set is complete up to the stated degree.
struct MomentFunctional {
  int nvars = 1;
  int degree = 0;  // even
  std::map<MultiIndex, double, GradedLexLess> moments;

  double unit_mass() const {
    auto it = moments.find(MultiIndex(static_cast<std::size_t>(nvars), 0));
    return it == moments.end() ? 0.0 : it->second;
  }
};

// L(f) = sum_a f_a * m_a.
inline double apply(const MomentFunctional& l, const Polynomial& f) {
  if (f.nvars() != l.nvars) throw std::invalid_argument("functional dimension mismatch");
  if (f.degree() > l.degree) throw std::invalid_argument("polynomial degree exceeds functional degree");
  long double acc = 0;
  for (const auto& [mono, coef] : f.terms()) acc += static_cast<long double>(to_double(coef)) * l.moments.at(mono);
  return static_cast<double>(acc);
}

// Moments of the evaluation functional at x, up to degree 2d.
inline MomentFunctional point_evaluation(const Point& x, int d) {
  MomentFunctional l;
  l.nvars = static_cast<int>(x.size());
  l.degree = 2 * d;
  for (const auto& mono : monomials_up_to(l.nvars, l.degree)) {
    long double v = 1;
    for (std::size_t i = 0; i < mono.size(); ++i)
      for (int k = 0; k < mono[static_cast<std::size_t>(i)]; ++k) v *= static_cast<long double>(x[i]);
    l.moments[mono] = static_cast<double>(v);
  }
  return l;
}

inline MomentFunctional convex_combination(const std::vector<Point>& points,
                                           const std::vector<double>& weights, int d) {
  if (points.empty() || points.size() != weights.size())
    throw std::invalid_argument("convex combination needs matching points and weights");
  MomentFunctional out = point_evaluation(points[0], d);
  for (auto& [mono, v] : out.moments) v *= weights[0];
  for (std::size_t k = 1; k < points.size(); ++k) {
    MomentFunctional lk = point_evaluation(points[k], d);
    for (auto& [mono, v] : out.moments) v += weights[k] * lk.moments.at(mono);
  }
  return out;
}

// Localizing matrix of g: rows/cols over monomials up to floor((2d-deg g)/2),
// entry (b,c) = L(g * x^b * x^c). g = 1 gives the moment matrix.
inline Matrix moment_matrix(const MomentFunctional& l, const Polynomial& g, int d) {
  if (g.nvars() != l.nvars) throw std::invalid_argument("localizer dimension mismatch");
  if (2 * d > l.degree) throw std::invalid_argument("degree exceeds functional degree");
  if (g.degree() > 2 * d) throw std::invalid_argument("localizer degree exceeds 2d");
  const int cap = (2 * d - g.degree()) / 2;
  const auto basis = monomials_up_to(l.nvars, cap);
  const int n = static_cast<int>(basis.size());
  Matrix out(n, n);
  for (int i = 0; i < n; ++i) {
    for (int j = i; j < n; ++j) {
      MultiIndex bc = add(basis[static_cast<std::size_t>(i)], basis[static_cast<std::size_t>(j)]);
      long double acc = 0;
      for (const auto& [mono, coef] : g.terms())
        acc += static_cast<long double>(to_double(coef)) * l.moments.at(add(bc, mono));
      out(i, j) = out(j, i) = static_cast<double>(acc);
    }
  }
  return out;
}

// L >= 0 on the truncated cone: the moment matrix and every localizing
// matrix clear the -tol eigenvalue floor.
inline bool is_positive_on(const MomentFunctional& l, const QuadraticModule& m, int d,
                           double tol = defaults::psd_tol) {
  if (2 * d > l.degree) throw std::invalid_argument("degree exceeds functional degree");
  for (const auto& g : effective_generators(m)) {
    if (g.degree() > 2 * d) continue;  // no room for this localizer at degree d
    Matrix mm = moment_matrix(l, g, d);
    if (mm.rows() == 0) continue;
    if (jacobi_eigen(mm).min_value() < -tol) return false;
  }
  return true;
}

// |L(a)| <= L(1) * ||a||_M for functionals positive on M; reported with the
// certified upper bound standing in for the seminorm.
struct ContinuityReport {
  struct Entry {
    std::string polynomial;
    double value = 0.0;
    double bound = 0.0;
    double margin = 0.0;
    bool ok = false;
  };
  std::vector<Entry> entries;
  bool all_ok = true;
};

inline ContinuityReport continuity_check(const MomentFunctional& l, const QuadraticModule& m,
                                         const std::vector<Polynomial>& tests, int d,
                                         double tol = 1e-6) {
  if (!is_positive_on(l, m, l.degree / 2))
    throw std::invalid_argument("functional is not positive on the module");
  SeminormOptions opts;
  auto w = archimedean_witness(m);
  if (!w.has_value()) throw non_archimedean_error("continuity bound requires an Archimedean witness");
  opts.witness = *w;

  ContinuityReport report;
  for (const auto& a : tests) {
    ContinuityReport::Entry e;
    e.polynomial = a.str();
    e.value = apply(l, a);
    SeminormUpperBound ub = seminorm_ub(a, m, d, opts);
    e.bound = l.unit_mass() * ub.value;
    e.margin = e.bound + tol - std::abs(e.value);
    e.ok = e.margin >= 0.0;
    report.all_ok = report.all_ok && e.ok;
    report.entries.push_back(std::move(e));
  }
  return report;
}

namespace detail {

// Golden-section scan of one coordinate; assumes nothing about unimodality,
// it is only a local refiner on top of the sampled minimum.
inline double golden_min_coordinate(const Polynomial& f, Point x, std::size_t coord, double lo,
                                    double hi, int iters = 48) {
  const double gr = 0.5 * (std::sqrt(5.0) - 1.0);
  double a = lo, b = hi;
  double c = b - gr * (b - a), d = a + gr * (b - a);
  auto value = [&](double t) {
    x[coord] = t;
    return f.eval(x);
  };
  double fc = value(c), fd = value(d);
  for (int i = 0; i < iters; ++i) {
    if (fc < fd) {
      b = d;
      d = c;
      fd = fc;
      c = b - gr * (b - a);
      fc = value(c);
    } else {
      a = c;
      c = d;
      fc = fd;
      d = a + gr * (b - a);
      fd = value(d);
    }
  }
  return fc < fd ? c : d;
}

}  // namespace detail

// Point witness that f is not non-negative on K_M: the sampled minimizer,
// locally refined by per-coordinate golden-section steps that must stay
// inside K_M. The evaluation at the witness is the separating functional's
// (negative) value.
inline std::optional<Point> separate(const Polynomial& f, const QuadraticModule& m,
                                     const SampleSet& d, double tol = defaults::separation_tol) {
  if (d.empty()) return std::nullopt;
  Point best = d.points.front();
  double best_val = f.eval(best);
  for (const auto& p : d.points) {
    double v = f.eval(p);
    if (v < best_val) {
      best_val = v;
      best = p;
    }
  }
  if (best_val >= -tol) return std::nullopt;

  for (int round = 0; round < 20; ++round) {
    bool improved = false;
    for (std::size_t i = 0; i < best.size(); ++i) {
      double t = detail::golden_min_coordinate(f, best, i, d.box[i][0], d.box[i][1]);
      Point candidate = best;
      candidate[i] = t;
      if (!kset_contains(m, candidate, 0.0)) continue;
      double v = f.eval(candidate);
      if (v < best_val) {
        best_val = v;
        best = std::move(candidate);
        improved = true;
      }
    }
    if (!improved) break;
  }
  return best;
}

// Verdict for membership of f in the seminorm closure of the cone:
// a point witness refutes, an eps-shift certificate ladder supports, and
// Unknown stays honest when neither side lands.
struct ClosureVerdict {
  enum class Kind { in_closure, not_in_closure, unknown };
  Kind kind = Kind::unknown;
  std::optional<Point> witness;
  double witness_value = 0.0;
  std::vector<std::pair<double, int>> eps_to_degree;
  std::vector<GramCertificate> certificates;  // parallel to eps_to_degree
  SampleSet samples;
};

struct ClosureOptions {
  std::vector<double> eps_grid{1.0, 0.1, 0.01};
  int d_max = defaults::closure_d_max;
  Box box;  // default: unit box
  int samples = defaults::sample_count;
  std::uint64_t seed = defaults::sample_seed;
  double separation_tol = defaults::separation_tol;
  double solver_tol = defaults::psd_tol;
  long max_iter = defaults::max_iterations;
};

// Pools the generators of M and T; the combined cone is a preordering if
// either input is, which only enlarges the certificate search space.
inline QuadraticModule pooled_module(const QuadraticModule& m, const QuadraticModule* t) {
  std::vector<Polynomial> gens = m.generators;
  QuadraticModule::Kind kind = m.kind;
  if (t != nullptr) {
    if (t->nvars != m.nvars) throw std::invalid_argument("module dimension mismatch");
    for (const auto& g : t->generators) gens.push_back(g);
    if (t->is_preordering()) kind = QuadraticModule::Kind::preordering;
  }
  return QuadraticModule(m.nvars, std::move(gens), kind);
}

inline ClosureVerdict closure_membership(const Polynomial& f, const QuadraticModule& m,
                                         const QuadraticModule* t, const ClosureOptions& opts = {}) {
  if (opts.eps_grid.empty()) throw std::invalid_argument("eps grid must be non-empty");
  QuadraticModule pooled = pooled_module(m, t);

  Box box = opts.box;
  if (box.empty()) box.assign(static_cast<std::size_t>(pooled.nvars), {-1.0, 1.0});
  ClosureVerdict verdict;
  verdict.samples = sample_kset(pooled, box, opts.samples, opts.seed);
  if (verdict.samples.empty())
    throw empty_set_error("sampled intersection of the feasible sets is empty");

  if (auto w = separate(f, pooled, verdict.samples, opts.separation_tol)) {
    verdict.kind = ClosureVerdict::Kind::not_in_closure;
    verdict.witness = *w;
    verdict.witness_value = f.eval(*w);
    return verdict;
  }

  const int d_min = std::max(f.degree(), 1);
  bool all_eps_certified = true;
  for (double eps : opts.eps_grid) {
    Polynomial shifted = f + Polynomial::constant(f.nvars(), rational_from_double(eps));
    bool certified = false;
    int last_capacity_signature = -1;
    for (int d = d_min; d <= opts.d_max; ++d) {
      // skip degrees that do not enlarge any block
      int signature = 0;
      for (const auto& gb : gram_bases(pooled, d)) signature += static_cast<int>(gb.basis.size());
      if (signature == last_capacity_signature) continue;
      last_capacity_signature = signature;

      MembershipStatus st = membership(shifted, pooled, d, opts.solver_tol, opts.max_iter);
      if (st.is_certified()) {
        verdict.eps_to_degree.emplace_back(eps, d);
        verdict.certificates.push_back(*st.certificate);
        certified = true;
        break;
      }
    }
    if (!certified) {
      all_eps_certified = false;
      break;
    }
  }
  verdict.kind = all_eps_certified ? ClosureVerdict::Kind::in_closure : ClosureVerdict::Kind::unknown;
  return verdict;
}

// Largest |L(pq) - L(p)L(q)| over the pairs: zero for point evaluations,
// generically positive for proper mixtures.
inline double multiplicativity_defect(const MomentFunctional& l,
                                      const std::vector<std::pair<Polynomial, Polynomial>>& pairs) {
  double worst = 0.0;
  for (const auto& [p, q] : pairs) {
    double defect = std::abs(apply(l, p * q) - apply(l, p) * apply(l, q));
    worst = std::max(worst, defect);
  }
  return worst;
}

}  // namespace conekit
