#pragma once

#include <cstdint>
#include <limits>
#include <optional>

#include "conekit/archimedean.hpp"

namespace conekit {

// Sup-seminorm over a finite point set, evaluated in exact rational
// arithmetic (sample coordinates are dyadic rationals), so the seminorm
// axioms hold exactly on this side.
inline Rational rho_exact(const Polynomial& a, const SampleSet& d) {
  if (d.empty()) throw std::invalid_argument("rho_D over an empty sample set");
  Rational best(0);
  for (const auto& p : d.points) {
    Rational v = rational_abs(a.eval_exact(p));
    if (v > best) best = v;
  }
  return best;
}

inline double rho(const Polynomial& a, const SampleSet& d) { return to_double(rho_exact(a, d)); }

// Certified lower bound for the cone seminorm: any r with r +- a in M
// dominates |a| on K_M, hence on the sample set D (subset of K_M).
inline double seminorm_lb(const Polynomial& a, const QuadraticModule& m, const SampleSet& d) {
  (void)m;  // D is maintained inside K_M by construction (sample_kset)
  return rho(a, d);
}

struct SeminormOptions {
  double bisect_tol = defaults::bisect_tol;
  int bisect_max_steps = defaults::bisect_max_steps;
  double solver_tol = defaults::psd_tol;
  long max_iter = defaults::max_iterations;
  long lb_probe_max_iter = 20000;  // budget when testing the lower bound itself
  int samples = defaults::sample_count;
  std::uint64_t seed = defaults::sample_seed;
  std::optional<ArchimedeanWitness> witness;  // reuse across calls on one module
  const SampleSet* lb_samples = nullptr;      // bracket start; sampled internally if absent
};

struct SeminormUpperBound {
  double value = std::numeric_limits<double>::infinity();
  bool finite = false;
  std::optional<GramCertificate> certificate_plus;
  std::optional<GramCertificate> certificate_minus;
  int degree = 0;
  int bisection_steps = 0;
  long solver_iterations = 0;
  double bracket_lo = 0.0;
  ArchimedeanWitness witness;
};

// Upper enclosure of ||a||_M by bisection over r, with both one-sided
// memberships r+a and r-a required to certify. Requires an Archimedean
// witness; non-Archimedean modules are refused (the direct-limit bound is
// the right tool there).
inline SeminormUpperBound seminorm_ub(const Polynomial& a, const QuadraticModule& m, int d,
                                      const SeminormOptions& opts = {}) {
  if (a.nvars() != m.nvars) throw std::invalid_argument("polynomial dimension mismatch");
  if (d < a.degree()) throw std::invalid_argument("truncation degree below deg a");

  SeminormUpperBound out;
  out.degree = d;

  if (opts.witness.has_value()) {
    out.witness = *opts.witness;
  } else {
    auto w = archimedean_witness(m);
    if (!w.has_value())
      throw non_archimedean_error(
          "no Archimedean witness found within budget; the cone seminorm is defined only for "
          "Archimedean modules (use the direct-limit lower bound instead)");
    out.witness = *w;
  }

  // Bracket start: a sampled sup lower bound (valid since D lies in K_M).
  double lo = 0.0;
  if (opts.lb_samples != nullptr) {
    if (!opts.lb_samples->empty()) lo = rho(a, *opts.lb_samples);
  } else {
    const double radius = std::sqrt(std::max(out.witness.n, 0.0));
    Box box(static_cast<std::size_t>(m.nvars), {-radius, radius});
    SampleSet d_int = sample_kset(m, box, opts.samples, opts.seed);
    if (!d_int.empty()) lo = rho(a, d_int);
  }
  out.bracket_lo = lo;

  FeasibilityContext ctx(m, d);
  const std::vector<double> c_plus = ctx.coefficients(a);
  const int const_row = ctx.constant_row();

  struct Arm {
    std::vector<double> warm;
    bool has_warm = false;
    GramCertificate cert;
  };
  Arm plus, minus;

  auto solve_arm = [&](double r, int sign, Arm& arm, long budget) {
    std::vector<double> c(c_plus.size());
    for (std::size_t i = 0; i < c.size(); ++i) c[i] = sign * c_plus[i];
    c[static_cast<std::size_t>(const_row)] += r;
    SolveOptions so;
    so.tol = opts.solver_tol;
    so.max_iter = budget;
    so.warm_start = arm.has_warm ? &arm.warm : nullptr;
    SolveResult res = ctx.solve(c, so);
    out.solver_iterations += res.iterations;
    if (res.certified) {
      arm.warm = std::move(res.solution);
      arm.has_warm = true;
      arm.cert = std::move(res.certificate);
      return true;
    }
    return false;
  };
  auto certify_both = [&](double r, long budget) {
    return solve_arm(r, +1, plus, budget) && solve_arm(r, -1, minus, budget);
  };

  // The sampled bound is often attained; test it first with a reduced budget.
  if (certify_both(lo, std::min(opts.max_iter, opts.lb_probe_max_iter))) {
    out.value = lo;
    out.finite = true;
    out.certificate_plus = plus.cert;
    out.certificate_minus = minus.cert;
  } else {
    double hi = out.witness.n * (1.0 + a.l1());
    if (hi < lo) hi = lo + 1.0;
    if (!certify_both(hi, opts.max_iter)) {
      return out;  // +inf sentinel: even the Archimedean bracket fails at this degree
    }
    while (hi - lo > opts.bisect_tol && out.bisection_steps < opts.bisect_max_steps) {
      ++out.bisection_steps;
      const double mid = 0.5 * (lo + hi);
      Arm plus_save = plus, minus_save = minus;
      if (certify_both(mid, opts.max_iter)) {
        hi = mid;
      } else {
        lo = mid;
        plus = std::move(plus_save);  // keep the certified warm states
        minus = std::move(minus_save);
      }
    }
    out.value = hi;
    out.finite = true;
    out.certificate_plus = plus.cert;
    out.certificate_minus = minus.cert;
  }

  // Exact residuals on the returned certificates.
  {
    Polynomial r_const = Polynomial::constant(m.nvars, rational_from_double(out.value));
    ctx.finalize(*out.certificate_plus, r_const + a);
    ctx.finalize(*out.certificate_minus, r_const - a);
  }
  return out;
}

// Two-sided enclosure: sampled sup from below, certified membership from
// above. lb <= ub + 1e-9 holds unconditionally (weak duality).
struct Interval {
  double lb = 0.0;
  double ub = std::numeric_limits<double>::infinity();
  bool ub_finite = false;
  std::size_t lb_samples = 0;
  std::uint64_t lb_seed = 0;
  int degree = 0;
  int bisection_steps = 0;
  long solver_iterations = 0;
  std::optional<GramCertificate> certificate_plus;
  std::optional<GramCertificate> certificate_minus;

  double gap() const { return ub - lb; }
};

inline Interval seminorm_interval(const Polynomial& a, const QuadraticModule& m, int d,
                                  const SampleSet& samples, const SeminormOptions& opts = {}) {
  Interval out;
  out.lb = samples.empty() ? 0.0 : seminorm_lb(a, m, samples);
  out.lb_samples = samples.size();
  out.lb_seed = samples.seed;
  out.degree = d;

  SeminormOptions o = opts;
  o.lb_samples = &samples;
  SeminormUpperBound ub = seminorm_ub(a, m, d, o);
  out.ub = ub.value;
  out.ub_finite = ub.finite;
  out.bisection_steps = ub.bisection_steps;
  out.solver_iterations = ub.solver_iterations;
  out.certificate_plus = std::move(ub.certificate_plus);
  out.certificate_minus = std::move(ub.certificate_minus);
  return out;
}

}  // namespace conekit
