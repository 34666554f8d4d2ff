#pragma once

#include <optional>

#include "conekit/feasibility.hpp"

namespace conekit {

// Certified witness that M is Archimedean: N - sum_i x_i^2 in M at the
// stated truncation degree, with the certificate kept for auditing.
struct ArchimedeanWitness {
  double n = 0.0;
  int degree = 0;
  GramCertificate certificate;
};

inline Polynomial sum_of_squares_of_variables(int nvars) {
  Polynomial s(nvars);
  for (int i = 0; i < nvars; ++i) {
    MultiIndex m(static_cast<std::size_t>(nvars), 0);
    m[static_cast<std::size_t>(i)] = 2;
    s.add_term(m, Rational(1));
  }
  return s;
}

// Searches for the smallest N with N - sum x_i^2 certifiably in M: double N
// upward until a certificate appears, then bisect down. A nullopt result is
// a budget exhaustion, not a disproof of the Archimedean property.
inline std::optional<ArchimedeanWitness> archimedean_witness(
    const QuadraticModule& m, double n_max = defaults::witness_n_max,
    int d_max = defaults::witness_d_max, double tol = defaults::psd_tol,
    long max_iter = defaults::max_iterations) {
  if (n_max <= 0) throw std::invalid_argument("n_max must be positive");
  if (d_max < 2) throw std::invalid_argument("d_max must be at least 2");

  const Polynomial s = sum_of_squares_of_variables(m.nvars);

  for (int d = 2; d <= d_max; d += 2) {
    FeasibilityContext ctx(m, d);
    SolveOptions opts;
    opts.tol = tol;
    opts.max_iter = max_iter;

    auto try_n = [&](double n, const std::vector<double>* warm) {
      Polynomial target = Polynomial::constant(m.nvars, rational_from_double(n)) - s;
      SolveOptions o = opts;
      o.warm_start = warm;
      return ctx.solve(ctx.coefficients(target), o);
    };

    double lo = 0.0;
    double hi = 0.0;
    SolveResult hi_result;
    for (double n = 1.0; n <= n_max; n *= 2.0) {
      SolveResult r = try_n(n, nullptr);
      if (r.certified) {
        hi = n;
        hi_result = std::move(r);
        break;
      }
      lo = n;
    }
    if (hi == 0.0) continue;  // no certificate at this degree; try a deeper one

    int steps = 0;
    while (hi - lo > 1e-6 * std::max(1.0, hi) && steps < 80) {
      ++steps;
      double mid = 0.5 * (lo + hi);
      SolveResult r = try_n(mid, &hi_result.solution);
      if (r.certified) {
        hi = mid;
        hi_result = std::move(r);
      } else {
        lo = mid;
      }
    }

    ArchimedeanWitness w;
    w.n = hi;
    w.degree = d;
    w.certificate = std::move(hi_result.certificate);
    Polynomial target = Polynomial::constant(m.nvars, rational_from_double(hi)) - s;
    ctx.finalize(w.certificate, target);
    return w;
  }
  return std::nullopt;
}

}  // namespace conekit
