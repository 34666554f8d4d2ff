// Closure membership over the box preordering: the Motzkin polynomial is
// non-negative on the square, so its eps-shifts certify, while x picks up a
// point witness.

#include <cstdio>

#include "conekit/conekit.hpp"

using namespace conekit;

int main() {
  QuadraticModule box(2,
                      {Polynomial::parse("1 - x^2", 2), Polynomial::parse("1 - y^2", 2)},
                      QuadraticModule::Kind::preordering);

  ClosureOptions opts;
  opts.eps_grid = {0.5};
  opts.d_max = 12;

  auto motzkin = Polynomial::parse("x^4*y^2 + x^2*y^4 - 3*x^2*y^2 + 1", 2);
  auto verdict = closure_membership(motzkin, box, nullptr, opts);
  if (verdict.kind == ClosureVerdict::Kind::in_closure) {
    for (const auto& [eps, d] : verdict.eps_to_degree)
      std::printf("motzkin + %.2f certified at degree %d\n", eps, d);
  }

  auto refuted = closure_membership(Polynomial::parse("x", 2), box, nullptr, {});
  if (refuted.kind == ClosureVerdict::Kind::not_in_closure) {
    std::printf("x refuted by the point (%.4f, %.4f), value %.4f\n", (*refuted.witness)[0],
                (*refuted.witness)[1], refuted.witness_value);
  }
  return 0;
}
