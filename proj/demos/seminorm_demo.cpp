// Enclose the cone seminorm of a few polynomials over the unit interval
// module QM(1 - x^2) and print the certified two-sided bounds.

#include <cstdio>

#include "conekit/conekit.hpp"

using namespace conekit;

int main() {
  QuadraticModule m(1, {Polynomial::parse("1 - x1^2", 1)});

  auto witness = archimedean_witness(m);
  if (!witness) {
    std::puts("no Archimedean witness found");
    return 1;
  }
  std::printf("witness: %.3f - x1^2 certified at degree %d\n", witness->n, witness->degree);

  auto samples = sample_kset(m, Box{{-1.0, 1.0}}, 500, 1);
  SeminormOptions opts;
  opts.witness = *witness;

  for (const char* text : {"x1", "x1^2", "x1^2 - x1", "1/2 + x1^3"}) {
    auto a = Polynomial::parse(text, 1);
    auto iv = seminorm_interval(a, m, 4, samples, opts);
    std::printf("||%s||  in  [%.8f, %.8f]  (gap %.2e, %d bisection steps)\n", text, iv.lb,
                iv.ub, iv.gap(), iv.bisection_steps);
  }
  return 0;
}
