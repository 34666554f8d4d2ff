#pragma once

#include <limits>
#include <optional>
#include <vector>

#include "conekit/linalg.hpp"
#include "conekit/quadratic_module.hpp"

namespace conekit {

// Monomial basis attached to one effective generator at truncation degree d.
struct GeneratorBasis {
  int generator_index = 0;  // index into effective_generators(M)
  Polynomial generator;
  std::vector<MultiIndex> basis;  // graded-lex ascending, degree <= capacity
};

// For each effective generator g with deg g <= d, the monomials of total
// degree <= floor((d - deg g)/2). Generators that do not fit at degree d are
// omitted.
inline std::vector<GeneratorBasis> gram_bases(const QuadraticModule& m, int d) {
  if (d < 0) throw std::invalid_argument("degree must be non-negative");
  std::vector<GeneratorBasis> out;
  const auto gens = effective_generators(m);
  for (std::size_t i = 0; i < gens.size(); ++i) {
    const int capacity = (d - gens[i].degree()) / 2;
    if (d - gens[i].degree() < 0) continue;
    out.push_back(GeneratorBasis{static_cast<int>(i), gens[i], monomials_up_to(m.nvars, capacity)});
  }
  return out;
}

// One PSD block of a certificate: sigma_i = b^T Q b over the stored basis.
struct GramBlock {
  int generator_index = 0;
  std::vector<MultiIndex> basis;
  Matrix q;
};

// Representation f ~ sum_i (b_i^T Q_i b_i) * g_i at truncation degree
// `degree`; `residual` is the exact l1 coefficient distance, evaluated with
// the Q entries taken as the dyadic rationals they are.
struct GramCertificate {
  int degree = 0;
  double residual = 0.0;
  std::vector<GramBlock> blocks;
};

// sigma = b^T Q b expanded exactly over the rationals.
inline Polynomial gram_block_polynomial(const GramBlock& block, int nvars) {
  Polynomial sigma(nvars);
  const int dim = static_cast<int>(block.basis.size());
  for (int i = 0; i < dim; ++i) {
    for (int j = 0; j < dim; ++j) {
      double entry = block.q(i, j);
      if (entry == 0.0) continue;
      sigma.add_term(add(block.basis[i], block.basis[j]), rational_from_double(entry));
    }
  }
  return sigma;
}

struct VerificationResult {
  Rational residual_exact{0};
  double residual = 0.0;
  double eigenvalue_floor = 0.0;
  Polynomial expansion;

  VerificationResult() : expansion(1) {}
};

// Independent audit of a certificate: re-expand sum sigma_i g_i symbolically
// from the stored matrix entries and compare against f; re-derive the
// eigenvalue floor with the internal eigensolver.
inline VerificationResult verify_certificate(const GramCertificate& cert, const Polynomial& f,
                                             const QuadraticModule& m) {
  if (f.nvars() != m.nvars) throw std::invalid_argument("polynomial dimension mismatch");
  const auto gens = effective_generators(m);
  VerificationResult res;
  res.expansion = Polynomial(m.nvars);
  double floor = std::numeric_limits<double>::infinity();
  for (const auto& block : cert.blocks) {
    if (block.generator_index < 0 || block.generator_index >= static_cast<int>(gens.size()))
      throw std::invalid_argument("certificate block references an unknown generator");
    if (block.q.rows() != block.q.cols() ||
        block.q.rows() != static_cast<int>(block.basis.size()))
      throw std::invalid_argument("certificate block dimensions are inconsistent");
    for (const auto& b : block.basis)
      if (static_cast<int>(b.size()) != m.nvars)
        throw std::invalid_argument("certificate basis dimension mismatch");
    if (block.q.rows() > 0) {
      require_symmetric(block.q);
      floor = std::min(floor, jacobi_eigen(block.q).min_value());
    }
    res.expansion += gram_block_polynomial(block, m.nvars) * gens[block.generator_index];
  }
  res.residual_exact = (f - res.expansion).l1_exact();
  res.residual = to_double(res.residual_exact);
  res.eigenvalue_floor = std::isfinite(floor) ? floor : 0.0;
  return res;
}

}  // namespace conekit
