#pragma once

#include <cmath>
#include <limits>
#include <map>
#include <vector>

#include "conekit/defaults.hpp"
#include "conekit/gram.hpp"

namespace conekit {

struct SolveOptions {
  double tol = defaults::psd_tol;
  long max_iter = defaults::max_iterations;  // alternating-projection budget
  long stall_window = 100;
  long projection_cap = 600;  // hand over to the ascent phase after this many sweeps
  long ascent_cap = 400;
  const std::vector<double>* warm_start = nullptr;
};

struct SolveResult {
  bool certified = false;
  GramCertificate certificate;  // residual holds the float estimate until finalized
  long iterations = 0;
  double final_residual = std::numeric_limits<double>::infinity();
  double eigenvalue_floor = -std::numeric_limits<double>::infinity();
  std::vector<double> solution;  // concatenated blocks, row-major
};

// Truncated-membership feasibility for a fixed (module, degree) pair.
//
// The linear map from stacked Gram blocks to polynomial coefficients is
// assembled once; its normal-equations factorization is reused across every
// right-hand side, which makes bisection over r in r +- a cheap.
//
// Solving has two phases. Alternating projections between the
// coefficient-matching affine subspace and the PSD cone product handle
// instances with healthy margin in a few hundred sweeps. Near-marginal
// instances where the two sets meet tangentially defeat plain projections
// (the gap decays like 1/sqrt(k)), so a second phase maximizes the minimum
// block eigenvalue over the affine subspace directly: that function is
// concave, a projected subgradient step with line search climbs it to the
// optimum, and the -tol eigenvalue slack turns a cleared floor into a
// certificate.
class FeasibilityContext {
 public:
  FeasibilityContext(const QuadraticModule& m, int degree)
      : module_(m), degree_(degree), bases_(gram_bases(m, degree)) {
    rows_ = monomials_up_to(m.nvars, degree);
    for (std::size_t r = 0; r < rows_.size(); ++r) row_index_.emplace(rows_[r], static_cast<int>(r));

    total_vars_ = 0;
    for (const auto& gb : bases_) {
      offsets_.push_back(total_vars_);
      total_vars_ += static_cast<int>(gb.basis.size() * gb.basis.size());
    }

    std::vector<SparseMatrix::Triplet> triplets;
    for (std::size_t b = 0; b < bases_.size(); ++b) {
      const auto& gb = bases_[b];
      const int dim = static_cast<int>(gb.basis.size());
      for (int i = 0; i < dim; ++i) {
        for (int j = 0; j < dim; ++j) {
          const int col = offsets_[b] + i * dim + j;
          for (const auto& [mono, coef] : gb.generator.terms()) {
            MultiIndex target = add(add(gb.basis[i], gb.basis[j]), mono);
            triplets.push_back({row_index_.at(target), col, to_double(coef)});
          }
        }
      }
    }
    matrix_ = SparseMatrix(static_cast<int>(rows_.size()), total_vars_, triplets);
    normal_ = PseudoInverseSolver(matrix_.gram());
  }

  int degree() const { return degree_; }
  const std::vector<GeneratorBasis>& bases() const { return bases_; }
  const std::vector<MultiIndex>& row_monomials() const { return rows_; }
  int total_vars() const { return total_vars_; }
  const QuadraticModule& module() const { return module_; }

  // Coefficient vector of f over the row monomials. Throws if deg f exceeds
  // the truncation degree.
  std::vector<double> coefficients(const Polynomial& f) const {
    if (f.nvars() != module_.nvars) throw std::invalid_argument("polynomial dimension mismatch");
    if (f.degree() > degree_)
      throw std::invalid_argument("polynomial degree exceeds truncation degree");
    std::vector<double> c(rows_.size(), 0.0);
    for (const auto& [mono, coef] : f.terms())
      c[static_cast<std::size_t>(row_index_.at(mono))] = to_double(coef);
    return c;
  }

  // Index of the constant monomial's row (first under graded-lex).
  int constant_row() const { return 0; }

  SolveResult solve(const std::vector<double>& c, const SolveOptions& opts = {}) const {
    if (opts.tol <= 0) throw std::invalid_argument("tol must be positive");
    SolveResult res;
    if (total_vars_ == 0) {
      // no blocks fit at this degree: only the zero polynomial is representable
      double l1 = 0;
      for (double v : c) l1 += std::abs(v);
      res.certified = l1 <= opts.tol;
      res.final_residual = l1;
      res.eigenvalue_floor = 0.0;
      res.certificate.degree = degree_;
      res.certificate.residual = l1;
      return res;
    }

    const double certify_tol = 0.99 * opts.tol;
    const std::size_t nrows = rows_.size();
    std::vector<double> q(static_cast<std::size_t>(total_vars_), 0.0);
    std::vector<double> y(nrows, 0.0), lam(nrows, 0.0);

    // Structural check: is c in the range of the coefficient map at all?
    {
      normal_.apply(c, lam);
      matrix_.add_transpose_multiply(lam, q);
      matrix_.multiply(q, y);
      double gap = 0;
      for (std::size_t i = 0; i < nrows; ++i) gap += std::abs(y[i] - c[i]);
      if (gap > certify_tol) {
        res.final_residual = gap;
        return res;  // unreachable coefficients; no amount of iteration helps
      }
    }

    if (opts.warm_start != nullptr) {
      if (opts.warm_start->size() != static_cast<std::size_t>(total_vars_))
        throw std::invalid_argument("warm start size mismatch");
      q = *opts.warm_start;
    } else {
      double l1 = 0;
      for (double v : c) l1 += std::abs(v);
      int monomial_count = 0;
      for (const auto& gb : bases_) monomial_count += static_cast<int>(gb.basis.size());
      const double scale = monomial_count > 0 ? l1 / monomial_count : 0.0;
      std::fill(q.begin(), q.end(), 0.0);
      for (std::size_t b = 0; b < bases_.size(); ++b) {
        const int dim = static_cast<int>(bases_[b].basis.size());
        for (int i = 0; i < dim; ++i) q[static_cast<std::size_t>(offsets_[b]) + i * dim + i] = scale;
      }
    }

    // ---- phase 1: alternating projections --------------------------------
    double best_residual = std::numeric_limits<double>::infinity();
    long best_iter = 0;
    const long ap_budget = std::min(opts.max_iter, opts.projection_cap);
    matrix_.multiply(q, y);

    for (long iter = 1; iter <= ap_budget; ++iter) {
      res.iterations = iter;

      // project onto {q : Eq = c}
      for (std::size_t i = 0; i < nrows; ++i) y[i] = c[i] - y[i];
      normal_.apply(y, lam);
      matrix_.add_transpose_multiply(lam, q);

      double min_eig = std::numeric_limits<double>::infinity();
      std::vector<EigenDecomposition> eds(bases_.size());
      for (std::size_t b = 0; b < bases_.size(); ++b) eds[b] = eigen_of_block(q, b, min_eig);

      if (min_eig >= -opts.tol) {
        matrix_.multiply(q, y);
        double resid = 0;
        for (std::size_t i = 0; i < nrows; ++i) resid += std::abs(y[i] - c[i]);
        if (resid <= certify_tol) return certified_result(res, q, resid, min_eig);
      }

      // clip to the PSD cone product
      for (std::size_t b = 0; b < bases_.size(); ++b) clip_block(q, b, eds[b]);

      matrix_.multiply(q, y);
      double resid = 0;
      for (std::size_t i = 0; i < nrows; ++i) resid += std::abs(y[i] - c[i]);
      res.final_residual = resid;
      if (resid <= certify_tol) return certified_result(res, q, resid, 0.0);

      if (resid < best_residual * (1.0 - 1e-6)) {
        best_residual = resid;
        best_iter = iter;
      } else if (iter - best_iter > opts.stall_window) {
        break;
      }
    }

    // ---- phase 2: eigenvalue ascent on the affine subspace ---------------
    // move to the affine subspace and stay on it; every step direction is
    // projected onto the null space of the coefficient map
    matrix_.multiply(q, y);
    for (std::size_t i = 0; i < nrows; ++i) y[i] = c[i] - y[i];
    normal_.apply(y, lam);
    matrix_.add_transpose_multiply(lam, q);

    std::vector<double> grad(q.size()), trial(q.size());
    double step = 1.0;
    int no_improve = 0;
    int slow_progress = 0;

    for (long it = 1; it <= opts.ascent_cap; ++it) {
      ++res.iterations;
      double min_eig;
      std::size_t worst_block;
      std::vector<double> v = min_eigenvector(q, min_eig, worst_block);
      res.eigenvalue_floor = min_eig;

      if (min_eig >= -0.999 * opts.tol) {
        matrix_.multiply(q, y);
        double resid = 0;
        for (std::size_t i = 0; i < nrows; ++i) resid += std::abs(y[i] - c[i]);
        if (resid <= certify_tol) return certified_result(res, q, resid, min_eig);
        // drifted off the subspace: re-project and re-check once
        for (std::size_t i = 0; i < nrows; ++i) y[i] = c[i] - y[i];
        normal_.apply(y, lam);
        matrix_.add_transpose_multiply(lam, q);
        continue;
      }

      // subgradient of the eigenvalue floor: vv^T on the worst block,
      // projected onto the null space of E
      std::fill(grad.begin(), grad.end(), 0.0);
      const int dim = static_cast<int>(bases_[worst_block].basis.size());
      for (int i = 0; i < dim; ++i)
        for (int j = 0; j < dim; ++j)
          grad[static_cast<std::size_t>(offsets_[worst_block]) + i * dim + j] = v[i] * v[j];
      matrix_.multiply(grad, y);
      normal_.apply(y, lam);
      matrix_.add_transpose_multiply(lam, grad, -1.0);

      double gnorm = 0;
      for (double g : grad) gnorm += g * g;
      if (gnorm < 1e-28) break;  // no usable ascent direction

      // expand-then-golden line search; the floor is concave along the ray
      auto floor_at = [&](double t) {
        for (std::size_t i = 0; i < q.size(); ++i) trial[i] = q[i] + t * grad[i];
        double f = std::numeric_limits<double>::infinity();
        for (std::size_t b = 0; b < bases_.size(); ++b) {
          const int bd = static_cast<int>(bases_[b].basis.size());
          Matrix blk(bd, bd);
          for (int i = 0; i < bd; ++i)
            for (int j = 0; j < bd; ++j) {
              double vij = trial[static_cast<std::size_t>(offsets_[b]) + i * bd + j];
              double vji = trial[static_cast<std::size_t>(offsets_[b]) + j * bd + i];
              blk(i, j) = 0.5 * (vij + vji);
            }
          if (bd > 0) f = std::min(f, jacobi_eigen(blk).min_value());
        }
        return f;
      };

      double t_hi = step;
      double f_hi = floor_at(t_hi);
      if (f_hi > min_eig) {
        for (int e = 0; e < 30; ++e) {
          double f_next = floor_at(2.0 * t_hi);
          if (f_next <= f_hi) break;
          t_hi *= 2.0;
          f_hi = f_next;
        }
      } else {
        for (int e = 0; e < 30 && f_hi <= min_eig; ++e) {
          t_hi *= 0.5;
          f_hi = floor_at(t_hi);
        }
      }

      const double gr = 0.5 * (std::sqrt(5.0) - 1.0);
      double a = 0.0, b2 = 2.0 * t_hi;
      double x1 = b2 - gr * (b2 - a), x2 = a + gr * (b2 - a);
      double f1 = floor_at(x1), f2 = floor_at(x2);
      for (int e = 0; e < 24; ++e) {
        if (f1 > f2) {
          b2 = x2;
          x2 = x1;
          f2 = f1;
          x1 = b2 - gr * (b2 - a);
          f1 = floor_at(x1);
        } else {
          a = x1;
          x1 = x2;
          f1 = f2;
          x2 = a + gr * (b2 - a);
          f2 = floor_at(x2);
        }
      }
      const double t_star = f1 > f2 ? x1 : x2;
      const double f_star = std::max(f1, f2);

      if (f_star > min_eig + 1e-17 * std::max(1.0, std::abs(min_eig))) {
        for (std::size_t i = 0; i < q.size(); ++i) q[i] += t_star * grad[i];
        step = std::max(t_star, 1e-12);
        no_improve = 0;
        // far below the floor and barely climbing: give up early
        const double deficit = -0.999 * opts.tol - f_star;
        if (deficit > 0 && (f_star - min_eig) < 0.02 * deficit) {
          if (++slow_progress >= 3) break;
        } else {
          slow_progress = 0;
        }
      } else if (++no_improve >= 3) {
        break;  // converged: the affine subspace cannot clear the floor
      }

      if (it % 16 == 0) {
        // kill accumulated drift off the affine subspace
        matrix_.multiply(q, y);
        for (std::size_t i = 0; i < nrows; ++i) y[i] = c[i] - y[i];
        normal_.apply(y, lam);
        matrix_.add_transpose_multiply(lam, q);
      }
    }

    // final certification attempt at the ascent point
    {
      double min_eig;
      std::size_t worst_block;
      min_eigenvector(q, min_eig, worst_block);
      res.eigenvalue_floor = min_eig;
      if (min_eig >= -opts.tol) {
        matrix_.multiply(q, y);
        double resid = 0;
        for (std::size_t i = 0; i < nrows; ++i) resid += std::abs(y[i] - c[i]);
        if (resid <= certify_tol) return certified_result(res, q, resid, min_eig);
      }
    }
    if (!std::isfinite(res.final_residual)) res.final_residual = best_residual;
    return res;
  }

  // Exact residual for a final certificate; cheap enough for returned
  // results, too slow to run inside the iteration loop.
  void finalize(GramCertificate& cert, const Polynomial& f) const {
    cert.residual = to_double(verify_certificate(cert, f, module_).residual_exact);
  }

 private:
  EigenDecomposition eigen_of_block(const std::vector<double>& q, std::size_t b,
                                    double& min_eig) const {
    const int dim = static_cast<int>(bases_[b].basis.size());
    Matrix blk(dim, dim);
    for (int i = 0; i < dim; ++i)
      for (int j = 0; j < dim; ++j) {
        double vij = q[static_cast<std::size_t>(offsets_[b]) + i * dim + j];
        double vji = q[static_cast<std::size_t>(offsets_[b]) + j * dim + i];
        blk(i, j) = 0.5 * (vij + vji);
      }
    EigenDecomposition ed = jacobi_eigen(blk);
    if (dim > 0) min_eig = std::min(min_eig, ed.min_value());
    return ed;
  }

  void clip_block(std::vector<double>& q, std::size_t b, const EigenDecomposition& ed) const {
    const int dim = static_cast<int>(bases_[b].basis.size());
    Matrix rebuilt(dim, dim);
    for (int k = 0; k < dim; ++k) {
      double lamk = ed.values[k];
      if (lamk <= 0.0) continue;
      for (int i = 0; i < dim; ++i) {
        double w = lamk * ed.vectors(i, k);
        if (w == 0.0) continue;
        for (int j = i; j < dim; ++j) rebuilt(i, j) += w * ed.vectors(j, k);
      }
    }
    for (int i = 0; i < dim; ++i)
      for (int j = 0; j < dim; ++j)
        q[static_cast<std::size_t>(offsets_[b]) + i * dim + j] = i <= j ? rebuilt(i, j) : rebuilt(j, i);
  }

  // Eigenvalue floor across blocks and the eigenvector attaining it.
  std::vector<double> min_eigenvector(const std::vector<double>& q, double& min_eig,
                                      std::size_t& worst_block) const {
    min_eig = std::numeric_limits<double>::infinity();
    worst_block = 0;
    std::vector<double> v;
    for (std::size_t b = 0; b < bases_.size(); ++b) {
      double local = std::numeric_limits<double>::infinity();
      EigenDecomposition ed = eigen_of_block(q, b, local);
      if (local < min_eig) {
        min_eig = local;
        worst_block = b;
        const int dim = static_cast<int>(bases_[b].basis.size());
        v.assign(static_cast<std::size_t>(dim), 0.0);
        for (int i = 0; i < dim; ++i) v[static_cast<std::size_t>(i)] = ed.vectors(i, 0);
      }
    }
    if (v.empty()) min_eig = 0.0;
    return v;
  }

  SolveResult& certified_result(SolveResult& res, const std::vector<double>& q, double resid,
                                double floor) const {
    res.certified = true;
    res.final_residual = resid;
    res.eigenvalue_floor = floor;
    res.solution = q;
    res.certificate = extract_certificate(q, resid);
    return res;
  }

  GramCertificate extract_certificate(const std::vector<double>& q, double float_residual) const {
    GramCertificate cert;
    cert.degree = degree_;
    cert.residual = float_residual;
    for (std::size_t b = 0; b < bases_.size(); ++b) {
      const int dim = static_cast<int>(bases_[b].basis.size());
      GramBlock block;
      block.generator_index = bases_[b].generator_index;
      block.basis = bases_[b].basis;
      block.q = Matrix(dim, dim);
      for (int i = 0; i < dim; ++i)
        for (int j = 0; j < dim; ++j) {
          double vij = q[static_cast<std::size_t>(offsets_[b]) + i * dim + j];
          double vji = q[static_cast<std::size_t>(offsets_[b]) + j * dim + i];
          block.q(i, j) = 0.5 * (vij + vji);
        }
      cert.blocks.push_back(std::move(block));
    }
    return cert;
  }

  QuadraticModule module_;
  int degree_;
  std::vector<GeneratorBasis> bases_;
  std::vector<int> offsets_;
  int total_vars_ = 0;
  std::vector<MultiIndex> rows_;
  std::map<MultiIndex, int, GradedLexLess> row_index_;
  SparseMatrix matrix_;
  PseudoInverseSolver normal_;
};

// -- public membership surface ------------------------------------------

struct MembershipStatus {
  enum class State { certified, unknown };
  State state = State::unknown;
  std::optional<GramCertificate> certificate;
  long iterations = 0;
  double final_residual = std::numeric_limits<double>::infinity();

  bool is_certified() const { return state == State::certified; }
};

// Truncated membership f in M_d. A certified result carries an audited
// certificate; unknown is not a disproof.
inline MembershipStatus membership(const Polynomial& f, const QuadraticModule& m, int d,
                                   double tol = defaults::psd_tol,
                                   long max_iter = defaults::max_iterations) {
  FeasibilityContext ctx(m, d);
  SolveOptions opts;
  opts.tol = tol;
  opts.max_iter = max_iter;
  SolveResult r = ctx.solve(ctx.coefficients(f), opts);
  MembershipStatus st;
  st.iterations = r.iterations;
  st.final_residual = r.final_residual;
  if (r.certified) {
    ctx.finalize(r.certificate, f);
    st.state = MembershipStatus::State::certified;
    st.certificate = std::move(r.certificate);
  }
  return st;
}

}  // namespace conekit
