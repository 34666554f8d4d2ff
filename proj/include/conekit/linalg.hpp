#pragma once

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>
#include <vector>

namespace conekit {

// Dense row-major matrix. Sized for desk-scale Gram blocks (tens of rows).
class Matrix {
 public:
  Matrix() = default;
  Matrix(int rows, int cols) : rows_(rows), cols_(cols), data_(static_cast<std::size_t>(rows) * cols, 0.0) {
    if (rows < 0 || cols < 0) throw std::invalid_argument("negative matrix dimension");
  }

  static Matrix identity(int n) {
    Matrix m(n, n);
    for (int i = 0; i < n; ++i) m(i, i) = 1.0;
    return m;
  }

  int rows() const { return rows_; }
  int cols() const { return cols_; }

  double& operator()(int i, int j) { return data_[static_cast<std::size_t>(i) * cols_ + j]; }
  double operator()(int i, int j) const { return data_[static_cast<std::size_t>(i) * cols_ + j]; }

  const std::vector<double>& data() const { return data_; }
  std::vector<double>& data() { return data_; }

  double frobenius() const {
    double s = 0;
    for (double v : data_) s += v * v;
    return std::sqrt(s);
  }

  double max_asymmetry() const {
    double m = 0;
    for (int i = 0; i < rows_; ++i)
      for (int j = i + 1; j < cols_; ++j) m = std::max(m, std::abs((*this)(i, j) - (*this)(j, i)));
    return m;
  }

  bool is_square() const { return rows_ == cols_; }

 private:
  int rows_ = 0, cols_ = 0;
  std::vector<double> data_;
};

inline void require_symmetric(const Matrix& a, double tol = 1e-12) {
  if (!a.is_square()) throw std::invalid_argument("matrix is not square");
  double scale = std::max(1.0, a.frobenius());
  if (a.max_asymmetry() > tol * scale) throw std::invalid_argument("matrix is not symmetric");
}

struct EigenDecomposition {
  std::vector<double> values;  // ascending
  Matrix vectors;              // column k pairs with values[k]

  double min_value() const { return values.empty() ? 0.0 : values.front(); }
};

// Cyclic Jacobi rotations on a symmetric matrix. Sweeps until the
// off-diagonal Frobenius norm falls below 1e-12 times the matrix norm.
inline EigenDecomposition jacobi_eigen(const Matrix& a) {
  require_symmetric(a);
  const int n = a.rows();
  Matrix w = a;
  Matrix v = Matrix::identity(n);
  const double target = 1e-12 * std::max(a.frobenius(), 1e-300);

  auto off_norm = [&]() {
    double s = 0;
    for (int p = 0; p < n; ++p)
      for (int q = p + 1; q < n; ++q) s += 2.0 * w(p, q) * w(p, q);
    return std::sqrt(s);
  };

  const int max_sweeps = 64;
  for (int sweep = 0; sweep < max_sweeps && off_norm() > target; ++sweep) {
    for (int p = 0; p < n; ++p) {
      for (int q = p + 1; q < n; ++q) {
        double apq = w(p, q);
        if (std::abs(apq) < 1e-300) continue;
        double theta = (w(q, q) - w(p, p)) / (2.0 * apq);
        double t = (theta >= 0 ? 1.0 : -1.0) / (std::abs(theta) + std::sqrt(theta * theta + 1.0));
        double c = 1.0 / std::sqrt(t * t + 1.0);
        double s = t * c;
        double tau = s / (1.0 + c);

        double app = w(p, p), aqq = w(q, q);
        w(p, p) = app - t * apq;
        w(q, q) = aqq + t * apq;
        w(p, q) = w(q, p) = 0.0;
        for (int r = 0; r < n; ++r) {
          if (r != p && r != q) {
            double arp = w(r, p), arq = w(r, q);
            w(r, p) = w(p, r) = arp - s * (arq + tau * arp);
            w(r, q) = w(q, r) = arq + s * (arp - tau * arq);
          }
          double vrp = v(r, p), vrq = v(r, q);
          v(r, p) = vrp - s * (vrq + tau * vrp);
          v(r, q) = vrq + s * (vrp - tau * vrq);
        }
      }
    }
  }

  EigenDecomposition ed;
  ed.values.resize(n);
  for (int i = 0; i < n; ++i) ed.values[i] = w(i, i);
  std::vector<int> order(n);
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(),
                   [&](int i, int j) { return ed.values[i] < ed.values[j]; });
  std::vector<double> sorted(n);
  Matrix pv(n, n);
  for (int k = 0; k < n; ++k) {
    sorted[k] = ed.values[order[k]];
    for (int r = 0; r < n; ++r) pv(r, k) = v(r, order[k]);
  }
  ed.values = std::move(sorted);
  ed.vectors = std::move(pv);
  return ed;
}

// Metric projection onto the PSD cone: clip negative eigenvalues, rebuild.
inline Matrix project_psd(const Matrix& a) {
  EigenDecomposition ed = jacobi_eigen(a);
  const int n = a.rows();
  Matrix out(n, n);
  for (int k = 0; k < n; ++k) {
    double lam = std::max(ed.values[k], 0.0);
    if (lam == 0.0) continue;
    for (int i = 0; i < n; ++i) {
      double vik = ed.vectors(i, k);
      if (vik == 0.0) continue;
      double w = lam * vik;
      for (int j = i; j < n; ++j) out(i, j) += w * ed.vectors(j, k);
    }
  }
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j) out(j, i) = out(i, j);
  return out;
}

// Compressed sparse rows; assembled once from triplets, then read-only.
class SparseMatrix {
 public:
  struct Triplet {
    int row, col;
    double value;
  };

  SparseMatrix() = default;
  SparseMatrix(int rows, int cols, std::vector<Triplet> triplets) : rows_(rows), cols_(cols) {
    std::sort(triplets.begin(), triplets.end(), [](const Triplet& a, const Triplet& b) {
      return a.row != b.row ? a.row < b.row : a.col < b.col;
    });
    row_ptr_.assign(static_cast<std::size_t>(rows) + 1, 0);
    for (std::size_t i = 0; i < triplets.size();) {
      std::size_t j = i;
      double sum = 0;
      while (j < triplets.size() && triplets[j].row == triplets[i].row &&
             triplets[j].col == triplets[i].col) {
        sum += triplets[j].value;
        ++j;
      }
      if (sum != 0.0) {
        col_.push_back(triplets[i].col);
        val_.push_back(sum);
        ++row_ptr_[static_cast<std::size_t>(triplets[i].row) + 1];
      }
      i = j;
    }
    for (int r = 0; r < rows; ++r) row_ptr_[r + 1] += row_ptr_[r];
  }

  int rows() const { return rows_; }
  int cols() const { return cols_; }
  bool row_empty(int r) const { return row_ptr_[r] == row_ptr_[r + 1]; }

  // y = A x
  void multiply(const std::vector<double>& x, std::vector<double>& y) const {
    for (int r = 0; r < rows_; ++r) {
      double s = 0;
      for (int k = row_ptr_[r]; k < row_ptr_[r + 1]; ++k) s += val_[k] * x[col_[k]];
      y[r] = s;
    }
  }

  // x += scale * A^T y
  void add_transpose_multiply(const std::vector<double>& y, std::vector<double>& x,
                              double scale = 1.0) const {
    for (int r = 0; r < rows_; ++r) {
      double yr = scale * y[r];
      if (yr == 0.0) continue;
      for (int k = row_ptr_[r]; k < row_ptr_[r + 1]; ++k) x[col_[k]] += val_[k] * yr;
    }
  }

  // Dense A A^T (rows x rows), for the normal-equations factorization.
  Matrix gram() const {
    Matrix g(rows_, rows_);
    for (int r = 0; r < rows_; ++r) {
      for (int r2 = r; r2 < rows_; ++r2) {
        double s = 0;
        int k = row_ptr_[r], k2 = row_ptr_[r2];
        while (k < row_ptr_[r + 1] && k2 < row_ptr_[r2 + 1]) {
          if (col_[k] < col_[k2])
            ++k;
          else if (col_[k] > col_[k2])
            ++k2;
          else {
            s += val_[k] * val_[k2];
            ++k;
            ++k2;
          }
        }
        g(r, r2) = g(r2, r) = s;
      }
    }
    return g;
  }

 private:
  int rows_ = 0, cols_ = 0;
  std::vector<int> row_ptr_;
  std::vector<int> col_;
  std::vector<double> val_;
};

// Solves (A A^T) y = r through a thresholded eigendecomposition, so rank
// deficiency in the constraint rows is harmless.
class PseudoInverseSolver {
 public:
  PseudoInverseSolver() = default;
  explicit PseudoInverseSolver(const Matrix& gram) : ed_(jacobi_eigen(gram)) {
    double lmax = ed_.values.empty() ? 0.0 : std::abs(ed_.values.back());
    threshold_ = std::max(lmax, 1.0) * 1e-13;
  }

  void apply(const std::vector<double>& r, std::vector<double>& y) const {
    const int n = ed_.vectors.rows();
    std::vector<double> t(n, 0.0);
    for (int k = 0; k < n; ++k) {
      double lam = ed_.values[k];
      if (std::abs(lam) <= threshold_) continue;
      double dot = 0;
      for (int i = 0; i < n; ++i) dot += ed_.vectors(i, k) * r[i];
      t[k] = dot / lam;
    }
    for (int i = 0; i < n; ++i) {
      double s = 0;
      for (int k = 0; k < n; ++k) s += ed_.vectors(i, k) * t[k];
      y[i] = s;
    }
  }

 private:
  EigenDecomposition ed_;
  double threshold_ = 0.0;
};

}  // namespace conekit
