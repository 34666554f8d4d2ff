#include <catch2/catch_amalgamated.hpp>

#include "support/helpers.hpp"

using namespace conekit;

namespace {

Matrix sym(std::initializer_list<std::initializer_list<double>> rows) {
  Matrix m(static_cast<int>(rows.size()), static_cast<int>(rows.begin()->size()));
  int i = 0;
  for (const auto& r : rows) {
    int j = 0;
    for (double v : r) m(i, j++) = v;
    ++i;
  }
  return m;
}

Matrix random_symmetric(std::mt19937_64& rng, int n, double scale = 2.0) {
  std::uniform_real_distribution<double> u(-scale, scale);
  Matrix m(n, n);
  for (int i = 0; i < n; ++i)
    for (int j = i; j < n; ++j) m(i, j) = m(j, i) = u(rng);
  return m;
}

}  // namespace

TEST_CASE("jacobi eigenvalues match characteristic-polynomial roots") {
  // oracle: lambda^2 - tr*lambda + det = 0 solved by the quadratic formula
  const double tr = 1.25, det = 1.0 * 0.25 - 0.5 * 0.5;
  const double disc = std::sqrt(tr * tr - 4 * det);
  const double lo = (tr - disc) / 2, hi = (tr + disc) / 2;
  REQUIRE(lo == Catch::Approx(0.0).margin(1e-15));
  REQUIRE(hi == Catch::Approx(1.25));

  auto ed = jacobi_eigen(sym({{1.0, 0.5}, {0.5, 0.25}}));
  CHECK(ed.values[0] == Catch::Approx(lo).margin(1e-12));
  CHECK(ed.values[1] == Catch::Approx(hi).margin(1e-12));
}

TEST_CASE("jacobi handles identity and diagonal matrices") {
  auto ed = jacobi_eigen(Matrix::identity(3));
  for (double v : ed.values) CHECK(v == Catch::Approx(1.0));

  auto ed2 = jacobi_eigen(sym({{-1.0, 0.0}, {0.0, 2.0}}));
  CHECK(ed2.values[0] == Catch::Approx(-1.0));
  CHECK(ed2.values[1] == Catch::Approx(2.0));
}

TEST_CASE("jacobi reconstructs and stays orthogonal on random input") {
  std::mt19937_64 rng(5);
  for (int n : {1, 2, 3, 5, 8, 12}) {
    for (int rep = 0; rep < 5; ++rep) {
      Matrix a = random_symmetric(rng, n);
      auto ed = jacobi_eigen(a);
      REQUIRE(static_cast<int>(ed.values.size()) == n);
      for (int k = 0; k + 1 < n; ++k) CHECK(ed.values[k] <= ed.values[k + 1]);

      Matrix recon(n, n);
      for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) {
          double s = 0;
          for (int k = 0; k < n; ++k) s += ed.vectors(i, k) * ed.values[k] * ed.vectors(j, k);
          recon(i, j) = s;
        }
      double err = 0, orth = 0;
      for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) {
          err += (recon(i, j) - a(i, j)) * (recon(i, j) - a(i, j));
          double dot = 0;
          for (int k = 0; k < n; ++k) dot += ed.vectors(k, i) * ed.vectors(k, j);
          orth += (dot - (i == j ? 1.0 : 0.0)) * (dot - (i == j ? 1.0 : 0.0));
        }
      CHECK(std::sqrt(err) <= 1e-10 * std::max(1.0, a.frobenius()));
      CHECK(std::sqrt(orth) <= 1e-10);
    }
  }
}

TEST_CASE("jacobi rejects asymmetric input") {
  Matrix bad(2, 2);
  bad(0, 1) = 1.0;
  CHECK_THROWS_AS(jacobi_eigen(bad), std::invalid_argument);
  CHECK_THROWS_AS(jacobi_eigen(Matrix(2, 3)), std::invalid_argument);
}

TEST_CASE("psd projection clips negative eigenvalues") {
  Matrix p = project_psd(sym({{-1.0, 0.0}, {0.0, 2.0}}));
  CHECK(p(0, 0) == Catch::Approx(0.0).margin(1e-14));
  CHECK(p(1, 1) == Catch::Approx(2.0));

  // [[0,1],[1,0]] has eigenpairs (+-1, (1,+-1)/sqrt 2); clipping -1 leaves
  // the rank-one average [[.5,.5],[.5,.5]]
  Matrix q = project_psd(sym({{0.0, 1.0}, {1.0, 0.0}}));
  for (int i = 0; i < 2; ++i)
    for (int j = 0; j < 2; ++j) CHECK(q(i, j) == Catch::Approx(0.5).margin(1e-14));
}

TEST_CASE("psd projection is idempotent and metric") {
  std::mt19937_64 rng(11);
  for (int rep = 0; rep < 10; ++rep) {
    int n = 2 + rep % 4;
    Matrix a = random_symmetric(rng, n);
    Matrix p = project_psd(a);
    CHECK(jacobi_eigen(p).min_value() >= -1e-12);

    Matrix pp = project_psd(p);
    double diff = 0;
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j) diff = std::max(diff, std::abs(pp(i, j) - p(i, j)));
    CHECK(diff <= 1e-12 * std::max(1.0, p.frobenius()));

    // no random PSD point beats the projection
    for (int probe = 0; probe < 8; ++probe) {
      Matrix b = random_symmetric(rng, n);
      Matrix s(n, n);  // b^T b is PSD
      for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) {
          double v = 0;
          for (int k = 0; k < n; ++k) v += b(k, i) * b(k, j);
          s(i, j) = v;
        }
      double dp = 0, ds = 0;
      for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) {
          dp += (a(i, j) - p(i, j)) * (a(i, j) - p(i, j));
          ds += (a(i, j) - s(i, j)) * (a(i, j) - s(i, j));
        }
      CHECK(dp <= ds + 1e-12);
    }
  }
}

TEST_CASE("pseudo-inverse solver tolerates rank deficiency") {
  // rank-1 gram matrix: solve returns the least-squares component
  Matrix g = sym({{1.0, 1.0}, {1.0, 1.0}});
  PseudoInverseSolver s(g);
  std::vector<double> r{2.0, 2.0}, y(2);
  s.apply(r, y);
  CHECK(y[0] + y[1] == Catch::Approx(2.0).margin(1e-12));
}
