#include <catch2/catch_amalgamated.hpp>

#include "support/helpers.hpp"

using namespace conekit;
using testsupport::poly;

namespace {

SampleSet points(std::vector<Point> pts) {
  SampleSet s;
  s.points = std::move(pts);
  s.box = Box{{-1.0, 1.0}};
  return s;
}

}  // namespace

TEST_CASE("rho is the exact sampled sup") {
  CHECK(rho(poly("x1", 1), points({{-1.0}, {0.5}})) == 1.0);
  CHECK(rho(poly("x1 + 1", 1), points({{-1.0}, {0.5}})) == 1.5);
  CHECK(rho(Polynomial(1), points({{-1.0}, {0.5}})) == 0.0);
  CHECK_THROWS_AS(rho(poly("x1", 1), SampleSet{}), std::invalid_argument);
}

TEST_CASE("sampled lower bounds pick up injected corners") {
  QuadraticModule m(1, {poly("1 - x1^2", 1)});
  auto d = sample_kset(m, Box{{-1.0, 1.0}}, 100, 1);
  CHECK(seminorm_lb(poly("x1", 1), m, d) == 1.0);
  CHECK(seminorm_lb(poly("x1^2", 1), m, d) == 1.0);
  CHECK(seminorm_lb(Polynomial::constant(1, Rational(1)), m, d) == 1.0);
}

TEST_CASE("certified upper bounds match the hand identities at degree 2") {
  QuadraticModule m(1, {poly("1 - x1^2", 1)});
  SeminormOptions opts;
  opts.witness = archimedean_witness(m);

  auto ub_x = seminorm_ub(poly("x1", 1), m, 2, opts);
  REQUIRE(ub_x.finite);
  CHECK(ub_x.value >= 1.0 - 1e-9);
  CHECK(ub_x.value <= 1.0 + 1e-6);
  CHECK(ub_x.certificate_plus->residual <= 1e-8);
  CHECK(ub_x.certificate_minus->residual <= 1e-8);

  auto ub_x2 = seminorm_ub(poly("x1^2", 1), m, 2, opts);
  REQUIRE(ub_x2.finite);
  CHECK(ub_x2.value >= 1.0 - 1e-9);
  CHECK(ub_x2.value <= 1.0 + 1e-6);
}

TEST_CASE("constants have their absolute value as seminorm") {
  QuadraticModule m(1, {poly("1 - x1^2", 1)});
  auto ub = seminorm_ub(poly("5", 1), m, 2);
  REQUIRE(ub.finite);
  CHECK(ub.value == Catch::Approx(5.0).margin(1e-6));
}

TEST_CASE("non-archimedean modules are refused") {
  QuadraticModule m(1, {poly("x1", 1)});
  CHECK_THROWS_AS(seminorm_ub(poly("x1", 1), m, 4), non_archimedean_error);
}

TEST_CASE("interval enclosure is exact on the certificated instances") {
  QuadraticModule m(1, {poly("1 - x1^2", 1)});
  auto d = sample_kset(m, Box{{-1.0, 1.0}}, 200, 1);
  SeminormOptions opts;
  opts.witness = archimedean_witness(m);

  auto iv = seminorm_interval(poly("x1", 1), m, 2, d, opts);
  CHECK(iv.lb == 1.0);
  CHECK(iv.ub >= iv.lb - 1e-9);
  CHECK(iv.gap() <= 1e-6);
}

TEST_CASE("interval for x^2 - x over the unit interval at degree 4") {
  // over K = [0,1] the sup of |x^2 - x| is 1/4, attained at the midpoint
  QuadraticModule m(1, {poly("1 - x1^2", 1), poly("x1", 1)});
  auto d = sample_kset(m, Box{{0.0, 1.0}}, 500, 7);
  SeminormOptions opts;
  opts.witness = archimedean_witness(m);
  auto iv = seminorm_interval(poly("x1^2 - x1", 1), m, 4, d, opts);

  const double oracle = testsupport::grid_sup(poly("x1^2 - x1", 1), Box{{0.0, 1.0}}, 1001);
  CHECK(oracle == Catch::Approx(0.25).margin(1e-6));
  CHECK(iv.lb == Catch::Approx(0.25).margin(1e-9));  // midpoint is injected
  CHECK(iv.ub >= 0.25 - 1e-9);
  CHECK(iv.gap() <= 0.05);
}

TEST_CASE("the zero polynomial has the zero interval") {
  QuadraticModule m(1, {poly("1 - x1^2", 1)});
  auto d = sample_kset(m, Box{{-1.0, 1.0}}, 50, 1);
  auto iv = seminorm_interval(Polynomial(1), m, 2, d);
  CHECK(iv.lb == 0.0);
  CHECK(iv.ub == 0.0);
}

TEST_CASE("weak duality and non-negativity on random polynomials") {
  QuadraticModule m(1, {poly("1 - x1^2", 1)});
  auto d = sample_kset(m, Box{{-1.0, 1.0}}, 300, 3);
  SeminormOptions opts;
  opts.witness = archimedean_witness(m);

  std::mt19937_64 rng(23);
  for (int trial = 0; trial < 8; ++trial) {
    auto a = testsupport::random_polynomial(rng, 1, 4);
    auto iv = seminorm_interval(a, m, 4, d, opts);
    CHECK(iv.lb >= 0.0);
    REQUIRE(iv.ub_finite);
    CHECK(iv.ub >= 0.0);
    CHECK(iv.lb <= iv.ub + 1e-9);
  }
}

TEST_CASE("upper bounds shrink with the truncation degree") {
  QuadraticModule m(1, {poly("1 - x1^2", 1)});
  SeminormOptions opts;
  opts.witness = archimedean_witness(m);
  std::mt19937_64 rng(29);
  for (int trial = 0; trial < 5; ++trial) {
    auto a = testsupport::random_polynomial(rng, 1, 4);
    auto u4 = seminorm_ub(a, m, 4, opts);
    auto u6 = seminorm_ub(a, m, 6, opts);
    REQUIRE(u4.finite);
    REQUIRE(u6.finite);
    CHECK(u6.value <= u4.value + 1e-6);
  }
}

TEST_CASE("seminorm axioms hold on the bounds") {
  QuadraticModule m(1, {poly("1 - x1^2", 1)});
  auto d = sample_kset(m, Box{{-1.0, 1.0}}, 300, 5);
  SeminormOptions opts;
  opts.witness = archimedean_witness(m);

  std::mt19937_64 rng(37);
  for (int trial = 0; trial < 5; ++trial) {
    auto a = testsupport::random_polynomial(rng, 1, 3);
    auto b = testsupport::random_polynomial(rng, 1, 3);
    Rational lam = testsupport::random_scalar(rng);

    // lb side: exact rational sup-norm axioms
    CHECK(rho_exact(a + b, d) <= rho_exact(a, d) + rho_exact(b, d));
    CHECK(rho_exact(a * b, d) <= rho_exact(a, d) * rho_exact(b, d));
    CHECK(rho_exact(lam * a, d) == rational_abs(lam) * rho_exact(a, d));

    // ub side: within solver tolerance
    auto ua = seminorm_ub(a, m, 4, opts);
    auto ub = seminorm_ub(b, m, 4, opts);
    auto us = seminorm_ub(a + b, m, 4, opts);
    auto up = seminorm_ub(a * b, m, 8, opts);
    auto ul = seminorm_ub(lam * a, m, 4, opts);
    REQUIRE((ua.finite && ub.finite && us.finite && up.finite && ul.finite));
    CHECK(us.value <= ua.value + ub.value + 1e-4);
    CHECK(up.value <= ua.value * ub.value + 1e-4);
    double lmag = std::abs(to_double(lam));
    CHECK(ul.value <= lmag * ua.value + 1e-4);
    CHECK(ul.value >= lmag * rho(a, d) - 1e-4);
  }
}

TEST_CASE("degree-starved instances return the infinite sentinel") {
  // at degree 3 the x^3 coefficient is structurally unreachable
  QuadraticModule m(1, {poly("1 - x1^2", 1)});
  SeminormOptions opts;
  opts.witness = archimedean_witness(m);
  auto ub = seminorm_ub(poly("x1^3", 1), m, 3, opts);
  CHECK_FALSE(ub.finite);
  CHECK(std::isinf(ub.value));
}

TEST_CASE("truncation degree below deg a is rejected") {
  QuadraticModule m(1, {poly("1 - x1^2", 1)});
  CHECK_THROWS_AS(seminorm_ub(poly("x1^4", 1), m, 2), std::invalid_argument);
}
