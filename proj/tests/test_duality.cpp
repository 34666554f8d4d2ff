#include <catch2/catch_amalgamated.hpp>

#include "support/helpers.hpp"

using namespace conekit;
using testsupport::poly;

TEST_CASE("moment pairing matches hand values") {
  auto l = point_evaluation(Point{0.5}, 1);
  CHECK(apply(l, poly("x1^2", 1)) == Catch::Approx(0.25));
  CHECK(apply(l, poly("1", 1)) == Catch::Approx(1.0));
  CHECK(l.unit_mass() == Catch::Approx(1.0));

  MomentFunctional sparse;
  sparse.nvars = 1;
  sparse.degree = 2;
  for (const auto& m : monomials_up_to(1, 2)) sparse.moments[m] = 0.0;
  sparse.moments[MultiIndex{0}] = 1.0;
  CHECK(apply(sparse, poly("x1", 1)) == 0.0);

  CHECK_THROWS_AS(apply(l, poly("x1^4", 1)), std::invalid_argument);
}

TEST_CASE("point evaluations are moment vectors of powers") {
  auto l0 = point_evaluation(Point{0.0}, 1);
  CHECK(l0.moments.at(MultiIndex{0}) == 1.0);
  CHECK(l0.moments.at(MultiIndex{1}) == 0.0);
  CHECK(l0.moments.at(MultiIndex{2}) == 0.0);

  auto l = point_evaluation(Point{0.5}, 1);
  CHECK(l.moments.at(MultiIndex{0}) == 1.0);
  CHECK(l.moments.at(MultiIndex{1}) == 0.5);
  CHECK(l.moments.at(MultiIndex{2}) == 0.25);

  auto l2 = point_evaluation(Point{1.0, -1.0}, 1);
  CHECK(apply(l2, poly("x*y", 2)) == Catch::Approx(-1.0));
}

TEST_CASE("moment and localizing matrices match hand values") {
  auto l = point_evaluation(Point{0.5}, 1);
  Matrix mm = moment_matrix(l, Polynomial::constant(1, Rational(1)), 1);
  REQUIRE(mm.rows() == 2);
  CHECK(mm(0, 0) == Catch::Approx(1.0));
  CHECK(mm(0, 1) == Catch::Approx(0.5));
  CHECK(mm(1, 1) == Catch::Approx(0.25));
  auto ed = jacobi_eigen(mm);
  CHECK(ed.min_value() >= -1e-12);           // PSD
  CHECK(ed.values[0] <= 1e-12);              // rank one

  auto l2 = point_evaluation(Point{2.0}, 1);
  Matrix loc = moment_matrix(l2, poly("1 - x1^2", 1), 1);
  REQUIRE(loc.rows() == 1);
  CHECK(loc(0, 0) == Catch::Approx(-3.0));

  MomentFunctional unit;
  unit.nvars = 1;
  unit.degree = 2;
  for (const auto& m : monomials_up_to(1, 2)) unit.moments[m] = 0.0;
  unit.moments[MultiIndex{0}] = 1.0;
  Matrix mm2 = moment_matrix(unit, Polynomial::constant(1, Rational(1)), 1);
  CHECK(mm2(0, 0) == Catch::Approx(1.0));
  CHECK(mm2(1, 1) == Catch::Approx(0.0).margin(1e-15));
  CHECK(jacobi_eigen(mm2).min_value() >= -1e-12);
}

TEST_CASE("positivity on the truncated cone follows the point location") {
  QuadraticModule m(1, {poly("1 - x1^2", 1)});
  CHECK(is_positive_on(point_evaluation(Point{0.5}, 1), m, 1));
  CHECK_FALSE(is_positive_on(point_evaluation(Point{2.0}, 1), m, 1));

  auto mix = convex_combination({Point{-1.0}, Point{1.0}}, {0.5, 0.5}, 1);
  CHECK(is_positive_on(mix, m, 1));
}

TEST_CASE("the continuity bound holds with the certified seminorm") {
  QuadraticModule m(1, {poly("1 - x1^2", 1)});
  auto l = point_evaluation(Point{0.5}, 2);
  auto report = continuity_check(l, m, {poly("x1", 1), poly("1", 1)}, 2);
  REQUIRE(report.entries.size() == 2);
  CHECK(report.all_ok);
  CHECK(report.entries[0].value == Catch::Approx(0.5));
  CHECK(report.entries[0].bound >= 1.0 - 1e-9);

  auto mix = convex_combination({Point{-1.0}, Point{1.0}}, {0.5, 0.5}, 2);
  auto report2 = continuity_check(mix, m, {poly("x1", 1)}, 2);
  CHECK(report2.all_ok);
  CHECK(report2.entries[0].value == Catch::Approx(0.0).margin(1e-15));

  auto outside = point_evaluation(Point{2.0}, 2);
  CHECK_THROWS_AS(continuity_check(outside, m, {poly("x1", 1)}, 2), std::invalid_argument);
}

TEST_CASE("separation finds negative witnesses and refuses PSD inputs") {
  QuadraticModule m(1, {poly("1 - x1^2", 1)});
  auto d = sample_kset(m, Box{{-1.0, 1.0}}, 200, 1);

  auto w = separate(poly("x1", 1), m, d);
  REQUIRE(w.has_value());
  CHECK((*w)[0] == Catch::Approx(-1.0).margin(1e-6));
  CHECK(poly("x1", 1).eval(*w) <= -0.999);

  CHECK_FALSE(separate(poly("x1^2", 1), m, d).has_value());

  auto w2 = separate(poly("1 - 2*x1^2", 1), m, d);
  REQUIRE(w2.has_value());
  CHECK(std::abs((*w2)[0]) == Catch::Approx(1.0).margin(1e-6));
  CHECK(poly("1 - 2*x1^2", 1).eval(*w2) == Catch::Approx(-1.0).margin(1e-5));
}

TEST_CASE("separation witnesses stay inside K") {
  QuadraticModule m(1, {poly("1 - x1^2", 1), poly("x1", 1)});
  auto d = sample_kset(m, Box{{0.0, 1.0}}, 200, 2);
  auto w = separate(poly("1/4 - x1", 1), m, d);  // negative on (1/4, 1]
  REQUIRE(w.has_value());
  CHECK(kset_contains(m, *w, 0.0));
  CHECK(poly("1/4 - x1", 1).eval(*w) == Catch::Approx(-0.75).margin(1e-5));
}

TEST_CASE("closure verdicts separate the three outcomes") {
  QuadraticModule m(1, {poly("1 - x1^2", 1)});

  auto refuted = closure_membership(poly("x1", 1), m, &m);
  CHECK(refuted.kind == ClosureVerdict::Kind::not_in_closure);
  REQUIRE(refuted.witness.has_value());
  CHECK(kset_contains(m, *refuted.witness, 0.0));
  CHECK(refuted.witness_value <= -0.999);
  CHECK(refuted.eps_to_degree.empty());

  ClosureOptions copts;
  copts.eps_grid = {0.1, 0.01};
  copts.d_max = 4;
  auto inside = closure_membership(poly("x1^2", 1), m, &m, copts);
  CHECK(inside.kind == ClosureVerdict::Kind::in_closure);
  REQUIRE(inside.eps_to_degree.size() == 2);
  CHECK_FALSE(inside.witness.has_value());
  for (const auto& cert : inside.certificates) CHECK(cert.residual <= 1e-8);

  // a non-negative function whose eps-shift is too small for the degree cap
  // lands in the honest third verdict
  ClosureOptions tight;
  tight.eps_grid = {1e-9};
  tight.d_max = 6;
  auto motzkin = poly("x^4*y^2 + x^2*y^4 - 3*x^2*y^2 + 1", 2);
  QuadraticModule box(2, {poly("1 - x^2", 2), poly("1 - y^2", 2)},
                      QuadraticModule::Kind::preordering);
  auto unknown = closure_membership(motzkin, box, nullptr, tight);
  CHECK(unknown.kind == ClosureVerdict::Kind::unknown);
  CHECK_FALSE(unknown.witness.has_value());
}

TEST_CASE("closure refuses an empty sampled intersection") {
  QuadraticModule m(1, {poly("x1", 1)});
  QuadraticModule t(1, {poly("-1 - x1", 1)});
  CHECK_THROWS_AS(closure_membership(poly("x1", 1), m, &t), empty_set_error);
}

TEST_CASE("multiplicativity defect distinguishes points from mixtures") {
  auto point = point_evaluation(Point{0.5}, 2);
  std::vector<std::pair<Polynomial, Polynomial>> pairs{{poly("x1", 1), poly("x1", 1)}};
  CHECK(multiplicativity_defect(point, pairs) <= 1e-10);

  auto mix = convex_combination({Point{0.0}, Point{1.0}}, {0.5, 0.5}, 2);
  CHECK(multiplicativity_defect(mix, pairs) == Catch::Approx(0.25));

  std::vector<std::pair<Polynomial, Polynomial>> unit_pairs{
      {poly("1", 1), poly("x1^2 - x1", 1)}};
  CHECK(multiplicativity_defect(mix, unit_pairs) <= 1e-12);
}

TEST_CASE("pairing identity: positive functionals are non-negative on certified members") {
  QuadraticModule m(1, {poly("1 - x1^2", 1)});
  std::vector<Polynomial> members{poly("1 + x1", 1), poly("1 - x1^2", 1), poly("x1^2", 1)};
  std::vector<MomentFunctional> functionals{
      point_evaluation(Point{0.5}, 2), point_evaluation(Point{-1.0}, 2),
      convex_combination({Point{-0.5}, Point{0.25}, Point{1.0}}, {0.2, 0.3, 0.5}, 2)};
  for (const auto& f : members) {
    auto st = membership(f, m, 4);
    REQUIRE(st.is_certified());
    for (const auto& l : functionals) {
      REQUIRE(is_positive_on(l, m, 2));
      CHECK(apply(l, f) >= -1e-6);
    }
  }
}
