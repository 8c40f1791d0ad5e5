#include <catch2/catch_amalgamated.hpp>

#include "salempa/unitfinder.hpp"

using namespace salempa;

namespace {
IntPoly P(const char* s) { return poly_from_string(s); }
}  // namespace

TEST_CASE("fundamental units by continued fractions") {
  auto u5 = fundamental_unit_quadratic(Int(5));
  CHECK(u5.a == Rat(1, 2));
  CHECK(u5.b == Rat(1, 2));
  CHECK(u5.norm() == -1);

  auto u2 = fundamental_unit_quadratic(Int(2));
  CHECK(u2.a == Rat(1));
  CHECK(u2.b == Rat(1));
  CHECK(u2.norm() == -1);

  auto u3 = fundamental_unit_quadratic(Int(3));
  CHECK(u3.a == Rat(2));
  CHECK(u3.b == Rat(1));
  CHECK(u3.norm() == 1);

  auto u13 = fundamental_unit_quadratic(Int(13));
  CHECK(u13.a == Rat(3, 2));
  CHECK(u13.b == Rat(1, 2));
  CHECK(u13.norm() == -1);

  auto u61 = fundamental_unit_quadratic(Int(61));  // (39 + 5 sqrt 61)/2
  CHECK(u61.a == Rat(39, 2));
  CHECK(u61.b == Rat(5, 2));
  CHECK(u61.norm() == -1);

  auto u94 = fundamental_unit_quadratic(Int(94));  // long period
  CHECK(u94.a == Rat(2143295));
  CHECK(u94.b == Rat(221064));
  CHECK(u94.norm() == 1);

  CHECK_THROWS_AS(fundamental_unit_quadratic(Int(12)), precondition_error);
  CHECK_THROWS_AS(fundamental_unit_quadratic(Int(1)), precondition_error);
}

TEST_CASE("rational log enclosures") {
  RatInterval l2 = log_enclosure(Rat(2), 40);
  CHECK(l2.lo < Rat(693148, 1000000));
  CHECK(l2.hi > Rat(693147, 1000000));
  CHECK(l2.width() <= pow2_inv(38));
  RatInterval l1 = log_enclosure(Rat(1), 40);
  CHECK(l1.contains(Rat(0)));
  RatInterval lhalf = log_enclosure(Rat(1, 2), 40);
  CHECK(lhalf.hi < 0);
  CHECK_THROWS_AS(log_enclosure(Rat(0), 10), precondition_error);
}

TEST_CASE("totally real field construction") {
  auto f = make_totally_real_field(P("x^2-5"));
  CHECK(f.degree() == 2);
  CHECK(f.embeddings[0].sign() == 1);   // designated = +sqrt(5)
  CHECK(f.embeddings[1].sign() == -1);
  CHECK_THROWS_AS(make_totally_real_field(P("x^2+1")), precondition_error);
  CHECK_THROWS_AS(make_totally_real_field(P("x^2-1")), precondition_error);
  CHECK_THROWS_AS(make_totally_real_field(P("2x-3")), precondition_error);
}

TEST_CASE("log embedding of the golden ratio") {
  auto f = make_totally_real_field(P("x^2-5"));
  FieldElem theta = FieldElem::generator(f.field());
  FieldElem phi = Rat(1, 2) * (theta + FieldElem::from_rational(f.field(), Rat(1)));
  auto logs = log_embedding(phi, f, 48);
  // log(phi) ~ 0.4812
  CHECK(logs[0].lo > Rat(48, 100));
  CHECK(logs[0].hi < Rat(482, 1000));
  CHECK(logs[1].lo > Rat(-482, 1000));
  CHECK(logs[1].hi < Rat(-48, 100));
  // unit coordinates sum to zero within the enclosure
  RatInterval sum = logs[0] + logs[1];
  CHECK(sum.contains(Rat(0)));
  // homomorphism property: lambda(x^2) overlaps 2 lambda(x)
  auto logs_sq = log_embedding(phi * phi, f, 48);
  for (int i = 0; i < 2; ++i) CHECK(logs_sq[i].overlaps(logs[i] + logs[i]));
  CHECK_THROWS_AS(log_embedding(FieldElem::from_rational(f.field(), Rat(0)), f), precondition_error);
}

TEST_CASE("log embedding of 3 + 2 sqrt 2") {
  auto f = make_totally_real_field(P("x^2-2"));
  FieldElem theta = FieldElem::generator(f.field());
  FieldElem x = FieldElem::from_rational(f.field(), Rat(3)) + Rat(2) * theta;
  auto logs = log_embedding(x, f, 48);
  CHECK(logs[0].lo > Rat(176, 100));   // ~1.7627
  CHECK(logs[0].hi < Rat(177, 100));
  CHECK((logs[0] + logs[1]).contains(Rat(0)));
}

TEST_CASE("unit system verification and normalization") {
  auto f = make_totally_real_field(P("x^2-5"));
  FieldElem theta = FieldElem::generator(f.field());
  FieldElem phi = Rat(1, 2) * (theta + FieldElem::from_rational(f.field(), Rat(1)));
  // pass in the inverse and negated forms; normalization should recover phi
  auto sys1 = verify_unit_system(f, {phi.inverse()});
  CHECK(sys1.units[0] == phi);
  auto sys2 = verify_unit_system(f, {-phi});
  CHECK(sys2.units[0] == phi);
  // theta = sqrt(5) is not a unit
  CHECK_THROWS_AS(verify_unit_system(f, {theta}), precondition_error);
  // wrong count
  CHECK_THROWS_AS(verify_unit_system(f, {phi, phi}), precondition_error);
  // roots of unity are rejected
  CHECK_THROWS_AS(verify_unit_system(f, {FieldElem::from_rational(f.field(), Rat(-1))}),
                  precondition_error);
}

TEST_CASE("find_alpha in real quadratic fields") {
  auto f5 = make_totally_real_field(P("x^2-5"));
  FieldElem theta5 = FieldElem::generator(f5.field());
  FieldElem phi = Rat(1, 2) * (theta5 + FieldElem::from_rational(f5.field(), Rat(1)));
  auto gen = find_alpha(f5, verify_unit_system(f5, {phi}));
  // alpha = phi^2 = (3+sqrt5)/2
  CHECK(gen.alpha.min_poly() == P("x^2-3x+1"));
  CHECK(gen.exponents == std::vector<long long>{1});
  CHECK(gen.conjugate_values[0].decimal(3) == "2.618");
  CHECK(gen.conjugate_values[1].decimal(3) == "0.382");

  auto f2 = make_totally_real_field(P("x^2-2"));
  FieldElem theta2 = FieldElem::generator(f2.field());
  FieldElem u = FieldElem::from_rational(f2.field(), Rat(1)) + theta2;  // 1 + sqrt2
  auto gen2 = find_alpha(f2, verify_unit_system(f2, {u}));
  CHECK(gen2.alpha.min_poly() == P("x^2-6x+1"));  // 3 + 2 sqrt 2
}

TEST_CASE("find_alpha requires degree at least 2") {
  auto f = make_totally_real_field(P("x-1"));
  CHECK_THROWS_AS(find_alpha(f, UnitSystem{}), precondition_error);
}

TEST_CASE("find_alpha in a cyclic cubic field with supplied units") {
  auto f = make_totally_real_field(P("x^3-3x-1"));
  FieldElem theta = FieldElem::generator(f.field());
  FieldElem one = FieldElem::from_rational(f.field(), Rat(1));
  auto sys = verify_unit_system(f, {theta, theta + one});
  auto gen = find_alpha(f, sys);
  CHECK(gen.alpha.min_poly().degree() == 3);
  CHECK(gen.alpha.compare(Rat(1)) > 0);
  for (size_t j = 1; j < gen.conjugate_values.size(); ++j) {
    CHECK(gen.conjugate_values[j].compare(Rat(0)) > 0);
    CHECK(gen.conjugate_values[j].compare(Rat(1)) < 0);
  }
}

TEST_CASE("theorem B pipeline for the rational field") {
  auto rep = theoremB_pipeline(make_totally_real_field(P("x-1")));
  CHECK(rep.rational_field_case);
  CHECK(rep.q_final == RatMatrix::from_int_rows({{3}}));
  CHECK(rep.pa.verdict == WordVerdict::pseudoAnosov);
  CHECK(rep.pa.trace_field_poly == P("x-7"));
  REQUIRE(rep.pa.stretch.has_value());
  CHECK(rep.pa.stretch->minpoly() == P("x^2-7x+1"));  // (7 + sqrt45)/2
  CHECK(rep.field_equality.equal);
}

TEST_CASE("theorem B pipeline for Q(sqrt 5)") {
  auto rep = theoremB_pipeline(make_totally_real_field(P("x^2-5")));
  REQUIRE(rep.generator.has_value());
  CHECK(rep.alpha_minpoly == P("x^2-3x+1"));
  CHECK(rep.alpha_normalization_power == 1);
  CHECK(rep.realization.Q == RatMatrix::from_int_rows({{2, 1}, {1, 1}}));
  CHECK(rep.power == 1);
  CHECK(rep.q_final == RatMatrix::from_int_rows({{2, 1}, {1, 1}}));
  CHECK(rep.surface.intersection == rep.q_final);
  CHECK(rep.pa.verdict == WordVerdict::pseudoAnosov);
  // lambda + 1/lambda = alpha^2 - 2 = (3 + 3 sqrt5)/2
  CHECK(rep.field_equality.s_minpoly == P("x^2-3x-9"));
  CHECK(rep.field_equality.equal);
}

TEST_CASE("theorem B pipeline for Q(sqrt 2)") {
  auto rep = theoremB_pipeline(make_totally_real_field(P("x^2-2")));
  CHECK(rep.alpha_minpoly == P("x^2-6x+1"));
  CHECK(rep.field_equality.equal);
  CHECK(rep.pa.verdict == WordVerdict::pseudoAnosov);
  auto [ok, m] = veech_check(*rep.pa.stretch);
  CHECK(ok);
  CHECK(m == rep.field_equality.s_minpoly);
}

TEST_CASE("theorem B pipeline requires units beyond quadratic") {
  auto f = make_totally_real_field(P("x^3-3x-1"));
  CHECK_THROWS_AS(theoremB_pipeline(f), precondition_error);
}
