#include <catch2/catch_amalgamated.hpp>

#include "salempa/salem.hpp"

using namespace salempa;

namespace {
IntPoly P(const char* s) { return poly_from_string(s); }

// Expansion oracle: the integer quartic (x^2-(n-2)x+1)(x^2-(m-2)x+1) where
// n + m = a and n*m = b, written through the symmetric functions a, b.
IntPoly quartic_from_eigen_sums(const Int& a, const Int& b) {
  return IntPoly{Int(1), -(a - 4), b - 2 * a + 6, -(a - 4), Int(1)};
}
}  // namespace

TEST_CASE("trace polynomial examples") {
  CHECK(trace_polynomial(P("x^4-x^3-x^2-x+1")) == P("t^2-t-3"));
  CHECK(trace_polynomial(P("x^2-3x+1")) == P("t-3"));
  CHECK(trace_polynomial(P("x^4-10x^3+10x^2-10x+1")) == P("t^2-10t+8"));
  CHECK_THROWS_AS(trace_polynomial(P("x^3-2")), precondition_error);
  CHECK_THROWS_AS(trace_polynomial(P("x^3+2x^2+2x+1")), precondition_error);  // odd reciprocal
}

TEST_CASE("trace polynomial round trip") {
  for (const char* s : {"x^4-x^3-x^2-x+1", "x^4-10x^3+10x^2-10x+1", "x^2-3x+1",
                        "x^6-x^4-x^3-x^2+1"}) {
    IntPoly p = P(s);
    CHECK(reciprocal_from_trace(trace_polynomial(p)) == p);
  }
}

TEST_CASE("Salem verdict for the eigenvalue-built quartic") {
  // nu = 7 + sqrt(17), mu = 7 - sqrt(17): a = 14, b = 32
  IntPoly p = quartic_from_eigen_sums(Int(14), Int(32));
  CHECK(p == P("x^4-10x^3+10x^2-10x+1"));
  auto cls = classify_salem(p);
  CHECK(cls.verdict == SalemVerdict::Salem);
  REQUIRE(cls.salem_root.has_value());
  CHECK(cls.salem_root->decimal(4) == "9.0121");
}

TEST_CASE("Salem verdict for the small reciprocal quartic") {
  auto cls = classify_salem(P("x^4-x^3-x^2-x+1"));
  CHECK(cls.verdict == SalemVerdict::Salem);
  REQUIRE(cls.salem_root.has_value());
  CHECK(cls.salem_root->decimal(4) == "1.7221");
}

TEST_CASE("quadratic reciprocal units get their own verdict") {
  auto cls = classify_salem(P("x^2-3x+1"));
  CHECK(cls.verdict == SalemVerdict::QuadraticReciprocalUnit);
  REQUIRE(cls.salem_root.has_value());
  CHECK(cls.salem_root->decimal(3) == "2.618");
}

TEST_CASE("non-Salem inputs") {
  CHECK(classify_salem(P("x^3-2")).verdict == SalemVerdict::NotSalem);
  CHECK(classify_salem(P("x^3-2")).reason == "not reciprocal");
  // reciprocal but reducible: (x^2-3x+1)(x^2-x+1) has trace poly (t-3)(t-1)
  IntPoly composite = P("x^2-3x+1") * P("x^2-x+1");
  CHECK(classify_salem(composite).verdict == SalemVerdict::NotSalem);
  // cyclotomic: all roots on the unit circle, no root above 2
  CHECK(classify_salem(P("x^2-x+1")).verdict == SalemVerdict::NotSalem);
  CHECK(classify_salem(P("x^2+3x+1")).verdict == SalemVerdict::NotSalem);
  // genuinely Salem despite the odd shape: reciprocal with trace poly t^2-2t-2
  CHECK(classify_salem(P("x^4-2x^3-2x+1")).verdict == SalemVerdict::Salem);
  CHECK(classify_salem(P("x^4-2x^3-2x+2")).verdict == SalemVerdict::NotSalem);
}

TEST_CASE("non-monic input is rejected") {
  CHECK_THROWS_AS(classify_salem(P("2x^2-3x+2")), precondition_error);
}

TEST_CASE("Lehmer polynomial classifies as Salem") {
  IntPoly lehmer{Int(1), Int(1), Int(0), Int(-1), Int(-1), Int(-1), Int(-1), Int(-1),
                 Int(0),  Int(1), Int(1)};
  auto cls = classify_salem(lehmer);
  CHECK(cls.verdict == SalemVerdict::Salem);
  REQUIRE(cls.salem_root.has_value());
  CHECK(cls.salem_root->decimal(5) == "1.17628");
}
