#include <catch2/catch_amalgamated.hpp>

#include "salempa/skewpower.hpp"

using namespace salempa;

namespace {
IntPoly P(const char* s) { return poly_from_string(s); }

RatMatrix M2(long long a, long long b, long long c, long long d) {
  return RatMatrix::from_int_rows({{a, b}, {c, d}});
}

struct Lcg {
  unsigned long long state;
  explicit Lcg(unsigned long long seed) : state(seed) {}
  long long next(long long lo, long long hi) {
    state = state * 6364136223846793005ULL + 1442695040888963407ULL;
    return lo + static_cast<long long>((state >> 33) % static_cast<unsigned long long>(hi - lo + 1));
  }
};

RatMatrix random_symmetric(Lcg& rng, int n, long long num_range, long long max_den) {
  RatMatrix q(n, n);
  for (int i = 0; i < n; ++i)
    for (int j = i; j < n; ++j)
      q.at(i, j) = q.at(j, i) = Rat(rng.next(-num_range, num_range), rng.next(1, max_den));
  return q;
}
}  // namespace

TEST_CASE("build_block basics") {
  BlockCompanion b1 = build_block(RatMatrix::from_int_rows({{3}}));
  CHECK(b1.block == M2(3, -1, 1, 0));
  CHECK(b1.char_poly == to_rat(P("x^2-3x+1")));
  CHECK(b1.block.det() == 1);
  REQUIRE(b1.reciprocal.has_value());
  CHECK(*b1.reciprocal == P("x^2-3x+1"));
  CHECK(b1.excess == 0);

  BlockCompanion b2 = build_block(RatMatrix::identity(2));
  CHECK(b2.char_poly == to_rat(P("x^2-x+1") * P("x^2-x+1")));
  CHECK(b2.block.det() == 1);
  CHECK(b2.excess == 2);

  BlockCompanion b3 = build_block(M2(2, 1, 1, -1));
  CHECK(b3.char_poly == to_rat(P("x^4-x^3-x^2-x+1")));
  REQUIRE(b3.reciprocal.has_value());
  CHECK(*b3.reciprocal == P("x^4-x^3-x^2-x+1"));
  CHECK(b3.excess == 0);
}

TEST_CASE("block char poly matches direct Berkowitz") {
  Lcg rng(5150);
  for (int rep = 0; rep < 6; ++rep) {
    int n = 1 + static_cast<int>(rng.next(1, 3));
    RatMatrix q = random_symmetric(rng, n, 3, 3);
    BlockCompanion blk = build_block(q);
    CHECK(blk.char_poly == blk.block.char_poly());
    CHECK(blk.block.det() == 1);
  }
}

TEST_CASE("q_sequence hand-checked values") {
  RatMatrix q = M2(2, 1, 1, -1);
  CHECK(q_sequence(q, 1).second == q);
  CHECK(q_sequence(q, 2).second == M2(3, 1, 1, 0));
  CHECK(q_sequence(q, 3).second == M2(5, 1, 1, 2));
  CHECK(q_sequence(q, 4).second == M2(8, 3, 3, -1));
  CHECK(q_sequence(q, 5).second == M2(14, 4, 4, 2));
}

TEST_CASE("doubling agrees with the recursion") {
  Lcg rng(77);
  for (int rep = 0; rep < 4; ++rep) {
    RatMatrix q = random_symmetric(rng, 2 + static_cast<int>(rng.next(0, 1)), 3, 2);
    for (long long k = 1; k <= 9; ++k) CHECK(qk_doubling(q, k) == q_sequence(q, k).second);
  }
}

TEST_CASE("skew property on pinned cases") {
  CHECK(verify_skew(RatMatrix::from_int_rows({{3}}), 1));
  CHECK(verify_skew(M2(2, 1, 1, -1), 5));
}

TEST_CASE("skew property on random rational symmetric matrices") {
  Lcg rng(424242);
  for (int rep = 0; rep < 8; ++rep) {
    RatMatrix q = random_symmetric(rng, 3, 2, 3);
    for (long long k = 1; k <= 10; ++k) CHECK(verify_skew(q, k));
  }
}

TEST_CASE("integrality exponent of integral matrices is 1") {
  auto cert = integrality_exponent(build_block(M2(2, 1, 1, -1)));
  CHECK(cert.exponent == 1);
  auto cert2 = integrality_exponent(build_block(RatMatrix::from_int_rows({{3}})));
  CHECK(cert2.exponent == 1);
}

TEST_CASE("integrality exponent of the rational rotation-like matrix") {
  RatMatrix q = RatMatrix::from_rows({{Rat(3, 5), Rat(4, 5)}, {Rat(4, 5), Rat(-3, 5)}});
  CHECK(q.char_poly() == to_rat(P("x^2-1")));
  BlockCompanion blk = build_block(q);
  auto cert = integrality_exponent(blk);
  CHECK(cert.exponent == 6);
  CHECK(cert.omega_order >= 6);
  CHECK(blk.block.power(6) == RatMatrix::identity(4));
  // Q_k cycles I, Q, 0, -Q, -I, 0 for this spectrum
  CHECK(q_sequence(q, 6).first == RatMatrix::identity(2));
  CHECK(q_sequence(q, 3).first == -q);
  // brute-force minimality oracle
  for (long long k = 1; k < 6; ++k) CHECK_FALSE(blk.block.power(k).is_integral());
}

TEST_CASE("integrality exponent preconditions") {
  RatMatrix h = RatMatrix::from_rows({{Rat(1, 2)}});
  CHECK_THROWS_AS(integrality_exponent_matrix(h), precondition_error);
  CHECK_THROWS_AS(integrality_exponent_matrix(M2(2, 0, 0, 1)), precondition_error);  // det 2
}

TEST_CASE("integrality bound dominates the discovered exponent on random conjugates") {
  Lcg rng(31337);
  for (int done = 0; done < 10; ++done) {
    // rational-rotation conjugates of integer symmetric matrices have
    // integral char poly; the block construction then has det 1
    RatMatrix d(2, 2);
    d.at(0, 0) = Rat(rng.next(-3, 3));
    d.at(1, 1) = Rat(rng.next(-3, 3));
    d.at(0, 1) = d.at(1, 0) = Rat(rng.next(-3, 3));
    RatMatrix s(2, 2);
    Rat v(rng.next(-2, 2), rng.next(1, 3));
    s.at(0, 1) = v;
    s.at(1, 0) = -v;
    RatMatrix u = cayley_rotation(s);
    RatMatrix q = u * d * u.transposed();
    BlockCompanion blk = build_block(q);
    auto cert = integrality_exponent(blk);
    CHECK(cert.omega_order >= cert.exponent);
    for (long long k = 1; k < cert.exponent; ++k)
      CHECK_FALSE(blk.block.power(k).is_integral());
    CHECK(blk.block.power(cert.exponent).is_integral());
  }
}

TEST_CASE("positivity exponent pinned walkthrough") {
  RatMatrix q = M2(2, 1, 1, -1);
  AlgebraicReal theta = isolate_roots(P("t^2-t-3")).back();
  CHECK(positivity_exponent(q, theta, 1, Int(1)) == 3);
  CHECK(positivity_exponent(q, theta, 1, Int(2)) == 5);
  CHECK(positivity_exponent(RatMatrix::from_int_rows({{3}}),
                            AlgebraicReal::from_rational(Rat(3)), 1, Int(1)) == 1);
}

TEST_CASE("positivity exponent rejects non-dominant setups") {
  RatMatrix q = M2(0, 1, 1, 0);  // eigenvalues +1 and -1
  CHECK_THROWS_AS(positivity_exponent(q, AlgebraicReal::from_rational(Rat(1)), 1, Int(1)),
                  precondition_error);
}

TEST_CASE("salem certificate for the small quartic") {
  auto cert = salem_certificate(P("x^4-x^3-x^2-x+1"), Int(1));
  CHECK(cert.trace_poly == P("t^2-t-3"));
  CHECK(cert.base_q == M2(2, 1, 1, -1));
  CHECK(cert.excess == 0);
  CHECK(cert.integrality.exponent == 1);
  CHECK(cert.k == 3);
  CHECK(cert.qk == M2(5, 1, 1, 2));
  CHECK(cert.eigen_minpoly == P("t^2-7t+9"));
  CHECK(cert.charpoly_qk == P("t^2-7t+9"));

  auto cert2 = salem_certificate(P("x^4-x^3-x^2-x+1"), Int(2));
  CHECK(cert2.k == 5);
  CHECK(cert2.qk == M2(14, 4, 4, 2));
}

TEST_CASE("salem certificate for a quadratic reciprocal unit") {
  auto cert = salem_certificate(P("x^2-3x+1"), Int(1));
  CHECK(cert.verdict == SalemVerdict::QuadraticReciprocalUnit);
  CHECK(cert.k == 1);
  CHECK(cert.qk == RatMatrix::from_int_rows({{3}}));
  CHECK(cert.eigen_minpoly == P("x-3"));
}

TEST_CASE("salem certificate for the Example-4.3 quartic") {
  auto cert = salem_certificate(P("x^4-10x^3+10x^2-10x+1"), Int(1));
  CHECK(cert.trace_poly == P("t^2-10t+8"));
  CHECK(cert.qk.is_integral());
  CHECK(cert.qk.entries_at_least(Rat(1)));
  CHECK(cert.qk.is_symmetric());
  // eigenvalue of S_k is lambda^k + lambda^-k for the Salem root lambda
  FieldPtr K = NumberField::make(*classify_salem(P("x^4-10x^3+10x^2-10x+1")).salem_root);
  FieldElem lam = FieldElem::generator(K);
  FieldElem expect = lam.pow(cert.k) + lam.pow(-cert.k);
  CHECK(expect.min_poly() == cert.eigen_minpoly);
}

TEST_CASE("salem certificate rejects non-Salem input") {
  CHECK_THROWS_AS(salem_certificate(P("x^3-2"), Int(1)), precondition_error);
}

TEST_CASE("chart for excess one across k mod 6") {
  // diag(3, 1): char poly (x-3)(x-1); the trace polynomial x-3 with e = 1
  RatMatrix q = M2(3, 0, 0, 1);
  std::vector<long long> v{2, 3, 7, 18, 47, 123, 322, 843, 2207, 5778, 15127, 39603, 103682};
  for (long long k = 1; k <= 12; ++k) {
    RatMatrix sk = q_sequence(q, k).second;
    RatPoly expect = RatPoly{Rat(-v[k]), Rat(1)} * RatPoly{Rat(-skew_chart_value(k)), Rat(1)};
    CHECK(sk.char_poly() == expect);
  }
}

TEST_CASE("spectral mapping on a 2x2 case") {
  RatMatrix q = M2(2, 1, 1, -1);
  AlgebraicReal theta = isolate_roots(P("t^2-t-3")).back();
  FieldPtr K = NumberField::make(theta);
  for (long long k = 2; k <= 6; ++k) {
    IntPoly gk = chebyshev_power_sum(K, k).min_poly();
    RatPoly monic = Rat(1) / Rat(gk.lead()) * to_rat(gk);
    CHECK(q_sequence(q, k).second.char_poly() == monic);
  }
}

TEST_CASE("direct positivity exponent for the field route") {
  // [[2,1],[1,1]]: eigenvalues (3 +- sqrt5)/2, dominant ~2.618, other ~0.382
  RatMatrix q = M2(2, 1, 1, 1);
  AlgebraicReal alpha = isolate_roots(P("x^2-3x+1")).back();
  auto res = direct_positivity_exponent(q, alpha, 1, Int(1));
  CHECK(res.exponent == 1);
  CHECK(res.power == q);
  auto res2 = direct_positivity_exponent(q, alpha, 1, Int(3));  // q^2 bottoms out at 2
  CHECK(res2.exponent == 3);
  CHECK(res2.power == q * q * q);
}
