// Acceptance suite: one pass/fail line per criterion, with the pinned
// expected values and tolerances inline. Exits nonzero if any criterion
// fails. Wall-clock limits are part of the criteria.

#include <chrono>
#include <functional>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "salempa/json_io.hpp"

using namespace salempa;

namespace {

IntPoly P(const char* s) { return poly_from_string(s); }
RatMatrix IM(std::vector<std::vector<long long>> rows) { return RatMatrix::from_int_rows(rows); }

struct Check {
  bool ok = true;
  std::string detail;
  void require(bool cond, const std::string& what) {
    if (!cond && ok) {
      ok = false;
      detail = what;
    }
  }
};

struct Lcg {
  unsigned long long state;
  explicit Lcg(unsigned long long seed) : state(seed) {}
  long long next(long long lo, long long hi) {
    state = state * 6364136223846793005ULL + 1442695040888963407ULL;
    return lo + static_cast<long long>((state >> 33) % static_cast<unsigned long long>(hi - lo + 1));
  }
};

// |decimal rendering - expected| <= tol, both as exact rationals
bool decimal_within(const AlgebraicReal& value, const Rat& expected, const Rat& tol) {
  RatInterval enc = value.enclosure(64);
  return abs_of(enc.mid() - expected) <= tol + enc.width();
}

std::vector<AlgebraicReal> g_stretch_factors;  // collected for criterion 7

bool criterion1(std::string& detail) {
  Check c;
  PFData data = pf_data_from_product(IM({{8, 4}, {4, 6}}));
  c.require(data.nu.minpoly() == P("t^2-14t+32"), "nu minimal polynomial");
  // nu = 7 + sqrt(17) exactly
  auto nu_expected = identify_root(P("t^2-14t+32"), [](int bits) {
    return Rat(7) + sqrt_enclosure(Rat(17), bits);
  });
  c.require(data.nu.compare(nu_expected) == 0, "nu = 7 + sqrt(17) exactly");
  auto rep = classify_word(parse_word("CD"), data.field, data.nu);
  c.require(rep.verdict == WordVerdict::pseudoAnosov, "CD is pseudo-Anosov");
  c.require(rep.stretch.has_value(), "stretch factor present");
  if (rep.stretch) {
    // lambda = (5 + sqrt(17) + sqrt(38 + 10 sqrt(17)))/2 exactly
    auto lam_expected = identify_root(rep.stretch->minpoly(), [](int bits) {
      RatInterval s17 = sqrt_enclosure(Rat(17), bits);
      RatInterval inner = Rat(38) + Rat(10) * s17;
      RatInterval outer(sqrt_enclosure(inner.lo, bits).lo, sqrt_enclosure(inner.hi, bits).hi);
      RatInterval sum = Rat(5) + s17 + outer;
      return RatInterval(sum.lo / 2, sum.hi / 2);
    });
    c.require(rep.stretch->compare(lam_expected) == 0,
              "lambda = (5+sqrt17+sqrt(38+10*sqrt17))/2 exactly");
    c.require(rep.stretch->minpoly() == P("x^4-10x^3+10x^2-10x+1"), "lambda minimal polynomial");
    // exact value evaluates to 9.0121442... (decimal re-derived; the spec's
    // 9.01224 fails its own exact pin, see the decisions ledger)
    c.require(decimal_within(*rep.stretch, Rat(9012144241LL, 1000000000LL), Rat(1, 100000)),
              "lambda decimal to 1e-5");
    g_stretch_factors.push_back(*rep.stretch);
  }
  detail = c.detail;
  return c.ok;
}

bool criterion2(std::string& detail) {
  Check c;
  auto cert = salem_certificate(P("x^4-x^3-x^2-x+1"), Int(1));
  c.require(cert.trace_poly == P("t^2-t-3"), "trace polynomial t^2-t-3");
  c.require(cert.base_q == IM({{2, 1}, {1, -1}}), "base Q = [[2,1],[1,-1]]");
  c.require(cert.integrality.exponent == 1, "integrality exponent 1");
  c.require(cert.k == 3, "positivity exponent 3 at floor 1");
  c.require(cert.qk == IM({{5, 1}, {1, 2}}), "S_3 = [[5,1],[1,2]]");

  auto cert2 = salem_certificate(P("x^4-x^3-x^2-x+1"), Int(2));
  c.require(cert2.k == 5, "positivity exponent 5 at floor 2");
  c.require(cert2.qk == IM({{14, 4}, {4, 2}}), "S_5 = [[14,4],[4,2]]");

  // Thurston stage on S_3 with unit weights, word CD: stretch lambda^6
  PFData data = pf_data(cert.qk, TwistWeights::ones(2, 2));
  auto rep = classify_word(parse_word("CD"), data.field, data.nu);
  c.require(rep.verdict == WordVerdict::pseudoAnosov, "CD on S_3 is pseudo-Anosov");
  if (rep.stretch) {
    auto cls = classify_salem(P("x^4-x^3-x^2-x+1"));
    FieldPtr Klam = NumberField::make(*cls.salem_root);
    FieldElem lam6 = FieldElem::generator(Klam).pow(6);
    c.require(lam6.min_poly() == rep.stretch->minpoly(), "stretch = lambda^6 (minimal polynomial)");
    c.require(lam6.as_algebraic().compare(*rep.stretch) == 0, "stretch = lambda^6 (exact value)");
    c.require(decimal_within(*cls.salem_root, Rat(172208, 100000), Rat(1, 100000)),
              "lambda decimal 1.72208 to 1e-5");
    // lambda^6 = 26.08108750... (spec's 26.06 fails its own 1e-2 tolerance;
    // re-derived, see the decisions ledger)
    c.require(decimal_within(*rep.stretch, Rat(260811, 10000), Rat(1, 100)),
              "lambda^6 decimal to 1e-2");
    g_stretch_factors.push_back(*rep.stretch);
  } else {
    c.require(false, "stretch factor present");
  }
  c.require(veech_check(*rep.stretch).first, "veech check on lambda^6");
  detail = c.detail;
  return c.ok;
}

bool criterion3(std::string& detail) {
  Check c;
  Lcg rng(100003);
  int done = 0;
  while (done < 200 && c.ok) {
    int n = 1 + static_cast<int>(rng.next(0, 3));  // n <= 4
    RatMatrix q(n, n);
    for (int i = 0; i < n; ++i)
      for (int j = i; j < n; ++j)
        q.at(i, j) = q.at(j, i) = Rat(rng.next(-3, 3), rng.next(1, 3));  // denominators <= 3
    for (long long k = 1; k <= 12; ++k)
      c.require(verify_skew(q, k), "skew property failed at sample " + std::to_string(done) +
                                       ", k = " + std::to_string(k));
    ++done;
  }
  detail = c.detail;
  return c.ok;
}

bool criterion4(std::string& detail) {
  Check c;
  // pinned instance
  RatMatrix q = RatMatrix::from_rows({{Rat(3, 5), Rat(4, 5)}, {Rat(4, 5), Rat(-3, 5)}});
  BlockCompanion blk = build_block(q);
  auto cert = integrality_exponent(blk);
  c.require(cert.exponent == 6, "exponent 6 for (1/5)[[3,4],[4,-3]]");
  c.require(blk.block.power(6) == RatMatrix::identity(4), "block^6 = I");
  for (long long k = 1; k < 6; ++k)
    c.require(!blk.block.power(k).is_integral(), "minimality of the pinned exponent");

  // 50 random integral-charpoly rational symmetric matrices, via rational
  // rotation conjugates of integer symmetric seeds
  Lcg rng(424243);
  for (int done = 0; done < 50 && c.ok; ++done) {
    RatMatrix d(2, 2);
    d.at(0, 0) = Rat(rng.next(-3, 3));
    d.at(1, 1) = Rat(rng.next(-3, 3));
    d.at(0, 1) = d.at(1, 0) = Rat(rng.next(-3, 3));
    RatMatrix s(2, 2);
    Rat v(rng.next(-2, 2), rng.next(1, 3));
    s.at(0, 1) = v;
    s.at(1, 0) = -v;
    RatMatrix u = cayley_rotation(s);
    RatMatrix conj = u * d * u.transposed();
    BlockCompanion b = build_block(conj);
    auto crt = integrality_exponent(b);
    c.require(crt.omega_order >= crt.exponent,
              "modular-order bound below the exponent at sample " + std::to_string(done));
    c.require(b.block.power(crt.exponent).is_integral(),
              "claimed exponent not integral at sample " + std::to_string(done));
    for (long long k = 1; k < crt.exponent; ++k)
      c.require(!b.block.power(k).is_integral(),
                "exponent not minimal at sample " + std::to_string(done));
  }
  detail = c.detail;
  return c.ok;
}

bool criterion5(std::string& detail) {
  Check c;
  for (long long a = 1; a <= 4 && c.ok; ++a)
    for (long long b = 1; b <= 4 && c.ok; ++b)
      for (long long e = 1; e <= 4 && c.ok; ++e)
        for (long long d = 1; d <= 4 && c.ok; ++d) {
          if (a * d == b * e) continue;
          RatMatrix q = IM({{a, b}, {e, d}});
          auto rep = analyze(build_surface(q));
          c.require(rep.intersection == q, "intersection recovery");
          c.require(rep.euler % 2 == 0, "even euler characteristic");
          c.require(rep.orientable, "orientable");
        }
  auto torus = analyze(build_surface(IM({{1}})));
  c.require(torus.genus == 1, "[[1]] yields genus 1");
  c.require(genus_formula_check(IM({{2}})), "genus formula n = 1");
  c.require(genus_formula_check(IM({{3, 2}, {2, 3}})), "genus formula n = 2");
  c.require(genus_formula_check(IM({{3, 2, 2}, {2, 3, 2}, {2, 2, 3}})), "genus formula n = 3");
  detail = c.detail;
  return c.ok;
}

bool criterion6(std::string& detail) {
  Check c;
  {
    auto rep = theoremB_pipeline(make_totally_real_field(P("x^2-5")));
    c.require(rep.alpha_minpoly == P("x^2-3x+1"), "alpha = (3+sqrt5)/2 for Q(sqrt5)");
    c.require(rep.q_final.is_integral() && rep.q_final.is_symmetric() &&
                  rep.q_final.entries_at_least(Rat(1)),
              "positive symmetric integral realization");
    c.require(rep.surface.intersection == rep.q_final, "surface recovers the matrix");
    c.require(rep.pa.verdict == WordVerdict::pseudoAnosov, "pseudo-Anosov verdict");
    c.require(rep.field_equality.equal, "Q(lambda + 1/lambda) = Q(sqrt5)");
    if (rep.pa.stretch) g_stretch_factors.push_back(*rep.pa.stretch);
  }
  {
    auto rep = theoremB_pipeline(make_totally_real_field(P("x^2-2")));
    c.require(rep.alpha_minpoly == P("x^2-6x+1"), "alpha = 3+2sqrt2 for Q(sqrt2)");
    c.require(rep.field_equality.equal, "Q(lambda + 1/lambda) = Q(sqrt2)");
    c.require(rep.pa.verdict == WordVerdict::pseudoAnosov, "pseudo-Anosov verdict");
    if (rep.pa.stretch) g_stretch_factors.push_back(*rep.pa.stretch);
  }
  {
    auto rep = theoremB_pipeline(make_totally_real_field(P("x-1")));
    c.require(rep.rational_field_case, "K = Q special case");
    c.require(rep.q_final == IM({{3}}), "Q = [[3]]");
    c.require(rep.pa.trace_field_poly == P("x-7"), "lambda + 1/lambda = 7");
    c.require(rep.field_equality.equal, "field equality for Q");
    if (rep.pa.stretch) g_stretch_factors.push_back(*rep.pa.stretch);
  }
  detail = c.detail;
  return c.ok;
}

bool criterion7(std::string& detail) {
  Check c;
  c.require(!g_stretch_factors.empty(), "stretch factors collected from criteria 1-6");
  for (size_t i = 0; i < g_stretch_factors.size(); ++i)
    c.require(veech_check(g_stretch_factors[i]).first,
              "veech check failed for stretch factor " + std::to_string(i));
  detail = c.detail;
  return c.ok;
}

bool criterion8(std::string& detail) {
  Check c;
  auto once = [] {
    auto cert = salem_certificate(P("x^4-x^3-x^2-x+1"), Int(1));
    auto cert2 = salem_certificate(P("x^4-x^3-x^2-x+1"), Int(2));
    return certificate_to_json(cert, 12).dump(2) + certificate_to_json(cert2, 12).dump(2);
  };
  std::string first = once();
  std::string second = once();
  c.require(first == second, "byte-identical certificates across runs");
  detail = c.detail;
  return c.ok;
}

}  // namespace

int main() {
  struct Entry {
    const char* name;
    std::function<bool(std::string&)> run;
    double limit_seconds;
  };
  std::vector<Entry> criteria = {
      {"1 Example 4.3 reproduction", criterion1, 1.0},
      {"2 Theorem A desk-scale chain", criterion2, 5.0},
      {"3 skew-property suite (200 random Q, k <= 12)", criterion3, 60.0},
      {"4 integrality-exponent oracle equivalence", criterion4, 60.0},
      {"5 surface correctness (exhaustive 2x2 + genus formula)", criterion5, 30.0},
      {"6 Theorem B desk-scale (sqrt5, sqrt2, Q)", criterion6, 30.0},
      {"7 Veech property suite", criterion7, 60.0},
      {"8 determinism (byte-identical certificates)", criterion8, 30.0},
  };
  int failures = 0;
  for (auto& entry : criteria) {
    auto start = std::chrono::steady_clock::now();
    std::string detail;
    bool ok = false;
    try {
      ok = entry.run(detail);
    } catch (const std::exception& e) {
      ok = false;
      detail = std::string("exception: ") + e.what();
    }
    double secs =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    if (ok && secs > entry.limit_seconds) {
      ok = false;
      detail = "runtime limit exceeded";
    }
    std::ostringstream line;
    line << "criterion " << entry.name << ": " << (ok ? "PASS" : "FAIL");
    line.setf(std::ios::fixed);
    line.precision(2);
    line << " (" << secs << "s";
    if (!ok && !detail.empty()) line << "; " << detail;
    line << ")";
    std::cout << line.str() << std::endl;
    if (!ok) ++failures;
  }
  if (failures) {
    std::cout << failures << " criterion(s) failed" << std::endl;
    return 1;
  }
  std::cout << "all acceptance criteria passed" << std::endl;
  return 0;
}
