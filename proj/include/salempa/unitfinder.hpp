#pragma once

// Totally real number fields, their real embeddings, fundamental units of
// real quadratic fields via the continued fraction of the quadratic
// irrational (a + sqrt(d))/q, the logarithmic embedding with certified
// interval enclosures, the generator-unit search (u > 1 under the
// designated embedding, all conjugates inside the unit interval after
// squaring), and the end-to-end totally-real-field pipeline.
//
// Fundamental units are built in only for quadratic fields; beyond degree
// two the unit system is caller supplied and verified (unit-ness plus
// interval-certified rank of the log-embedding matrix).

#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "salempa/algebraic.hpp"
#include "salempa/matrix.hpp"
#include "salempa/numberfield.hpp"
#include "salempa/realize.hpp"
#include "salempa/skewpower.hpp"
#include "salempa/surface.hpp"
#include "salempa/thurston.hpp"

namespace salempa {

struct TotallyRealField {
  IntPoly defining;                        // monic irreducible, all roots real
  std::vector<AlgebraicReal> embeddings;   // [0] = designated (largest root), rest ascending
  std::vector<FieldPtr> conjugate_fields;  // Q(theta_i), same modulus, aligned with embeddings
  const FieldPtr& field() const { return conjugate_fields.front(); }
  int degree() const { return defining.degree(); }
};

inline TotallyRealField make_totally_real_field(const IntPoly& defining) {
  if (defining.is_zero() || !defining.is_monic() || defining.degree() < 1)
    throw precondition_error("field polynomial must be monic of degree >= 1");
  if (!is_irreducible(defining))
    throw precondition_error("field polynomial must be irreducible");
  auto roots = isolate_roots(defining);
  if (static_cast<int>(roots.size()) != defining.degree())
    throw precondition_error("field polynomial is not totally real");
  TotallyRealField f;
  f.defining = defining;
  f.embeddings.push_back(roots.back());  // designated inclusion: the largest root
  for (size_t i = 0; i + 1 < roots.size(); ++i) f.embeddings.push_back(roots[i]);
  for (const AlgebraicReal& r : f.embeddings) f.conjugate_fields.push_back(NumberField::make(r));
  return f;
}

// sigma_i(x): the same polynomial expression read in the i-th conjugate field.
inline FieldElem conjugate_embed(const TotallyRealField& f, const FieldElem& x, int i) {
  if (x.field().get() != f.field().get())
    throw precondition_error("element does not belong to the designated field");
  return FieldElem(f.conjugate_fields[i], x.rep());
}

// ----- rational logarithm enclosures ---------------------------------------

namespace detail {

// atanh series with an explicit tail bound; |t| <= 1/3 by construction.
inline RatInterval two_atanh_enclosure(const Rat& t, int bits) {
  Rat target = pow2_inv(bits + 2);
  Rat sum = 0, power = t;
  Rat t2 = t * t;
  long long k = 0;
  while (true) {
    sum += power / (2 * k + 1);
    Rat tail = 2 * abs_of(power) * t2 / ((2 * k + 3) * (1 - t2));
    if (tail <= target) {
      Rat lo = 2 * sum - tail, hi = 2 * sum + tail;
      return RatInterval(lo, hi);
    }
    power *= t2;
    ++k;
  }
}

inline RatInterval log2_enclosure(int bits) { return two_atanh_enclosure(Rat(1, 3), bits); }

}  // namespace detail

// Certified enclosure of log(r) for rational r > 0.
inline RatInterval log_enclosure(const Rat& r, int bits) {
  if (r <= 0) throw precondition_error("log of a nonpositive value");
  long long e = 0;
  Rat scaled = r;
  while (scaled > Rat(3, 2)) { scaled /= 2; ++e; }
  while (scaled < Rat(3, 4)) { scaled *= 2; --e; }
  RatInterval series = detail::two_atanh_enclosure((scaled - 1) / (scaled + 1), bits);
  if (e == 0) return series;
  RatInterval l2 = detail::log2_enclosure(bits + 8);
  return Rat(e) * l2 + series;
}

// Enclosures of log|sigma_i(x)| at the requested precision.
inline std::vector<RatInterval> log_embedding(const FieldElem& x, const TotallyRealField& f,
                                              int bits = 32) {
  if (x.is_zero()) throw precondition_error("log embedding of zero");
  std::vector<RatInterval> out;
  for (int i = 0; i < f.degree(); ++i) {
    FieldElem sx = conjugate_embed(f, x, i);
    int sign = sx.sign();
    if (sign == 0) throw internal_error("conjugate of a nonzero element is zero");
    FieldElem ax = sign > 0 ? sx : -sx;
    // enclose |sigma_i(x)| by a positive rational interval, then take logs
    RatInterval v = ax.enclosure(bits);
    for (int more = bits; v.lo <= 0; more *= 2) {
      v = ax.enclosure(more);
      if (more > (1 << 22)) throw internal_error("log embedding: enclosure refinement failed");
    }
    out.push_back(RatInterval(log_enclosure(v.lo, bits).lo, log_enclosure(v.hi, bits).hi));
  }
  return out;
}

// ----- fundamental units of real quadratic fields --------------------------

inline bool is_squarefree_int(const Int& d) {
  if (d < 1) return false;
  Int n = d;
  for (Int p = 2; p * p <= n; ++p) {
    if (n % p == 0) {
      n /= p;
      if (n % p == 0) return false;
    }
  }
  return true;
}

struct QuadraticUnit {
  Rat a, b;  // the unit a + b sqrt(d); half-integers for d = 1 mod 4
  Int d;
  Int norm() const {
    Rat n = a * a - Rat(d) * b * b;
    if (rat_den(n) != 1) throw internal_error("quadratic unit norm is not an integer");
    return rat_num(n);
  }
};

// Fundamental unit (> 1) of the ring of integers of Q(sqrt(d)) by the
// period of the continued fraction of sqrt(d), or (1+sqrt(d))/2 when
// d = 1 mod 4. The product of the period matrices fixes the purely
// periodic tail, and its eigenvalue is the fundamental unit.
inline QuadraticUnit fundamental_unit_quadratic(const Int& d) {
  if (d <= 1 || !is_squarefree_int(d))
    throw precondition_error("squarefree d > 1 required");
  // state: omega = (p + sqrt(d)) / q
  Int p = 0, q = 1;
  if (d % 4 == 1) { p = 1; q = 2; }
  const Int sd = isqrt_floor(d);
  std::map<std::pair<Int, Int>, int> seen;
  std::vector<Int> partials;
  std::vector<std::pair<Int, Int>> states;
  while (true) {
    auto key = std::make_pair(p, q);
    auto it = seen.find(key);
    if (it != seen.end()) {
      const int start = it->second;
      // period matrix over the cycle
      Int m11 = 1, m12 = 0, m21 = 0, m22 = 1;
      for (size_t i = start; i < partials.size(); ++i) {
        Int a = partials[i];
        Int n11 = a * m11 + m12, n21 = a * m21 + m22;
        m12 = m11; m22 = m21;
        m11 = n11; m21 = n21;
      }
      auto [ps, qs] = states[start];
      // unit = m21 * omega_start + m22 with omega_start = (ps + sqrt(d))/qs
      QuadraticUnit u{Rat(m21 * ps + m22 * qs, qs), Rat(m21, qs), d};
      Int norm = u.norm();
      if (norm != 1 && norm != -1) throw internal_error("fundamental unit has norm != +-1");
      // u = m21*omega + m22 with omega > 1 reduced, so u > 1 automatically;
      // verified through a sqrt enclosure anyway
      RatInterval s = sqrt_enclosure(Rat(d), 32);
      if (u.a + u.b * s.lo <= 1) throw internal_error("fundamental unit is not above 1");
      return u;
    }
    seen[key] = static_cast<int>(partials.size());
    states.push_back(key);
    if (q <= 0) throw internal_error("continued fraction state with q <= 0");
    Int a = (p + sd) / q;
    partials.push_back(a);
    Int p2 = a * q - p;
    Int num = d - p2 * p2;
    if (num % q != 0) throw internal_error("continued fraction state not integral");
    p = p2;
    q = num / q;
  }
}

// ----- unit systems and the generator unit ---------------------------------

struct UnitSystem {
  std::vector<FieldElem> units;  // normalized: sigma_1(u) > 1, verified units
};

namespace detail {

inline RatInterval interval_det(const std::vector<std::vector<RatInterval>>& m) {
  const size_t n = m.size();
  if (n == 1) return m[0][0];
  RatInterval acc = RatInterval::point(Rat(0));
  for (size_t j = 0; j < n; ++j) {
    std::vector<std::vector<RatInterval>> minor;
    for (size_t i = 1; i < n; ++i) {
      std::vector<RatInterval> row;
      for (size_t k = 0; k < n; ++k)
        if (k != j) row.push_back(m[i][k]);
      minor.push_back(std::move(row));
    }
    RatInterval term = m[0][j] * interval_det(minor);
    acc = (j % 2 == 0) ? acc + term : acc - term;
  }
  return acc;
}

}  // namespace detail

inline UnitSystem verify_unit_system(const TotallyRealField& f, std::vector<FieldElem> units) {
  const int n = f.degree();
  if (static_cast<int>(units.size()) != n - 1)
    throw precondition_error("unit system must have exactly degree-1 elements");
  for (FieldElem& u : units) {
    if (u.is_zero()) throw precondition_error("zero is not a unit");
    if (u.sign() < 0) u = -u;
    FieldElem one = FieldElem::from_rational(f.field(), Rat(1));
    if (u == one) throw precondition_error("unit of infinite order required");
    if (u.compare(Rat(1)) < 0) u = u.inverse();
    IntPoly m = u.min_poly();
    if (!m.is_monic()) throw precondition_error("unit must be an algebraic integer");
    if (abs_of(m.coeff(0)) != 1) throw precondition_error("element is not an algebraic unit");
  }
  // rank n-1 of the log embedding, certified by a minor with nonzero interval
  if (n >= 2) {
    bool certified = false;
    for (int bits = 32; bits <= (1 << 14) && !certified; bits *= 2) {
      std::vector<std::vector<RatInterval>> logs;
      for (const FieldElem& u : units) logs.push_back(log_embedding(u, f, bits));
      for (int drop = 0; drop < n && !certified; ++drop) {
        std::vector<std::vector<RatInterval>> minor;
        for (int i = 0; i < n - 1; ++i) {
          std::vector<RatInterval> row;
          for (int j = 0; j < n; ++j)
            if (j != drop) row.push_back(logs[i][j]);
          minor.push_back(std::move(row));
        }
        if (n == 1 || detail::interval_det(minor).definite_sign() != 0) certified = true;
      }
    }
    if (!certified)
      throw precondition_error("unit system rank could not be certified (units dependent?)");
  }
  return UnitSystem{std::move(units)};
}

struct GeneratorUnit {
  FieldElem alpha;                              // > 1; conjugates in (0, 1)
  std::vector<AlgebraicReal> conjugate_values;  // aligned with the field's embeddings
  std::vector<long long> exponents;             // b_i with alpha = (prod u_i^b_i)^2
};

// Integer combination u = prod u_i^b_i with sigma_1(u) > 1, all other
// |sigma_j(u)| < 1 and n distinct conjugates; returns alpha = u^2.
// Scans integer vectors in increasing max-norm, first valid wins.
inline GeneratorUnit find_alpha(const TotallyRealField& f, const UnitSystem& sys,
                                long long coeff_bound = 16) {
  const int n = f.degree();
  if (n < 2)
    throw precondition_error("degree-1 field handled by pipeline special case");
  const int r = n - 1;
  std::vector<long long> b(r, 0);
  for (long long shell = 1; shell <= coeff_bound; ++shell) {
    std::fill(b.begin(), b.end(), -shell);
    while (true) {
      long long maxnorm = 0;
      for (long long v : b) maxnorm = std::max(maxnorm, v < 0 ? -v : v);
      if (maxnorm == shell) {
        FieldElem u = FieldElem::from_rational(f.field(), Rat(1));
        for (int i = 0; i < r; ++i) u = u * sys.units[i].pow(b[i]);
        bool ok = u.compare(Rat(1)) > 0;
        for (int j = 1; j < n && ok; ++j) {
          FieldElem su = conjugate_embed(f, u, j);
          ok = su.compare(Rat(1)) < 0 && su.compare(Rat(-1)) > 0;
        }
        if (ok && u.degree_over_q() == n) {
          FieldElem alpha = u * u;
          IntPoly am = alpha.min_poly();
          if (static_cast<int>(am.degree()) != n)
            throw internal_error("find_alpha: square of a generator lost degree");
          if (abs_of(am.coeff(0)) != 1 || !am.is_monic())
            throw internal_error("find_alpha: alpha is not an algebraic unit");
          GeneratorUnit out{alpha, {}, b};
          for (int j = 0; j < n; ++j) {
            FieldElem sa = conjugate_embed(f, alpha, j);
            if (j == 0) {
              if (sa.compare(Rat(1)) <= 0) throw internal_error("find_alpha: alpha not above 1");
            } else if (sa.compare(Rat(0)) <= 0 || sa.compare(Rat(1)) >= 0) {
              throw internal_error("find_alpha: conjugate outside (0,1)");
            }
            out.conjugate_values.push_back(sa.as_algebraic());
          }
          for (size_t i = 0; i < out.conjugate_values.size(); ++i)
            for (size_t j = i + 1; j < out.conjugate_values.size(); ++j)
              if (out.conjugate_values[i].compare(out.conjugate_values[j]) == 0)
                throw internal_error("find_alpha: conjugate values collide");
          // powers of alpha keep generating the field (spot check)
          for (int mth = 2; mth <= 4; ++mth)
            if (alpha.pow(mth).degree_over_q() != n)
              throw internal_error("find_alpha: a small power of alpha drops degree");
          return out;
        }
      }
      // next vector in [-shell, shell]^r, lexicographic
      int pos = r - 1;
      while (pos >= 0 && b[pos] == shell) {
        b[pos] = -shell;
        --pos;
      }
      if (pos < 0) break;
      ++b[pos];
    }
  }
  throw search_exhausted("find_alpha: no generator unit within coefficient bound " +
                         std::to_string(coeff_bound) + "; raise the bound");
}

// ----- the totally real field pipeline -------------------------------------

struct FieldEqualityWitness {
  bool equal = false;
  IntPoly s_minpoly;   // minimal polynomial of lambda + 1/lambda
  RatPoly theta_in_s;  // c with theta = c(s); the linear factor x - c(s) of
                       // the defining polynomial over Q(s)
};

struct TheoremBReport {
  IntPoly defining;
  int degree = 1;
  bool rational_field_case = false;
  std::optional<GeneratorUnit> generator;  // absent for K = Q
  long long alpha_normalization_power = 1; // least power making alpha exceed 2
  IntPoly alpha_minpoly;
  RealizeResult realization;
  RationalRotation rotation;
  RatMatrix positivized;
  IntegralityCertificate integrality;
  long long power = 1;  // ell with Q_final = positivized^ell
  RatMatrix q_final;
  SurfaceReport surface;
  PseudoAnosovReport pa;
  FieldEqualityWitness field_equality;
};

struct PipelineConfig {
  Int entry_floor = 1;          // 2 enables the genus formula check
  long long search_bound = 6;   // realization search
  long long max_power = 10000;  // cap on power walks
  int precision_digits = 12;    // decimal rendering in reports
  long long alpha_coeff_bound = 16;
};

namespace detail {

// express theta as a polynomial in s; empty when s does not generate
inline std::optional<RatPoly> generator_in_terms_of(const FieldElem& s, const FieldPtr& K) {
  const int n = K->degree();
  RatMatrix m(n, n);
  FieldElem pw = FieldElem::from_rational(K, Rat(1));
  for (int j = 0; j < n; ++j) {
    for (int i = 0; i < n; ++i) m.at(i, j) = pw.rep().coeff(i);
    pw = pw * s;
  }
  RatMatrix rhs(n, 1);
  if (n > 1) rhs.at(1, 0) = 1;  // coordinates of theta in the power basis
  else rhs.at(0, 0) = K->theta().is_rational() ? K->theta().rational_value() : Rat(0);
  RatMatrix sol(n, 1);
  try {
    sol = m.inverse() * rhs;
  } catch (const precondition_error&) {
    return std::nullopt;
  }
  std::vector<Rat> coeffs(n);
  for (int i = 0; i < n; ++i) coeffs[i] = sol.at(i, 0);
  return RatPoly(std::move(coeffs));
}

}  // namespace detail

inline TheoremBReport theoremB_pipeline(const TotallyRealField& f,
                                        const std::optional<UnitSystem>& units_opt = {},
                                        const PipelineConfig& config = {}) {
  auto stage = [](const char* name, auto&& fn) {
    try {
      return fn();
    } catch (const search_exhausted& e) {
      throw search_exhausted(std::string(name) + ": " + e.what());
    } catch (const precondition_error& e) {
      throw precondition_error(std::string(name) + ": " + e.what());
    }
  };

  TheoremBReport rep;
  rep.defining = f.defining;
  rep.degree = f.degree();
  const int n = f.degree();

  if (n == 1) {
    // Q itself: the unit machinery has no generator with all conjugates in
    // (0, 1); the 1x1 matrix [[3]] realizes the statement directly.
    rep.rational_field_case = true;
    rep.alpha_minpoly = poly_from_string("x-3");
    rep.realization = RealizeResult{RatMatrix::from_int_rows({{3}}), 0};
    rep.rotation = RationalRotation{RatMatrix::identity(1)};
    rep.positivized = rep.realization.Q;
    rep.q_final = rep.realization.Q;
  } else {
    UnitSystem sys = [&] {
      if (units_opt) return verify_unit_system(f, units_opt->units);
      if (n == 2) {
        // built-in fundamental unit: disc = p^2 - 4q = s^2 d with d squarefree
        const Int p = f.defining.coeff(1), q0 = f.defining.coeff(0);
        Int disc = p * p - 4 * q0;
        Int d = disc, s = 1;
        for (Int fdiv = 2; fdiv * fdiv <= d; ++fdiv)
          while (d % (fdiv * fdiv) == 0) {
            d /= fdiv * fdiv;
            s *= fdiv;
          }
        QuadraticUnit u = stage("fundamental-unit", [&] { return fundamental_unit_quadratic(d); });
        // sqrt(d) = (2 theta + p) / s in Q(theta)
        FieldElem theta = FieldElem::generator(f.field());
        FieldElem sqrt_d = Rat(1, s) * (Rat(2) * theta + FieldElem::from_rational(f.field(), Rat(p)));
        FieldElem unit_elem = FieldElem::from_rational(f.field(), u.a) + u.b * sqrt_d;
        return verify_unit_system(f, {unit_elem});
      }
      throw precondition_error(
          "units required: fundamental units are built in only for quadratic fields");
    }();

    GeneratorUnit gen = stage("find-alpha", [&] {
      return find_alpha(f, sys, config.alpha_coeff_bound);
    });
    // normalization to alpha > 2 by the least power
    long long mpow = 1;
    FieldElem alpha = gen.alpha;
    while (alpha.compare(Rat(2)) <= 0) {
      alpha = alpha * gen.alpha;
      ++mpow;
      if (mpow > config.max_power)
        throw search_exhausted("alpha normalization exceeded max_power");
    }
    if (mpow > 1) {
      gen.alpha = alpha;
      gen.conjugate_values.clear();
      for (int j = 0; j < n; ++j)
        gen.conjugate_values.push_back(conjugate_embed(f, alpha, j).as_algebraic());
    }
    rep.generator = gen;
    rep.alpha_normalization_power = mpow;
    rep.alpha_minpoly = gen.alpha.min_poly();
    if (rep.alpha_minpoly.degree() != n)
      throw internal_error("pipeline: normalized alpha no longer generates the field");

    rep.realization = stage("realize", [&] {
      return realize_symmetric(rep.alpha_minpoly, 2, config.search_bound);
    });
    AlgebraicReal alpha_root = gen.alpha.as_algebraic();
    Positivized pos = stage("positivize", [&] {
      return positivize(rep.realization.Q, alpha_root);
    });
    rep.rotation = pos.rotation;
    rep.positivized = pos.Q;
    rep.integrality = stage("integrality", [&] {
      return integrality_exponent_matrix(pos.Q);
    });
    PowerPositivity pp = stage("positivity", [&] {
      return direct_positivity_exponent(pos.Q, alpha_root, rep.integrality.exponent,
                                        config.entry_floor, config.max_power);
    });
    rep.power = pp.exponent;
    rep.q_final = pp.power;
  }

  rep.surface = stage("surface", [&] { return analyze(build_surface(rep.q_final)); });
  if (rep.surface.intersection != rep.q_final)
    throw internal_error("pipeline: surface does not recover its intersection matrix");
  if (config.entry_floor >= 2) {
    bool genus_ok = stage("genus", [&] { return genus_formula_check(rep.q_final); });
    if (!genus_ok) throw internal_error("pipeline: genus formula check failed");
  }

  PFData pf = stage("thurston", [&] {
    return pf_data(rep.q_final, TwistWeights::ones(rep.q_final.cols(), rep.q_final.rows()));
  });
  rep.pa = stage("thurston", [&] { return classify_word(parse_word("CD"), pf.field, pf.nu); });
  if (rep.pa.verdict != WordVerdict::pseudoAnosov)
    throw internal_error("pipeline: the word CD is not pseudo-Anosov");
  auto [veech_ok, veech_poly] = veech_check(*rep.pa.stretch);
  if (!veech_ok) throw internal_error("pipeline: trace field is not totally real");
  if (veech_poly != rep.pa.trace_field_poly)
    throw internal_error("pipeline: trace field polynomials disagree");

  // field equality: lambda + 1/lambda = nu - 2 lives in K; check degree and
  // exhibit theta as a polynomial in it
  FieldElem s_elem = [&] {
    if (rep.rational_field_case) {
      // nu = 9 exactly: s = 7
      return FieldElem::from_rational(f.field(), Rat(7));
    }
    // dominant eigenvalue of q_final is alpha^ell; s = (alpha^ell)^2 - 2
    FieldElem abar = rep.generator->alpha.pow(rep.power);
    return abar * abar - FieldElem::from_rational(f.field(), Rat(2));
  }();
  rep.field_equality.s_minpoly = s_elem.min_poly();
  if (rep.field_equality.s_minpoly != rep.pa.trace_field_poly)
    throw internal_error("pipeline: |trace| minimal polynomial mismatch");
  bool degree_ok = rep.field_equality.s_minpoly.degree() == n;
  auto witness = detail::generator_in_terms_of(s_elem, f.field());
  rep.field_equality.equal = degree_ok && witness.has_value();
  if (witness) {
    rep.field_equality.theta_in_s = *witness;
    // verify the witness: c(s) = theta exactly
    FieldElem recovered = FieldElem::from_rational(f.field(), Rat(0));
    for (int i = witness->degree(); i >= 0; --i)
      recovered = recovered * s_elem + FieldElem::from_rational(f.field(), witness->coeff(i));
    if (!(recovered == FieldElem::generator(f.field())))
      throw internal_error("pipeline: field equality witness failed verification");
  }
  if (!rep.field_equality.equal)
    throw internal_error("pipeline: field equality check failed");
  return rep;
}

}  // namespace salempa
