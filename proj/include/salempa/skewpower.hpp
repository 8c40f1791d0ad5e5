#pragma once

// The block matrix engine: for symmetric rational Q, the 2m x 2m block
// matrix B = [[Q, -I], [I, 0]] has det 1 and satisfies the skew property
// B^k + B^-k = diag(S_k, S_k) with S_k = 2 Q_k - Q Q_{k-1}, where
// Q_0 = I, Q_1 = Q, Q_{k+1} = Q Q_k - Q_{k-1}. S_k is the Chebyshev-style
// power whose eigenvalues are 2 T_k(theta/2) over the eigenvalues theta
// of Q.
//
// integrality_exponent finds the smallest k with B^k integral; the search
// bound comes from conjugating B into an integer matrix on a B-invariant
// lattice (Hermite basis of the spanned Krylov columns) and taking the
// order of that conjugate modulo the product of the two change-of-basis
// denominators; below that order the search is exhaustive.
//
// positivity_exponent walks multiples of the integrality exponent until
// every entry of S_k is an integer at or above the requested floor. The
// walk is capped by an explicit spectral bound computed from a certified
// lower bound on the eigenvector products, so termination is checked, not
// assumed.

#include <functional>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "salempa/algebraic.hpp"
#include "salempa/matrix.hpp"
#include "salempa/numberfield.hpp"
#include "salempa/realize.hpp"
#include "salempa/salem.hpp"

namespace salempa {

struct BlockCompanion {
  RatMatrix Q;          // m x m symmetric rational
  RatMatrix block;      // [[Q, -I], [I, 0]]
  RatPoly char_poly;    // x^m charQ(x + 1/x)
  // recovered reciprocal data when charQ = f(x)(x-1)^e with f a trace polynomial
  std::optional<IntPoly> reciprocal;  // p with char_poly = p (x^2-x+1)^e
  int excess = 0;
};

inline RatMatrix block_inverse_closed_form(const RatMatrix& q) {
  const int m = q.rows();
  RatMatrix inv(2 * m, 2 * m);
  for (int i = 0; i < m; ++i) {
    inv.at(i, m + i) = 1;
    inv.at(m + i, i) = -1;
    for (int j = 0; j < m; ++j) inv.at(m + i, m + j) = q.at(i, j);
  }
  return inv;
}

inline BlockCompanion build_block(const RatMatrix& q) {
  if (!q.is_square()) throw precondition_error("build_block: square matrix required");
  const int m = q.rows();
  RatMatrix blk(2 * m, 2 * m);
  for (int i = 0; i < m; ++i) {
    for (int j = 0; j < m; ++j) blk.at(i, j) = q.at(i, j);
    blk.at(i, m + i) = -1;
    blk.at(m + i, i) = 1;
  }
  // char poly of the block: x^m charQ(x + 1/x) = sum a_j x^(m-j) (x^2+1)^j
  RatPoly cq = q.char_poly();
  RatPoly xsq1 = to_rat(poly_from_string("x^2+1"));
  RatPoly cm;
  RatPoly pw = RatPoly::constant(Rat(1));
  for (int j = 0; j <= m; ++j) {
    cm = cm + (cq.coeff(j) * pw).shifted(m - j);
    pw = pw * xsq1;
  }
  if (cm.coeff(0) != 1) throw internal_error("build_block: det of the block is not 1");

  BlockCompanion out{q, std::move(blk), cm, std::nullopt, 0};
  // detect charQ = f(x)(x-1)^e with x^d f(x+1/x) an integer reciprocal p
  RatPoly f = cq;
  out.excess = strip_root(f, Rat(1));
  IntPoly fi = clear_denominators(f);
  if (to_rat(fi) == f) {  // f already integer and monic
    IntPoly p = reciprocal_from_trace(fi);
    if (p.is_palindromic()) {
      RatPoly expect = to_rat(p);
      RatPoly cyc = to_rat(poly_from_string("x^2-x+1"));
      for (int i = 0; i < out.excess; ++i) expect = expect * cyc;
      if (expect != cm)
        throw precondition_error("build_block: characteristic polynomial factorization failed; "
                                 "Q is not valid for the certificate chain");
      out.reciprocal = p;
    }
  }
  return out;
}

// (Q_k, S_k) by the three-term recursion; k >= 1.
inline std::pair<RatMatrix, RatMatrix> q_sequence(const RatMatrix& q, long long k) {
  if (k < 1) throw precondition_error("q_sequence: k >= 1");
  const int m = q.rows();
  RatMatrix prev = RatMatrix::identity(m);  // Q_0
  RatMatrix cur = q;                        // Q_1
  for (long long i = 2; i <= k; ++i) {
    RatMatrix next = q * cur - prev;
    prev = std::move(cur);
    cur = std::move(next);
  }
  RatMatrix sk = Rat(2) * cur - q * prev;
  return {std::move(cur), std::move(sk)};
}

// S_k by pair doubling: S_2k = S_k^2 - 2I, S_(a+b) = S_a S_b - S_(a-b).
inline RatMatrix qk_doubling(const RatMatrix& q, long long k) {
  if (k < 0) throw precondition_error("qk_doubling: k >= 0");
  const RatMatrix two_eye = Rat(2) * RatMatrix::identity(q.rows());
  std::function<std::pair<RatMatrix, RatMatrix>(long long)> go =
      [&](long long n) -> std::pair<RatMatrix, RatMatrix> {
    if (n == 0) return {two_eye, q};
    auto [a, b] = go(n / 2);  // (S_n/2, S_n/2+1)
    if (n % 2 == 0) return {a * a - two_eye, a * b - q};
    return {a * b - q, b * b - two_eye};
  };
  return go(k).first;
}

// Oracle check of the skew property by direct exact powering of the block.
inline bool verify_skew(const RatMatrix& q, long long k) {
  if (k < 1) throw precondition_error("verify_skew: k >= 1");
  const int m = q.rows();
  BlockCompanion blk = build_block(q);
  RatMatrix pk = blk.block.power(k);
  RatMatrix nk = block_inverse_closed_form(q).power(k);
  RatMatrix sum = pk + nk;
  RatMatrix sk = q_sequence(q, k).second;
  for (int i = 0; i < m; ++i)
    for (int j = 0; j < m; ++j) {
      if (sum.at(i, j) != sk.at(i, j)) return false;
      if (sum.at(m + i, m + j) != sk.at(i, j)) return false;
      if (sum.at(i, m + j) != 0) return false;
      if (sum.at(m + i, j) != 0) return false;
    }
  return qk_doubling(q, k) == sk;
}

struct IntegralityCertificate {
  long long exponent = 1;   // minimal k with the matrix power integral
  Int c = 1, d = 1;         // denominators of the lattice basis and its inverse
  Int modulus = 1;          // c * d
  long long omega_order = 1;  // order of the integral conjugate mod c*d; upper bound
};

// Smallest k >= 1 with M^k integral, for rational M with integer
// characteristic polynomial and det 1. Returns the certificate data that
// bounds the search.
inline IntegralityCertificate integrality_exponent_matrix(const RatMatrix& mat) {
  if (!mat.is_square()) throw precondition_error("integrality_exponent: square matrix required");
  RatPoly cp = mat.char_poly();
  for (int i = 0; i <= cp.degree(); ++i)
    if (rat_den(cp.coeff(i)) != 1)
      throw precondition_error("integrality_exponent: integral characteristic polynomial required");
  if (mat.det() != 1) throw precondition_error("integrality_exponent: det 1 required");
  const int n = mat.rows();

  IntegralityCertificate cert;
  if (mat.is_integral()) {
    return cert;  // k = 1, trivial bound
  }
  // invariant lattice spanned by M^j e_i, 0 <= j < n (Cayley-Hamilton closes it)
  std::vector<RatMatrix> powers{RatMatrix::identity(n)};
  for (int j = 1; j < n; ++j) powers.push_back(powers.back() * mat);
  Int denom = 1;
  for (const RatMatrix& p : powers) denom = lcm_int(denom, p.denominator_lcm());
  std::vector<std::vector<Int>> cols;
  for (const RatMatrix& p : powers)
    for (int i = 0; i < n; ++i) {
      std::vector<Int> col(n);
      for (int r = 0; r < n; ++r) {
        Rat scaled = Rat(denom) * p.at(r, i);
        col[r] = rat_num(scaled);
      }
      cols.push_back(std::move(col));
    }
  auto basis = hnf_column_basis(std::move(cols), n);
  RatMatrix a(n, n);
  for (int j = 0; j < n; ++j)
    for (int i = 0; i < n; ++i) a.at(i, j) = Rat(basis[j][i], denom);
  RatMatrix ainv = a.inverse();
  RatMatrix omega = ainv * mat * a;
  if (!omega.is_integral())
    throw internal_error("integrality_exponent: conjugate on the invariant lattice not integral");
  cert.c = a.denominator_lcm();
  cert.d = ainv.denominator_lcm();
  cert.modulus = cert.c * cert.d;

  // order of omega in the finite matrix ring modulo c*d
  auto mod_reduce = [&](const Int& v) {
    Int r = v % cert.modulus;
    if (r < 0) r += cert.modulus;
    return r;
  };
  std::vector<Int> om(n * n), id(n * n, Int(0)), cur;
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) om[i * n + j] = mod_reduce(rat_num(omega.at(i, j)));
  for (int i = 0; i < n; ++i) id[i * n + i] = mod_reduce(Int(1));
  cur = om;
  const long long order_cap = 4'000'000;
  long long order = 1;
  while (cur != id) {
    std::vector<Int> next(n * n, Int(0));
    for (int i = 0; i < n; ++i)
      for (int k2 = 0; k2 < n; ++k2) {
        if (cur[i * n + k2] == 0) continue;
        for (int j = 0; j < n; ++j)
          next[i * n + j] = (next[i * n + j] + cur[i * n + k2] * om[k2 * n + j]) % cert.modulus;
      }
    cur = std::move(next);
    if (++order > order_cap)
      throw search_exhausted("integrality_exponent: modular order exceeds cap");
  }
  cert.omega_order = order;

  // exhaustive search below the certified bound
  RatMatrix pw = mat;
  for (long long k = 1; k <= order; ++k) {
    if (pw.is_integral()) {
      cert.exponent = k;
      return cert;
    }
    pw = pw * mat;
  }
  throw internal_error("integrality_exponent: no integral power at or below the certified order");
}

inline IntegralityCertificate integrality_exponent(const BlockCompanion& blk) {
  return integrality_exponent_matrix(blk.block);
}

namespace detail {

// theta must be an eigenvalue; every other root of charpoly must have
// absolute value strictly below theta. Errors otherwise.
inline std::vector<AlgebraicReal> dominance_check(const RatMatrix& q, const AlgebraicReal& theta) {
  auto roots = isolate_roots(clear_denominators(q.char_poly()));
  bool seen = false;
  std::vector<AlgebraicReal> others;
  for (const AlgebraicReal& r : roots) {
    if (!seen && r.compare(theta) == 0) {
      seen = true;
      continue;
    }
    others.push_back(r);
  }
  if (!seen) throw precondition_error("theta is not an eigenvalue of Q");
  for (const AlgebraicReal& r : others) {
    if (r.compare(theta) >= 0 || r.negated().compare(theta) >= 0)
      throw precondition_error("no unique dominating eigenvalue");
  }
  return others;
}

// certified positive rational lower bound of min over entries of
// v_i v_j / ||v||^2
inline Rat eigenvector_profile_lower_bound(const FieldVector& v, const FieldPtr& K) {
  FieldElem norm2 = FieldElem::from_rational(K, Rat(0));
  for (const FieldElem& c : v) norm2 = norm2 + c * c;
  Rat best;
  bool first = true;
  for (size_t i = 0; i < v.size(); ++i)
    for (size_t j = i; j < v.size(); ++j) {
      FieldElem r = (v[i] * v[j]) / norm2;
      if (r.sign() <= 0) throw precondition_error("eigenvector is not strictly positive");
      Rat lo;
      for (int bits = 8;; bits *= 2) {
        lo = r.enclosure(bits).lo;
        if (lo > 0) break;
        if (bits > (1 << 22)) throw internal_error("profile bound refinement failed");
      }
      if (first || lo < best) { best = lo; first = false; }
    }
  return best;
}

// rational lower bound strictly above 1 for the dominant root of
// x^2 - theta x + 1, given exact theta > 2
inline Rat dominant_unit_lower_bound(const AlgebraicReal& theta) {
  for (int bits = 8;; bits *= 2) {
    RatInterval t = theta.enclosure(bits);
    if (t.lo > 2) {
      Rat disc_lo = t.lo * t.lo - 4;
      RatInterval s = sqrt_enclosure(disc_lo, bits);
      Rat mu = (t.lo + s.lo) / 2;
      if (mu > 1) return mu;
    }
    if (bits > (1 << 22)) throw internal_error("dominant unit bound refinement failed");
  }
}

}  // namespace detail

// Smallest multiple k of step with S_k integral and every entry >= floor.
inline long long positivity_exponent(const RatMatrix& q, const AlgebraicReal& theta,
                                     long long step, const Int& entry_floor,
                                     long long max_power = 10000) {
  if (step < 1) throw precondition_error("positivity_exponent: positive step required");
  if (entry_floor < 1) throw precondition_error("positivity_exponent: positive entry floor");
  if (!q.is_symmetric()) throw precondition_error("positivity_exponent: symmetric Q required");
  auto others = detail::dominance_check(q, theta);
  if (theta.compare(Rat(2)) <= 0)
    throw precondition_error("positivity_exponent: dominant eigenvalue must exceed 2");
  for (const AlgebraicReal& r : others)
    if (r.compare(Rat(2)) > 0 || r.negated().compare(Rat(2)) > 0)
      throw precondition_error(
          "positivity_exponent: non-dominant eigenvalue outside [-2,2]; growth bound unavailable");

  FieldPtr K = NumberField::make(theta);
  FieldVector v = eigenvector_exact(q, K);
  for (const FieldElem& c : v)
    if (c.sign() <= 0)
      throw precondition_error("positivity_exponent: eigenvector not strictly positive");

  const int m = q.rows();
  const Rat cmin = detail::eigenvector_profile_lower_bound(v, K);
  const Rat needed = (Rat(entry_floor) + 2 * (m - 1)) / cmin;
  const Rat mu_lo = detail::dominant_unit_lower_bound(theta);
  // explicit termination bound: smallest k with mu_lo^k >= needed
  long long k_bound = 1;
  Rat acc = mu_lo;
  while (acc < needed) {
    acc *= mu_lo;
    if (++k_bound > max_power) break;  // scan cap takes over
  }
  k_bound = ((k_bound + step - 1) / step) * step;

  RatMatrix prev = RatMatrix::identity(m);  // Q_(k-1)
  RatMatrix cur = q;                        // Q_k
  for (long long k = 1; k <= std::min(k_bound, max_power); ++k) {
    if (k % step == 0) {
      RatMatrix sk = Rat(2) * cur - q * prev;
      if (sk.is_integral() && sk.entries_at_least(Rat(entry_floor))) {
        if (qk_doubling(q, k) != sk)
          throw internal_error("positivity_exponent: doubling cross-check failed");
        return k;
      }
    }
    RatMatrix next = q * cur - prev;
    prev = std::move(cur);
    cur = std::move(next);
  }
  if (k_bound > max_power)
    throw search_exhausted("positivity_exponent: exceeded max_power cap " +
                           std::to_string(max_power));
  throw internal_error("positivity_exponent: certified growth bound passed without a hit");
}

// Direct-power variant (for the totally real field route): smallest
// multiple k of step with Q^k integral and entries >= floor. Requires the
// non-dominant spectrum inside [-1, 1] and theta > 1.
struct PowerPositivity {
  long long exponent;
  RatMatrix power;  // Q^exponent
};

inline PowerPositivity direct_positivity_exponent(const RatMatrix& q, const AlgebraicReal& theta,
                                                  long long step, const Int& entry_floor,
                                                  long long max_power = 10000) {
  if (step < 1) throw precondition_error("direct_positivity_exponent: positive step required");
  if (entry_floor < 1) throw precondition_error("direct_positivity_exponent: positive entry floor");
  if (!q.is_symmetric()) throw precondition_error("direct_positivity_exponent: symmetric Q required");
  auto others = detail::dominance_check(q, theta);
  if (theta.compare(Rat(1)) <= 0)
    throw precondition_error("direct_positivity_exponent: dominant eigenvalue must exceed 1");
  for (const AlgebraicReal& r : others)
    if (r.compare(Rat(1)) > 0 || r.negated().compare(Rat(1)) > 0)
      throw precondition_error(
          "direct_positivity_exponent: non-dominant eigenvalue outside [-1,1]");

  FieldPtr K = NumberField::make(theta);
  FieldVector v = eigenvector_exact(q, K);
  for (const FieldElem& c : v)
    if (c.sign() <= 0)
      throw precondition_error("direct_positivity_exponent: eigenvector not strictly positive");

  const int m = q.rows();
  const Rat cmin = detail::eigenvector_profile_lower_bound(v, K);
  const Rat needed = (Rat(entry_floor) + (m - 1)) / cmin;
  Rat theta_lo = 1;
  for (int bits = 8; theta_lo <= 1; bits *= 2) {
    theta_lo = theta.enclosure(bits).lo;
    if (bits > (1 << 22)) throw internal_error("theta lower bound refinement failed");
  }
  long long k_bound = 1;
  Rat acc = theta_lo;
  while (acc < needed) {
    acc *= theta_lo;
    if (++k_bound > max_power) break;
  }
  k_bound = ((k_bound + step - 1) / step) * step;

  RatMatrix pw = q;
  for (long long k = 1; k <= std::min(k_bound, max_power); ++k) {
    if (k % step == 0 && pw.is_integral() && pw.entries_at_least(Rat(entry_floor)))
      return {k, pw};
    pw = pw * q;
  }
  if (k_bound > max_power)
    throw search_exhausted("direct_positivity_exponent: exceeded max_power cap " +
                           std::to_string(max_power));
  throw internal_error("direct_positivity_exponent: growth bound passed without a hit");
}

// ---------------------------------------------------------------------------

struct SkewPowerCertificate {
  IntPoly p;                    // input reciprocal polynomial
  SalemVerdict verdict;
  IntPoly trace_poly;           // g, minimal polynomial of lambda + 1/lambda
  RatMatrix base_q;             // realization of g before rotation
  int excess = 0;               // e with char(base_q) = g (x-1)^e
  RationalRotation rotation;
  RatMatrix q;                  // positivized realization
  IntegralityCertificate integrality;
  long long k = 1;              // positivity exponent
  RatMatrix qk;                 // S_k: positive symmetric integer matrix
  AlgebraicReal eigenvalue;     // lambda^k + lambda^-k
  IntPoly eigen_minpoly;        // g_k
  FieldVector eigenvector;      // over Q(theta), theta = lambda + 1/lambda
  IntPoly charpoly_qk;          // g_k (x - a)^e
  int chart_a = 2;              // a determined by k mod 6
  Int entry_floor = 1;
  long long search_bound = 6;   // replay data for the realization search
  long long max_power = 10000;
};

inline int skew_chart_value(long long k) {
  switch (k % 6) {
    case 0: return 2;
    case 1: case 5: return 1;
    case 2: case 4: return -1;
    default: return -2;  // k = 3 mod 6
  }
}

// 2 T_k(theta/2) as an element of Q(theta), by pair doubling.
inline FieldElem chebyshev_power_sum(const FieldPtr& K, long long k) {
  FieldElem two = FieldElem::from_rational(K, Rat(2));
  FieldElem th = FieldElem::generator(K);
  std::function<std::pair<FieldElem, FieldElem>(long long)> go =
      [&](long long n) -> std::pair<FieldElem, FieldElem> {
    if (n == 0) return {two, th};
    auto [a, b] = go(n / 2);
    if (n % 2 == 0) return {a * a - two, a * b - th};
    return {a * b - th, b * b - two};
  };
  return go(k).first;
}

// Re-run every invariant check on a loaded certificate without repeating
// the realization or rotation searches. Throws on the first violation.
inline void validate_certificate(const SkewPowerCertificate& cert) {
  auto fail = [](const std::string& what) {
    throw precondition_error("certificate invalid: " + what);
  };
  SalemClassification cls = classify_salem(cert.p);
  if (cls.verdict != cert.verdict) fail("classification verdict mismatch");
  if (cls.verdict == SalemVerdict::NotSalem) fail("input polynomial is not in scope");
  if (trace_polynomial(cert.p) != cert.trace_poly) fail("trace polynomial mismatch");

  RatPoly target = Rat(1) / Rat(cert.trace_poly.lead()) * to_rat(cert.trace_poly);
  RatPoly xm1{Rat(-1), Rat(1)};
  for (int i = 0; i < cert.excess; ++i) target = target * xm1;
  if (cert.base_q.char_poly() != target) fail("base realization characteristic polynomial");
  if (!is_rotation(cert.rotation.m)) fail("rotation is not in SO(n, Q)");
  if (cert.rotation.m * cert.base_q * cert.rotation.m.transposed() != cert.q)
    fail("rotated matrix does not match");
  if (!cert.q.is_symmetric()) fail("rotated matrix is not symmetric");

  BlockCompanion blk = build_block(cert.q);
  if (cert.integrality.modulus != cert.integrality.c * cert.integrality.d)
    fail("integrality certificate modulus");
  if (cert.integrality.omega_order < cert.integrality.exponent)
    fail("integrality certificate order below the exponent");
  if (!blk.block.power(cert.integrality.exponent).is_integral())
    fail("block power at the claimed integrality exponent is not integral");
  for (long long j = 1; j < cert.integrality.exponent; ++j)
    if (blk.block.power(j).is_integral()) fail("integrality exponent is not minimal");

  if (cert.k % cert.integrality.exponent != 0) fail("k is not a multiple of the step");
  auto [qk_rec, sk] = q_sequence(cert.q, cert.k);
  (void)qk_rec;
  if (sk != cert.qk) fail("S_k does not match the recursion");
  if (qk_doubling(cert.q, cert.k) != cert.qk) fail("S_k does not match the doubling path");
  if (!cert.qk.is_integral() || !cert.qk.is_symmetric()) fail("S_k is not symmetric integral");
  if (!cert.qk.entries_at_least(Rat(cert.entry_floor))) fail("S_k entries below the floor");
  for (long long j = cert.integrality.exponent; j < cert.k; j += cert.integrality.exponent) {
    RatMatrix sj = q_sequence(cert.q, j).second;
    if (sj.is_integral() && sj.entries_at_least(Rat(cert.entry_floor)))
      fail("positivity exponent is not minimal");
  }

  AlgebraicReal theta = isolate_roots(cert.trace_poly).back();
  const int m = cert.q.rows();
  if (static_cast<int>(cert.eigenvector.size()) != m) fail("eigenvector size");
  // work in the eigenvector's own field; confirm it is Q(theta) for the
  // dominant trace root
  FieldPtr K = cert.eigenvector.front().field();
  if (!K) fail("eigenvector carries no field");
  if (!(K->theta().compare(theta) == 0)) fail("eigenvector field generator mismatch");
  FieldElem theta_k = chebyshev_power_sum(K, cert.k);
  if (theta_k.min_poly() != cert.eigen_minpoly) fail("eigenvalue minimal polynomial");
  if (cert.eigenvalue.minpoly() != cert.eigen_minpoly) fail("stored eigenvalue minpoly");
  if (!(theta_k.as_algebraic().compare(cert.eigenvalue) == 0)) fail("stored eigenvalue value");
  FieldElem th = FieldElem::generator(K);
  bool nonzero = false;
  for (const FieldElem& c : cert.eigenvector) nonzero = nonzero || !c.is_zero();
  if (!nonzero) fail("eigenvector is zero");
  for (int i = 0; i < m; ++i) {
    FieldElem row_q = FieldElem::from_rational(K, Rat(0));
    FieldElem row_sk = FieldElem::from_rational(K, Rat(0));
    for (int j = 0; j < m; ++j) {
      row_q = row_q + cert.q.at(i, j) * cert.eigenvector[j];
      row_sk = row_sk + cert.qk.at(i, j) * cert.eigenvector[j];
    }
    if (!(row_q == th * cert.eigenvector[i])) fail("eigenvector identity for Q");
    if (!(row_sk == theta_k * cert.eigenvector[i])) fail("eigenvector identity for S_k");
    if (cert.eigenvector[i].sign() <= 0) fail("eigenvector is not strictly positive");
  }
  if (cert.chart_a != skew_chart_value(cert.k)) fail("chart value for k mod 6");
  RatPoly expect = Rat(1) / Rat(cert.eigen_minpoly.lead()) * to_rat(cert.eigen_minpoly);
  RatPoly lin{Rat(-cert.chart_a), Rat(1)};
  for (int i = 0; i < cert.excess; ++i) expect = expect * lin;
  if (cert.qk.char_poly() != expect) fail("characteristic polynomial of S_k");
  if (clear_denominators(expect) != cert.charpoly_qk) fail("stored charpoly of S_k");
}

inline SkewPowerCertificate salem_certificate(const IntPoly& p, const Int& entry_floor,
                                              long long search_bound = 6,
                                              long long max_power = 10000) {
  auto stage = [](const char* name, auto&& fn) {
    try {
      return fn();
    } catch (const search_exhausted& e) {
      throw search_exhausted(std::string(name) + ": " + e.what());
    } catch (const precondition_error& e) {
      throw precondition_error(std::string(name) + ": " + e.what());
    }
  };

  SalemClassification cls = stage("classify", [&] { return classify_salem(p); });
  if (cls.verdict == SalemVerdict::NotSalem)
    throw precondition_error("classify: not a Salem or quadratic reciprocal unit polynomial (" +
                             cls.reason + ")");
  IntPoly g = stage("trace", [&] { return trace_polynomial(p); });
  RealizeResult base = stage("realize", [&] { return realize_symmetric(g, 2, search_bound); });
  AlgebraicReal theta = isolate_roots(g).back();
  if (theta.compare(Rat(2)) <= 0) throw internal_error("trace root not above 2");
  Positivized pos = stage("positivize", [&] { return positivize(base.Q, theta); });
  BlockCompanion blk = stage("block", [&] { return build_block(pos.Q); });
  IntegralityCertificate integ =
      stage("integrality", [&] { return integrality_exponent(blk); });
  long long k = stage("positivity", [&] {
    return positivity_exponent(pos.Q, theta, integ.exponent, entry_floor, max_power);
  });

  SkewPowerCertificate cert{p,
                            cls.verdict,
                            g,
                            base.Q,
                            base.excess,
                            pos.rotation,
                            pos.Q,
                            integ,
                            k,
                            q_sequence(pos.Q, k).second,
                            AlgebraicReal(),
                            IntPoly(),
                            FieldVector(),
                            IntPoly(),
                            skew_chart_value(k),
                            entry_floor,
                            search_bound,
                            max_power};

  FieldPtr K = NumberField::make(theta);
  cert.eigenvector = eigenvector_exact(pos.Q, K);
  FieldElem theta_k = chebyshev_power_sum(K, k);
  cert.eigenvalue = theta_k.as_algebraic();
  cert.eigen_minpoly = cert.eigenvalue.minpoly();

  // eigenspace stability: S_k v = (lambda^k + lambda^-k) v exactly
  const int m = cert.qk.rows();
  for (int i = 0; i < m; ++i) {
    FieldElem lhs = FieldElem::from_rational(K, Rat(0));
    for (int j = 0; j < m; ++j) lhs = lhs + cert.qk.at(i, j) * cert.eigenvector[j];
    if (!(lhs == theta_k * cert.eigenvector[i]))
      throw internal_error("certificate: eigenvector is not preserved by S_k");
  }
  // chart: char(S_k) = g_k (x - a)^excess
  RatPoly expect = Rat(1) / Rat(cert.eigen_minpoly.lead()) * to_rat(cert.eigen_minpoly);
  RatPoly lin{Rat(-cert.chart_a), Rat(1)};
  for (int i = 0; i < cert.excess; ++i) expect = expect * lin;
  if (cert.qk.char_poly() != expect)
    throw internal_error("certificate: characteristic polynomial of S_k violates the chart");
  cert.charpoly_qk = clear_denominators(expect);
  return cert;
}

}  // namespace salempa
