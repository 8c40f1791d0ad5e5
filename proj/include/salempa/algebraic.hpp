#pragma once

// Real algebraic numbers as (irreducible primitive minimal polynomial,
// isolating rational interval). Root isolation runs a Sturm-chain bisection
// on each irreducible factor, so every interval endpoint stays rational and
// every sign decision is exact. Refinement is pure: enclosures are
// recomputed by deterministic bisection from the stored interval, which
// keeps values immutable and safe to share.

#include <functional>
#include <string>
#include <utility>
#include <vector>

#include "salempa/factor.hpp"
#include "salempa/poly.hpp"
#include "salempa/rational.hpp"

namespace salempa {

// Sturm chain with primitive integer entries. Rational remainders are
// rescaled by positive factors only, so sign variation counts are exact.
inline std::vector<IntPoly> sturm_chain(const IntPoly& f) {
  std::vector<IntPoly> chain;
  chain.push_back(primitive_part(f));
  IntPoly d = primitive_part(f.derivative());
  if (d.is_zero()) return chain;
  chain.push_back(d);
  while (true) {
    const IntPoly& a = chain[chain.size() - 2];
    const IntPoly& b = chain.back();
    RatPoly r = divmod(to_rat(a), to_rat(b)).second;
    if (r.is_zero()) break;
    // normalize by a positive rational: divide by |content|, keep sign
    IntPoly ri = clear_denominators(r);
    if ((r.lead() < 0) != (ri.lead() < 0)) ri = -ri;
    chain.push_back(-ri);
  }
  return chain;
}

inline int sturm_variations(const std::vector<IntPoly>& chain, const Rat& x) {
  int vars = 0, prev = 0;
  for (const IntPoly& g : chain) {
    int s = sign_of(g.eval(x));
    if (s == 0) continue;
    if (prev != 0 && s != prev) ++vars;
    prev = s;
  }
  return vars;
}

// Number of distinct real roots in (a, b]; requires f(a) != 0 and f(b) != 0.
inline int sturm_count(const std::vector<IntPoly>& chain, const Rat& a, const Rat& b) {
  return sturm_variations(chain, a) - sturm_variations(chain, b);
}

// 1 + max |a_i| / |lead|, an upper bound on the absolute value of any root.
inline Rat cauchy_root_bound(const IntPoly& f) {
  Rat m = 0;
  for (int i = 0; i < f.degree(); ++i) {
    Rat v = abs_of(Rat(f.coeff(i)));
    if (v > m) m = v;
  }
  return 1 + m / abs_of(Rat(f.lead()));
}

class AlgebraicReal {
 public:
  AlgebraicReal() : minpoly_{Int(0), Int(1)}, lo_(0), hi_(0) {}

  static AlgebraicReal from_rational(const Rat& r) {
    AlgebraicReal a;
    a.minpoly_ = IntPoly{-rat_num(r), rat_den(r)};
    a.lo_ = a.hi_ = r;
    return a;
  }

  // mp must be primitive irreducible with positive leading coefficient and
  // have exactly one (simple) root in [lo, hi], signs differing at the ends.
  static AlgebraicReal from_isolated_root(IntPoly mp, Rat lo, Rat hi) {
    if (mp.degree() < 1) throw precondition_error("minimal polynomial must have degree >= 1");
    if (mp.degree() == 1) return from_rational(Rat(-mp.coeff(0), mp.coeff(1)));
    int sl = sign_of(mp.eval(lo)), sh = sign_of(mp.eval(hi));
    if (sl == 0 || sh == 0 || sl == sh)
      throw precondition_error("interval does not isolate a root by sign change");
    AlgebraicReal a;
    a.minpoly_ = std::move(mp);
    a.lo_ = std::move(lo);
    a.hi_ = std::move(hi);
    return a;
  }

  const IntPoly& minpoly() const { return minpoly_; }
  RatInterval interval() const { return RatInterval(lo_, hi_); }
  bool is_rational() const { return minpoly_.degree() == 1; }
  Rat rational_value() const {
    if (!is_rational()) throw precondition_error("not a rational value");
    return lo_;
  }

  // Enclosure of width at most 2^-bits, always inside the stored interval
  // and shrinking monotonically with bits.
  RatInterval enclosure(int bits) const {
    if (is_rational()) return RatInterval::point(lo_);
    Rat target = pow2_inv(bits);
    Rat l = lo_, h = hi_;
    int sl = sign_of(minpoly_.eval(l));
    while (h - l > target) {
      Rat mid = (l + h) / 2;
      int sm = sign_of(minpoly_.eval(mid));
      if (sm == 0) throw internal_error("rational root of an irreducible polynomial");
      if (sm == sl)
        l = mid;
      else
        h = mid;
    }
    return RatInterval(l, h);
  }

  int sign() const {
    if (is_rational()) return sign_of(lo_);
    return -compare_rational_to_root(Rat(0));
  }

  // Sign of theta - q; exact, no iteration needed.
  int compare(const Rat& q) const {
    if (is_rational()) return lo_ < q ? -1 : (lo_ > q ? 1 : 0);
    return -compare_rational_to_root(q);
  }

  int compare(const AlgebraicReal& o) const {
    if (is_rational() && o.is_rational())
      return lo_ < o.lo_ ? -1 : (lo_ > o.lo_ ? 1 : 0);
    if (is_rational()) return -o.compare(lo_);
    if (o.is_rational()) return compare(o.lo_);
    Rat l1 = lo_, h1 = hi_, l2 = o.lo_, h2 = o.hi_;
    const bool same_poly = (minpoly_ == o.minpoly_);
    auto chain = sturm_chain(minpoly_);
    while (true) {
      if (h1 < l2) return -1;
      if (h2 < l1) return 1;
      if (same_poly) {
        // Overlapping isolating intervals of the same irreducible polynomial
        // describe the same root iff the overlap still contains a root.
        Rat a = std::max(l1, l2), b = std::min(h1, h2);
        if (a < b && sturm_count(chain, a, b) == 1) return 0;
        if (a == b) {
          // touching endpoints; a rational point is never a root here
        }
      }
      bisect_step(minpoly_, l1, h1);
      bisect_step(o.minpoly_, l2, h2);
    }
  }

  bool operator==(const AlgebraicReal& o) const { return compare(o) == 0; }
  bool operator<(const AlgebraicReal& o) const { return compare(o) < 0; }

  // Exact sign of g(theta) for rational-coefficient g.
  int sign_at(const RatPoly& g) const {
    if (g.is_zero()) return 0;
    if (is_rational()) return sign_of(g.eval(lo_));
    RatPoly r = divmod(g, to_rat(minpoly_)).second;
    if (r.is_zero()) return 0;
    for (int bits = 8;; bits *= 2) {
      int s = r.eval_interval(enclosure(bits)).definite_sign();
      if (s != 0) return s;
      if (bits > (1 << 22)) throw internal_error("sign_at: refinement failed to separate");
    }
  }
  int sign_at(const IntPoly& g) const { return sign_at(to_rat(g)); }

  AlgebraicReal negated() const {
    if (is_rational()) return from_rational(-lo_);
    std::vector<Int> c(minpoly_.coeffs());
    for (size_t i = 0; i < c.size(); i += 2) c[i] = -c[i];  // m(-x) up to sign
    IntPoly m(std::move(c));
    if (m.lead() < 0) m = -m;
    AlgebraicReal r;
    r.minpoly_ = std::move(m);
    r.lo_ = -hi_;
    r.hi_ = -lo_;
    return r;
  }

  std::string decimal(int digits) const {
    return decimal_string(enclosure(4 * (digits + 2)).mid(), digits);
  }

 private:
  IntPoly minpoly_;
  Rat lo_, hi_;

  // sign of q - theta for lo < q, i.e. places q against the root.
  int compare_rational_to_root(const Rat& q) const {
    if (q <= lo_) return -1;
    if (q >= hi_) return 1;
    int sq = sign_of(minpoly_.eval(q));
    if (sq == 0) throw internal_error("rational root of an irreducible polynomial");
    int sl = sign_of(minpoly_.eval(lo_));
    return (sq == sl) ? -1 : 1;  // same sign as at lo: root is still to the right
  }

  static void bisect_step(const IntPoly& mp, Rat& l, Rat& h) {
    Rat mid = (l + h) / 2;
    int sm = sign_of(mp.eval(mid));
    if (sm == 0) throw internal_error("rational root of an irreducible polynomial");
    if (sm == sign_of(mp.eval(l)))
      l = mid;
    else
      h = mid;
  }
};

namespace detail {

// Isolating intervals for all real roots of an irreducible polynomial of
// degree >= 2, in ascending order, each with a strict sign change.
inline std::vector<std::pair<Rat, Rat>> isolate_irreducible(const IntPoly& f) {
  auto chain = sturm_chain(f);
  Rat bound = cauchy_root_bound(f);
  std::vector<std::pair<Rat, Rat>> out;
  // rational endpoints of an irreducible deg >= 2 polynomial are never roots
  std::function<void(const Rat&, const Rat&, int)> go = [&](const Rat& a, const Rat& b, int count) {
    if (count == 0) return;
    if (count == 1) {
      out.emplace_back(a, b);
      return;
    }
    Rat mid = (a + b) / 2;
    int left = sturm_count(chain, a, mid);
    go(a, mid, left);
    go(mid, b, count - left);
  };
  go(-bound, bound, sturm_count(chain, -bound, bound));
  return out;
}

}  // namespace detail

// All distinct real roots of p, in ascending order, multiplicities
// collapsed. Each root carries its true (irreducible) minimal polynomial.
inline std::vector<AlgebraicReal> isolate_roots(const IntPoly& p) {
  if (p.is_zero()) throw precondition_error("zero polynomial");
  if (p.degree() == 0) return {};
  std::vector<AlgebraicReal> roots;
  for (const FactorMult& fm : factor_int_poly(p)) {
    const IntPoly& f = fm.factor;
    if (f.degree() == 1) {
      roots.push_back(AlgebraicReal::from_rational(Rat(-f.coeff(0), f.coeff(1))));
    } else {
      for (auto& [lo, hi] : detail::isolate_irreducible(f))
        roots.push_back(AlgebraicReal::from_isolated_root(f, lo, hi));
    }
  }
  std::sort(roots.begin(), roots.end());
  return roots;
}

inline std::vector<AlgebraicReal> isolate_roots(const RatPoly& p) {
  return isolate_roots(clear_denominators(p));
}

// True when every root of p (over C) is real: each irreducible factor has
// as many real roots as its degree.
inline bool is_totally_real(const IntPoly& p) {
  if (p.is_zero() || p.degree() < 1) return false;
  for (const FactorMult& fm : factor_int_poly(p)) {
    const IntPoly& f = fm.factor;
    if (f.degree() == 1) continue;
    if (static_cast<int>(detail::isolate_irreducible(f).size()) != f.degree()) return false;
  }
  return true;
}

// Pin down which root of `annihilator` a value is, given a refinable
// enclosure of the value. Returns the root as an AlgebraicReal with its
// irreducible minimal polynomial.
inline AlgebraicReal identify_root(const IntPoly& annihilator,
                                   const std::function<RatInterval(int)>& enclose) {
  auto factors = factor_int_poly(annihilator);
  std::vector<std::vector<IntPoly>> chains;
  chains.reserve(factors.size());
  for (const auto& fm : factors) chains.push_back(sturm_chain(fm.factor));
  for (int bits = 8;; bits *= 2) {
    RatInterval J = enclose(bits);
    if (J.lo == J.hi) {
      for (const auto& fm : factors)
        if (fm.factor.eval(J.lo) == 0) return AlgebraicReal::from_rational(J.lo);
      throw precondition_error("identify_root: enclosed value is not a root");
    }
    int total = 0;
    const IntPoly* hit = nullptr;
    bool endpoint_root = false;
    for (size_t i = 0; i < factors.size(); ++i) {
      const IntPoly& f = factors[i].factor;
      if (f.eval(J.lo) == 0 || f.eval(J.hi) == 0) {
        endpoint_root = true;  // shrink further until endpoints clear the root
        break;
      }
      int c = sturm_count(chains[i], J.lo, J.hi);
      total += c;
      if (c == 1) hit = &f;
    }
    if (!endpoint_root && total == 1 && hit) {
      if (hit->degree() == 1) return AlgebraicReal::from_rational(Rat(-hit->coeff(0), hit->coeff(1)));
      return AlgebraicReal::from_isolated_root(*hit, J.lo, J.hi);
    }
    if (!endpoint_root && total == 0)
      throw precondition_error("identify_root: enclosed value is not a root");
    if (bits > (1 << 22)) throw internal_error("identify_root: no convergence");
  }
}

}  // namespace salempa
