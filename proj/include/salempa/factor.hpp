#pragma once

// Rational (Z[x]) polynomial factorization at desk scale: squarefree
// decomposition (Yun), Berlekamp factorization modulo a small prime,
// quadratic Hensel lifting, and subset recombination against a
// Landau-Mignotte coefficient bound. Deterministic throughout: fixed prime
// scan, sorted modular factors, subsets in fixed order.

#include <algorithm>
#include <utility>
#include <vector>

#include "salempa/poly.hpp"
#include "salempa/rational.hpp"

namespace salempa {
namespace detail {

using ZpPoly = std::vector<long long>;  // coefficients in [0, p), lowest first

inline void zp_trim(ZpPoly& a) {
  while (!a.empty() && a.back() == 0) a.pop_back();
}
inline int zp_deg(const ZpPoly& a) { return static_cast<int>(a.size()) - 1; }

inline long long zp_inv(long long a, long long p) {
  long long t = 0, nt = 1, r = p, nr = a % p;
  while (nr != 0) {
    long long q = r / nr;
    t -= q * nt; std::swap(t, nt);
    r -= q * nr; std::swap(r, nr);
  }
  if (r != 1) throw internal_error("zp_inv: not invertible");
  return ((t % p) + p) % p;
}

inline ZpPoly zp_mul(const ZpPoly& a, const ZpPoly& b, long long p) {
  if (a.empty() || b.empty()) return {};
  ZpPoly r(a.size() + b.size() - 1, 0);
  for (size_t i = 0; i < a.size(); ++i)
    for (size_t j = 0; j < b.size(); ++j) r[i + j] = (r[i + j] + a[i] * b[j]) % p;
  zp_trim(r);
  return r;
}

inline ZpPoly zp_sub(ZpPoly a, const ZpPoly& b, long long p) {
  if (a.size() < b.size()) a.resize(b.size(), 0);
  for (size_t i = 0; i < b.size(); ++i) a[i] = ((a[i] - b[i]) % p + p) % p;
  zp_trim(a);
  return a;
}

inline std::pair<ZpPoly, ZpPoly> zp_divmod(ZpPoly a, const ZpPoly& b, long long p) {
  if (b.empty()) throw precondition_error("zp division by zero");
  long long linv = zp_inv(b.back(), p);
  int db = zp_deg(b);
  ZpPoly q(std::max<int>(zp_deg(a) - db + 1, 0), 0);
  for (int d = zp_deg(a); d >= db; --d) {
    long long f = a[d] * linv % p;
    if (f == 0) continue;
    q[d - db] = f;
    for (int i = 0; i <= db; ++i) a[d - db + i] = ((a[d - db + i] - f * b[i]) % p + p) % p;
  }
  zp_trim(a);
  return {q, a};
}

inline ZpPoly zp_monic(ZpPoly a, long long p) {
  if (a.empty()) return a;
  long long linv = zp_inv(a.back(), p);
  for (long long& c : a) c = c * linv % p;
  return a;
}

inline ZpPoly zp_gcd(ZpPoly a, ZpPoly b, long long p) {
  while (!b.empty()) {
    ZpPoly r = zp_divmod(a, b, p).second;
    a = std::move(b);
    b = std::move(r);
  }
  return zp_monic(a, p);
}

// (g, s, t) with s*a + t*b = g = gcd, g monic.
inline void zp_ext_gcd(ZpPoly a, ZpPoly b, long long p, ZpPoly& g, ZpPoly& s, ZpPoly& t) {
  ZpPoly s0{1}, s1, t0, t1{1};
  while (!b.empty()) {
    auto [q, r] = zp_divmod(a, b, p);
    a = std::move(b);
    b = std::move(r);
    ZpPoly ns = zp_sub(s0, zp_mul(q, s1, p), p);
    s0 = std::move(s1); s1 = std::move(ns);
    ZpPoly nt = zp_sub(t0, zp_mul(q, t1, p), p);
    t0 = std::move(t1); t1 = std::move(nt);
  }
  long long linv = zp_inv(a.back(), p);
  auto scale = [&](ZpPoly v) {
    for (long long& c : v) c = c * linv % p;
    return v;
  };
  g = scale(std::move(a));
  s = scale(std::move(s0));
  t = scale(std::move(t0));
}

inline ZpPoly zp_powmod_x(long long e, const ZpPoly& f, long long p) {
  // x^e mod f by square and multiply
  ZpPoly result{1}, base{0, 1};
  base = zp_divmod(base, f, p).second;
  while (e) {
    if (e & 1) result = zp_divmod(zp_mul(result, base, p), f, p).second;
    base = zp_divmod(zp_mul(base, base, p), f, p).second;
    e >>= 1;
  }
  return result;
}

inline ZpPoly to_zp(const IntPoly& f, long long p) {
  ZpPoly r;
  r.reserve(f.coeffs().size());
  for (const Int& c : f.coeffs()) {
    Int m = c % p;
    if (m < 0) m += p;
    r.push_back(static_cast<long long>(m));
  }
  zp_trim(r);
  return r;
}

// Berlekamp factorization of a monic squarefree polynomial mod p.
inline std::vector<ZpPoly> berlekamp(const ZpPoly& f, long long p) {
  const int n = zp_deg(f);
  if (n == 1) return {f};
  // Frobenius matrix: row i = coefficients of x^{i*p} mod f.
  std::vector<ZpPoly> frob(n);
  ZpPoly xp = zp_powmod_x(p, f, p);
  ZpPoly cur{1};
  for (int i = 0; i < n; ++i) {
    frob[i] = cur;
    frob[i].resize(n, 0);
    cur = zp_divmod(zp_mul(cur, xp, p), f, p).second;
  }
  // Kernel of (Frobenius - I) acting on coefficient rows.
  std::vector<std::vector<long long>> m(n, std::vector<long long>(n, 0));
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) m[i][j] = frob[i][j];
    m[i][i] = ((m[i][i] - 1) % p + p) % p;
  }
  // Row-reduce m^T so kernel vectors v satisfy v * (Frob - I) = 0.
  std::vector<std::vector<long long>> a(n, std::vector<long long>(n, 0));
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) a[j][i] = m[i][j];
  std::vector<int> pivot_col(n, -1);
  int rank = 0;
  for (int col = 0; col < n && rank < n; ++col) {
    int piv = -1;
    for (int r = rank; r < n; ++r)
      if (a[r][col] != 0) { piv = r; break; }
    if (piv < 0) continue;
    std::swap(a[rank], a[piv]);
    long long inv = zp_inv(a[rank][col], p);
    for (int j = 0; j < n; ++j) a[rank][j] = a[rank][j] * inv % p;
    for (int r = 0; r < n; ++r) {
      if (r == rank || a[r][col] == 0) continue;
      long long fmul = a[r][col];
      for (int j = 0; j < n; ++j) a[r][j] = ((a[r][j] - fmul * a[rank][j]) % p + p) % p;
    }
    pivot_col[rank++] = col;
  }
  std::vector<ZpPoly> basis;
  std::vector<char> is_pivot(n, 0);
  for (int r = 0; r < rank; ++r) is_pivot[pivot_col[r]] = 1;
  for (int col = 0; col < n; ++col) {
    if (is_pivot[col]) continue;
    ZpPoly v(n, 0);
    v[col] = 1;
    for (int r = 0; r < rank; ++r) v[pivot_col[r]] = ((-a[r][col]) % p + p) % p;
    zp_trim(v);
    basis.push_back(std::move(v));
  }
  const size_t num_factors = basis.size();
  std::vector<ZpPoly> factors{f};
  if (num_factors == 1) return factors;
  for (const ZpPoly& v : basis) {
    if (zp_deg(v) < 1) continue;  // the constant kernel vector splits nothing
    for (long long c = 0; c < p && factors.size() < num_factors; ++c) {
      ZpPoly vc = v;
      vc.resize(std::max<size_t>(vc.size(), 1), 0);
      vc[0] = ((vc[0] - c) % p + p) % p;
      zp_trim(vc);
      std::vector<ZpPoly> next;
      for (const ZpPoly& u : factors) {
        if (zp_deg(u) <= 1) { next.push_back(u); continue; }
        ZpPoly g = zp_gcd(u, vc, p);
        if (zp_deg(g) > 0 && zp_deg(g) < zp_deg(u)) {
          next.push_back(g);
          next.push_back(zp_divmod(u, g, p).first);
        } else {
          next.push_back(u);
        }
      }
      factors = std::move(next);
    }
    if (factors.size() == num_factors) break;
  }
  if (factors.size() != num_factors) throw internal_error("berlekamp: split incomplete");
  std::sort(factors.begin(), factors.end(), [](const ZpPoly& a2, const ZpPoly& b2) {
    if (a2.size() != b2.size()) return a2.size() < b2.size();
    return std::lexicographical_compare(a2.rbegin(), a2.rend(), b2.rbegin(), b2.rend());
  });
  return factors;
}

// ----- lifted (big-modulus) polynomial helpers --------------------------

using ModPoly = std::vector<Int>;  // coefficients in [0, m)

inline void mod_trim(ModPoly& a) {
  while (!a.empty() && a.back() == 0) a.pop_back();
}
inline Int mod_norm(Int v, const Int& m) {
  v %= m;
  if (v < 0) v += m;
  return v;
}
inline ModPoly mod_mul(const ModPoly& a, const ModPoly& b, const Int& m) {
  if (a.empty() || b.empty()) return {};
  ModPoly r(a.size() + b.size() - 1, Int(0));
  for (size_t i = 0; i < a.size(); ++i)
    for (size_t j = 0; j < b.size(); ++j) r[i + j] = (r[i + j] + a[i] * b[j]) % m;
  mod_trim(r);
  return r;
}
inline ModPoly mod_add(ModPoly a, const ModPoly& b, const Int& m) {
  if (a.size() < b.size()) a.resize(b.size(), Int(0));
  for (size_t i = 0; i < b.size(); ++i) a[i] = (a[i] + b[i]) % m;
  mod_trim(a);
  return a;
}
inline ModPoly mod_sub(ModPoly a, const ModPoly& b, const Int& m) {
  if (a.size() < b.size()) a.resize(b.size(), Int(0));
  for (size_t i = 0; i < b.size(); ++i) a[i] = mod_norm(a[i] - b[i], m);
  mod_trim(a);
  return a;
}
// Division by a monic divisor.
inline std::pair<ModPoly, ModPoly> mod_divmod(ModPoly a, const ModPoly& b, const Int& m) {
  if (b.empty() || b.back() != 1) throw internal_error("mod_divmod: divisor must be monic");
  int db = static_cast<int>(b.size()) - 1;
  ModPoly q(std::max<int>(static_cast<int>(a.size()) - db, 0), Int(0));
  for (int d = static_cast<int>(a.size()) - 1; d >= db; --d) {
    Int f = a[d];
    if (f == 0) continue;
    q[d - db] = f;
    for (int i = 0; i <= db; ++i) a[d - db + i] = mod_norm(a[d - db + i] - f * b[i], m);
  }
  mod_trim(a);
  mod_trim(q);
  return {q, a};
}

inline ModPoly mod_from_int(const IntPoly& f, const Int& m) {
  ModPoly r;
  r.reserve(f.coeffs().size());
  for (const Int& c : f.coeffs()) r.push_back(mod_norm(c, m));
  mod_trim(r);
  return r;
}
inline ModPoly mod_from_zp(const ZpPoly& f) {
  return ModPoly(f.begin(), f.end());
}

// Symmetric representative in (-m/2, m/2].
inline IntPoly mod_to_symmetric(const ModPoly& a, const Int& m) {
  std::vector<Int> c;
  c.reserve(a.size());
  Int half = m / 2;
  for (const Int& v : a) c.push_back(v > half ? Int(v - m) : v);
  return IntPoly(std::move(c));
}

// One quadratic Hensel step: f = g*h and s*g + t*h = 1 (mod m) lift to
// the same identities mod m^2. All of g, h monic; deg s < deg h, deg t < deg g.
inline void hensel_step(const ModPoly& f, ModPoly& g, ModPoly& h, ModPoly& s, ModPoly& t,
                        const Int& m) {
  const Int m2 = m * m;
  ModPoly e = mod_sub(f, mod_mul(g, h, m2), m2);
  auto [q, r] = mod_divmod(mod_mul(s, e, m2), h, m2);
  ModPoly g1 = mod_add(mod_add(g, mod_mul(t, e, m2), m2), mod_mul(q, g, m2), m2);
  ModPoly h1 = mod_add(h, r, m2);
  ModPoly b = mod_sub(mod_add(mod_mul(s, g1, m2), mod_mul(t, h1, m2), m2), ModPoly{Int(1)}, m2);
  auto [c, d] = mod_divmod(mod_mul(s, b, m2), h1, m2);
  ModPoly s1 = mod_sub(s, d, m2);
  ModPoly t1 = mod_sub(mod_sub(t, mod_mul(t, b, m2), m2), mod_mul(c, g1, m2), m2);
  g = std::move(g1);
  h = std::move(h1);
  s = std::move(s1);
  t = std::move(t1);
}

// Lift the factorization f = prod(factors) from mod p to mod p^(2^rounds),
// recursively splitting the factor list in half. f and all factors monic.
inline void hensel_lift_list(const IntPoly& f, const std::vector<ZpPoly>& zfactors,
                             long long p, int rounds, const Int& final_mod,
                             std::vector<ModPoly>& out) {
  if (zfactors.size() == 1) {
    out.push_back(mod_from_int(f, final_mod));
    return;
  }
  const size_t half = zfactors.size() / 2;
  std::vector<ZpPoly> left(zfactors.begin(), zfactors.begin() + half);
  std::vector<ZpPoly> right(zfactors.begin() + half, zfactors.end());
  ZpPoly gz{1}, hz{1};
  for (const ZpPoly& w : left) gz = zp_mul(gz, w, p);
  for (const ZpPoly& w : right) hz = zp_mul(hz, w, p);
  ZpPoly one, sz, tz;
  zp_ext_gcd(gz, hz, p, one, sz, tz);
  if (zp_deg(one) != 0) throw internal_error("hensel: factors not coprime mod p");
  ModPoly g = mod_from_zp(gz), h = mod_from_zp(hz), s = mod_from_zp(sz), t = mod_from_zp(tz);
  Int m(p);
  ModPoly fm = mod_from_int(f, m * m);
  for (int i = 0; i < rounds; ++i) {
    ModPoly ftarget = mod_from_int(f, m * m);
    hensel_step(ftarget, g, h, s, t, m);
    m *= m;
  }
  IntPoly gi = mod_to_symmetric(g, m);
  IntPoly hi = mod_to_symmetric(h, m);
  // Make representatives monic integer polynomials for the recursion.
  hensel_lift_list(gi, left, p, rounds, final_mod, out);
  hensel_lift_list(hi, right, p, rounds, final_mod, out);
}

// Factor a monic squarefree integer polynomial into monic irreducibles.
inline std::vector<IntPoly> zassenhaus_monic(const IntPoly& f) {
  const int n = f.degree();
  if (n <= 1) return {f};
  // Prime with squarefree reduction. Bad primes divide the discriminant,
  // so the scan terminates quickly in practice.
  long long p = 0;
  ZpPoly fp;
  for (long long cand = 3;; cand += 2) {
    bool prime = cand > 2;
    for (long long d = 3; d * d <= cand; d += 2)
      if (cand % d == 0) { prime = false; break; }
    if (!prime) continue;
    fp = to_zp(f, cand);
    if (zp_deg(fp) != n) continue;  // p divides the leading coefficient
    ZpPoly der;
    for (size_t i = 1; i < fp.size(); ++i)
      der.push_back(fp[i] * (static_cast<long long>(i) % cand) % cand);
    zp_trim(der);
    if (zp_deg(zp_gcd(fp, der, cand)) == 0) { p = cand; break; }
    if (cand > 20000) throw internal_error("zassenhaus: no good prime found");
  }
  std::vector<ZpPoly> zfactors = berlekamp(zp_monic(fp, p), p);
  if (zfactors.size() == 1) return {f};

  // Landau-Mignotte style bound on coefficients of any monic factor.
  Int norm2 = 0;
  for (const Int& c : f.coeffs()) norm2 += c * c;
  Int bound = (isqrt_floor(norm2) + 1) << static_cast<unsigned>(n);
  Int modulus(p);
  int rounds = 0;
  while (modulus <= 2 * bound) {
    modulus *= modulus;
    ++rounds;
  }
  std::vector<ModPoly> lifted;
  hensel_lift_list(f, zfactors, p, rounds, modulus, lifted);

  // Subset recombination, smallest subsets first.
  std::vector<IntPoly> result;
  IntPoly rem = f;
  std::vector<size_t> live(lifted.size());
  for (size_t i = 0; i < live.size(); ++i) live[i] = i;
  size_t take = 1;
  while (2 * take <= live.size()) {
    bool found = false;
    std::vector<size_t> idx(take);
    for (size_t i = 0; i < take; ++i) idx[i] = i;
    while (true) {
      ModPoly prod{Int(1)};
      for (size_t i : idx) prod = mod_mul(prod, lifted[live[i]], modulus);
      IntPoly cand = mod_to_symmetric(prod, modulus);
      if (!cand.is_zero() && cand.is_monic() && divides(to_rat(cand), to_rat(rem))) {
        RatPoly q = divide_exact(to_rat(rem), to_rat(cand));
        result.push_back(cand);
        rem = clear_denominators(q);
        std::vector<size_t> next_live;
        for (size_t i = 0, k = 0; i < live.size(); ++i) {
          if (k < idx.size() && idx[k] == i) { ++k; continue; }
          next_live.push_back(live[i]);
        }
        live = std::move(next_live);
        found = true;
        break;
      }
      // next subset of the same cardinality
      int pos = static_cast<int>(take) - 1;
      while (pos >= 0 && idx[pos] == live.size() - take + pos) --pos;
      if (pos < 0) break;
      ++idx[pos];
      for (size_t i = pos + 1; i < take; ++i) idx[i] = idx[i - 1] + 1;
    }
    if (!found) ++take;
  }
  if (rem.degree() > 0) result.push_back(rem);
  return result;
}

}  // namespace detail

struct FactorMult {
  IntPoly factor;  // primitive, irreducible, positive leading coefficient
  int multiplicity;
};

// Factor a primitive squarefree polynomial with positive leading coefficient.
inline std::vector<IntPoly> factor_squarefree(const IntPoly& f) {
  if (f.is_zero() || f.degree() < 1)
    throw precondition_error("factor_squarefree: degree >= 1 required");
  if (f.degree() == 1) return {f};
  const Int lc = f.lead();
  if (lc == 1) {
    auto fs = detail::zassenhaus_monic(f);
    std::sort(fs.begin(), fs.end(), [](const IntPoly& a, const IntPoly& b) {
      if (a.degree() != b.degree()) return a.degree() < b.degree();
      return std::lexicographical_compare(a.coeffs().rbegin(), a.coeffs().rend(),
                                          b.coeffs().rbegin(), b.coeffs().rend());
    });
    return fs;
  }
  // Monic reduction: F(x) = lc^(n-1) f(x/lc) is monic; map factors back.
  const int n = f.degree();
  std::vector<Int> fc(n + 1);
  fc[n] = 1;
  Int power = 1;  // lc^(n-1-i)
  for (int i = n - 1; i >= 0; --i) {
    fc[i] = f.coeff(i) * power;
    power *= lc;
  }
  IntPoly monic_form{std::vector<Int>(fc)};
  auto monic_factors = detail::zassenhaus_monic(monic_form);
  std::vector<IntPoly> out;
  IntPoly check = IntPoly::constant(Int(1));
  for (const IntPoly& g : monic_factors) {
    std::vector<Int> gc(g.coeffs());
    Int lp = 1;
    for (size_t i = 0; i < gc.size(); ++i) {
      gc[i] *= lp;
      lp *= lc;
    }
    IntPoly back = primitive_part(IntPoly(std::move(gc)));
    check = check * back;
    out.push_back(std::move(back));
  }
  if (primitive_part(f) != primitive_part(check))
    throw internal_error("factor_squarefree: monic reduction mismatch");
  std::sort(out.begin(), out.end(), [](const IntPoly& a, const IntPoly& b) {
    if (a.degree() != b.degree()) return a.degree() < b.degree();
    return std::lexicographical_compare(a.coeffs().rbegin(), a.coeffs().rend(),
                                        b.coeffs().rbegin(), b.coeffs().rend());
  });
  return out;
}

// Full factorization into primitive irreducibles with multiplicities.
// The rational content and sign are discarded.
inline std::vector<FactorMult> factor_int_poly(const IntPoly& p) {
  if (p.is_zero()) throw precondition_error("factorization of zero polynomial");
  IntPoly f = primitive_part(p);
  if (f.degree() == 0) return {};
  std::vector<FactorMult> out;
  // Yun's squarefree decomposition over Q.
  RatPoly a = to_rat(f);
  RatPoly g = gcd_poly(a, a.derivative());
  RatPoly c = divide_exact(a, g);
  RatPoly d = divide_exact(a.derivative(), g) - c.derivative();
  int mult = 1;
  while (c.degree() > 0) {
    RatPoly pi = gcd_poly(c, d);
    if (pi.degree() > 0) {
      for (const IntPoly& irr : factor_squarefree(clear_denominators(pi)))
        out.push_back({irr, mult});
    }
    c = divide_exact(c, pi);
    d = divide_exact(d, pi) - c.derivative();
    ++mult;
  }
  std::sort(out.begin(), out.end(), [](const FactorMult& x, const FactorMult& y) {
    if (x.factor.degree() != y.factor.degree()) return x.factor.degree() < y.factor.degree();
    if (x.factor.coeffs() != y.factor.coeffs())
      return std::lexicographical_compare(x.factor.coeffs().rbegin(), x.factor.coeffs().rend(),
                                          y.factor.coeffs().rbegin(), y.factor.coeffs().rend());
    return x.multiplicity < y.multiplicity;
  });
  return out;
}

inline bool is_irreducible(const IntPoly& p) {
  if (p.is_zero() || p.degree() < 1) return false;
  auto fm = factor_int_poly(p);
  return fm.size() == 1 && fm[0].multiplicity == 1;
}

}  // namespace salempa
