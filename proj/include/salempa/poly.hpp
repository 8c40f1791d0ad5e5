#pragma once

// Dense univariate polynomials over exact coefficient rings. IntPoly is the
// workhorse (minimal polynomials, characteristic polynomials after clearing
// denominators); RatPoly backs field arithmetic and exact elimination.
//
// Coefficients are stored lowest degree first. The zero polynomial has an
// empty coefficient vector and degree() == -1.

#include <algorithm>
#include <cctype>
#include <initializer_list>
#include <string>
#include <string_view>
#include <vector>

#include "salempa/rational.hpp"

namespace salempa {

template <class T>
class Poly {
 public:
  Poly() = default;
  Poly(std::initializer_list<T> coeffs) : c_(coeffs) { trim(); }
  explicit Poly(std::vector<T> coeffs) : c_(std::move(coeffs)) { trim(); }

  static Poly zero() { return Poly(); }
  static Poly constant(const T& v) { return Poly(std::vector<T>{v}); }
  static Poly monomial(const T& v, int deg) {
    std::vector<T> c(deg + 1, T(0));
    c[deg] = v;
    return Poly(std::move(c));
  }
  static Poly x() { return monomial(T(1), 1); }

  int degree() const { return static_cast<int>(c_.size()) - 1; }
  bool is_zero() const { return c_.empty(); }
  const std::vector<T>& coeffs() const { return c_; }

  // Coefficient of x^k; zero beyond the degree.
  T coeff(int k) const {
    if (k < 0 || k > degree()) return T(0);
    return c_[k];
  }
  const T& lead() const {
    if (is_zero()) throw precondition_error("leading coefficient of zero polynomial");
    return c_.back();
  }
  bool is_monic() const { return !is_zero() && lead() == T(1); }

  bool operator==(const Poly& o) const { return c_ == o.c_; }
  bool operator!=(const Poly& o) const { return c_ != o.c_; }

  Poly operator-() const {
    std::vector<T> r(c_);
    for (T& v : r) v = -v;
    return Poly(std::move(r));
  }

  friend Poly operator+(const Poly& a, const Poly& b) {
    std::vector<T> r(std::max(a.c_.size(), b.c_.size()), T(0));
    for (size_t i = 0; i < a.c_.size(); ++i) r[i] += a.c_[i];
    for (size_t i = 0; i < b.c_.size(); ++i) r[i] += b.c_[i];
    return Poly(std::move(r));
  }
  friend Poly operator-(const Poly& a, const Poly& b) { return a + (-b); }
  friend Poly operator*(const Poly& a, const Poly& b) {
    if (a.is_zero() || b.is_zero()) return Poly();
    std::vector<T> r(a.c_.size() + b.c_.size() - 1, T(0));
    for (size_t i = 0; i < a.c_.size(); ++i)
      for (size_t j = 0; j < b.c_.size(); ++j) r[i + j] += a.c_[i] * b.c_[j];
    return Poly(std::move(r));
  }
  friend Poly operator*(const T& s, const Poly& a) {
    if (s == T(0)) return Poly();
    std::vector<T> r(a.c_);
    for (T& v : r) v *= s;
    return Poly(std::move(r));
  }

  // Multiply by x^k.
  Poly shifted(int k) const {
    if (is_zero()) return Poly();
    std::vector<T> r(c_.size() + k, T(0));
    std::copy(c_.begin(), c_.end(), r.begin() + k);
    return Poly(std::move(r));
  }

  Poly derivative() const {
    if (degree() <= 0) return Poly();
    std::vector<T> r(c_.size() - 1);
    for (size_t i = 1; i < c_.size(); ++i) r[i - 1] = T(static_cast<long>(i)) * c_[i];
    return Poly(std::move(r));
  }

  template <class U>
  U eval(const U& x) const {
    U acc(0);
    for (auto it = c_.rbegin(); it != c_.rend(); ++it) acc = acc * x + U(*it);
    return acc;
  }

  // Substitute another polynomial for x.
  Poly compose(const Poly& inner) const {
    Poly acc;
    for (auto it = c_.rbegin(); it != c_.rend(); ++it)
      acc = acc * inner + constant(*it);
    return acc;
  }

  // Horner over an interval; correct for any sign pattern.
  RatInterval eval_interval(const RatInterval& x) const {
    RatInterval acc = RatInterval::point(Rat(0));
    for (auto it = c_.rbegin(); it != c_.rend(); ++it)
      acc = acc * x + RatInterval::point(Rat(*it));
    return acc;
  }

  bool is_palindromic() const {
    for (int i = 0, j = degree(); i < j; ++i, --j)
      if (c_[i] != c_[j]) return false;
    return !is_zero();
  }

 private:
  std::vector<T> c_;
  void trim() {
    while (!c_.empty() && c_.back() == T(0)) c_.pop_back();
  }
};

using IntPoly = Poly<Int>;
using RatPoly = Poly<Rat>;

inline RatPoly to_rat(const IntPoly& p) {
  std::vector<Rat> c(p.coeffs().begin(), p.coeffs().end());
  return RatPoly(std::move(c));
}

// Primitive integer polynomial with positive leading coefficient equal to
// the input up to a positive rational factor.
inline IntPoly clear_denominators(const RatPoly& p) {
  if (p.is_zero()) return IntPoly();
  Int l = 1;
  for (const Rat& c : p.coeffs()) l = lcm_int(l, rat_den(c));
  std::vector<Int> ic;
  ic.reserve(p.coeffs().size());
  for (const Rat& c : p.coeffs()) ic.push_back(rat_num(c) * (l / rat_den(c)));
  Int g = 0;
  for (const Int& c : ic) g = gcd_int(g, c);
  if (ic.back() < 0) g = -g;
  for (Int& c : ic) c /= g;
  return IntPoly(std::move(ic));
}

inline Int content(const IntPoly& p) {
  Int g = 0;
  for (const Int& c : p.coeffs()) g = gcd_int(g, c);
  return g;
}

// Content stripped, sign normalized so the leading coefficient is positive.
inline IntPoly primitive_part(const IntPoly& p) {
  if (p.is_zero()) return IntPoly();
  Int g = content(p);
  if (p.lead() < 0) g = -g;
  std::vector<Int> c(p.coeffs());
  for (Int& v : c) v /= g;
  return IntPoly(std::move(c));
}

// Exact division over the rationals; throws if the remainder is nonzero.
inline RatPoly divide_exact(const RatPoly& a, const RatPoly& b) {
  if (b.is_zero()) throw precondition_error("division by zero polynomial");
  std::vector<Rat> rem(a.coeffs());
  std::vector<Rat> q(std::max<int>(a.degree() - b.degree() + 1, 0), Rat(0));
  int db = b.degree();
  for (int d = a.degree(); d >= db; --d) {
    if (rem[d] == 0) continue;
    Rat f = rem[d] / b.lead();
    q[d - db] = f;
    for (int i = 0; i <= db; ++i) rem[d - db + i] -= f * b.coeff(i);
  }
  for (const Rat& r : rem)
    if (r != 0) throw internal_error("divide_exact: nonzero remainder");
  return RatPoly(std::move(q));
}

inline std::pair<RatPoly, RatPoly> divmod(const RatPoly& a, const RatPoly& b) {
  if (b.is_zero()) throw precondition_error("division by zero polynomial");
  std::vector<Rat> rem(a.coeffs());
  std::vector<Rat> q(std::max<int>(a.degree() - b.degree() + 1, 0), Rat(0));
  int db = b.degree();
  for (int d = a.degree(); d >= db; --d) {
    if (rem[d] == 0) continue;
    Rat f = rem[d] / b.lead();
    q[d - db] = f;
    for (int i = 0; i <= db; ++i) rem[d - db + i] -= f * b.coeff(i);
  }
  return {RatPoly(std::move(q)), RatPoly(std::move(rem))};
}

inline bool divides(const RatPoly& b, const RatPoly& a) {
  if (a.is_zero()) return true;
  if (b.is_zero() || b.degree() > a.degree()) return false;
  return divmod(a, b).second.is_zero();
}

// Monic gcd over the rationals.
inline RatPoly gcd_poly(RatPoly a, RatPoly b) {
  while (!b.is_zero()) {
    RatPoly r = divmod(a, b).second;
    a = std::move(b);
    b = std::move(r);
  }
  if (a.is_zero()) return a;
  return Rat(1) / a.lead() * a;
}

inline IntPoly gcd_poly(const IntPoly& a, const IntPoly& b) {
  return clear_denominators(gcd_poly(to_rat(a), to_rat(b)));
}

// Product of the distinct irreducible factors, primitive with positive lead.
inline IntPoly squarefree_part(const IntPoly& p) {
  if (p.is_zero()) throw precondition_error("squarefree part of zero polynomial");
  if (p.degree() == 0) return IntPoly::constant(Int(1));
  IntPoly g = gcd_poly(p, p.derivative());
  return clear_denominators(divide_exact(to_rat(p), to_rat(g)));
}

inline RatPoly squarefree_part(const RatPoly& p) {
  if (p.is_zero()) throw precondition_error("squarefree part of zero polynomial");
  if (p.degree() == 0) return RatPoly::constant(Rat(1));
  RatPoly g = gcd_poly(p, p.derivative());
  RatPoly q = divide_exact(p, g);
  return Rat(1) / q.lead() * q;
}

// Multiplicity of the rational root r; p is divided down in place.
inline int strip_root(RatPoly& p, const Rat& r) {
  int mult = 0;
  RatPoly lin{-r, Rat(1)};
  while (!p.is_zero() && p.degree() >= 1 && p.eval(r) == 0) {
    p = divide_exact(p, lin);
    ++mult;
  }
  return mult;
}

// ---------------------------------------------------------------------------
// ASCII form "x^4-x^3-x^2-x+1": integer coefficients, caret powers, a single
// letter variable, optional spaces and '*'.

inline std::string poly_to_string(const IntPoly& p, char var = 'x') {
  if (p.is_zero()) return "0";
  std::string out;
  for (int d = p.degree(); d >= 0; --d) {
    const Int c = p.coeff(d);
    if (c == 0) continue;
    const Int a = abs_of(c);
    if (out.empty())
      out += (c < 0) ? "-" : "";
    else
      out += (c < 0) ? "-" : "+";
    if (d == 0) {
      out += a.str();
    } else {
      if (a != 1) out += a.str();
      out += var;
      if (d != 1) out += "^" + std::to_string(d);
    }
  }
  return out;
}

inline IntPoly poly_from_string(std::string_view s) {
  std::vector<Int> coeffs;
  size_t i = 0;
  char var = 0;
  auto skip_ws = [&] { while (i < s.size() && std::isspace(static_cast<unsigned char>(s[i]))) ++i; };
  auto fail = [&]() -> IntPoly {
    throw precondition_error("malformed polynomial: \"" + std::string(s) + "\"");
  };
  skip_ws();
  bool any_term = false;
  while (i < s.size()) {
    int sgn = 1;
    skip_ws();
    if (i < s.size() && (s[i] == '+' || s[i] == '-')) {
      if (s[i] == '-') sgn = -1;
      ++i;
      skip_ws();
    } else if (any_term) {
      return fail();  // terms must be separated by + or -
    }
    if (i >= s.size()) return fail();
    Int coef = 1;
    bool saw_coef = false;
    if (std::isdigit(static_cast<unsigned char>(s[i]))) {
      size_t j = i;
      while (j < s.size() && std::isdigit(static_cast<unsigned char>(s[j]))) ++j;
      coef = Int(std::string(s.substr(i, j - i)));
      saw_coef = true;
      i = j;
      skip_ws();
      if (i < s.size() && s[i] == '*') { ++i; skip_ws(); }
    }
    int deg = 0;
    if (i < s.size() && std::isalpha(static_cast<unsigned char>(s[i]))) {
      if (var == 0) var = s[i];
      if (s[i] != var) return fail();
      ++i;
      skip_ws();
      deg = 1;
      if (i < s.size() && s[i] == '^') {
        ++i;
        skip_ws();
        size_t j = i;
        if (j < s.size() && s[j] == '-') return fail();  // negative powers not allowed
        while (j < s.size() && std::isdigit(static_cast<unsigned char>(s[j]))) ++j;
        if (j == i) return fail();
        deg = std::stoi(std::string(s.substr(i, j - i)));
        i = j;
      }
    } else if (!saw_coef) {
      return fail();
    }
    if (static_cast<int>(coeffs.size()) <= deg) coeffs.resize(deg + 1, Int(0));
    coeffs[deg] += sgn * coef;
    any_term = true;
    skip_ws();
  }
  if (!any_term) throw precondition_error("empty polynomial string");
  return IntPoly(std::move(coeffs));
}

}  // namespace salempa
