#pragma once

// Exact arithmetic foundation: arbitrary-precision integers and rationals
// (boost.multiprecision, header-only backends) plus rational interval
// arithmetic used for all certified sign decisions.

#include <boost/multiprecision/cpp_int.hpp>

#include <stdexcept>
#include <string>
#include <utility>

namespace salempa {

using Int = boost::multiprecision::cpp_int;
using Rat = boost::multiprecision::cpp_rational;

// Thrown when a documented precondition is violated (CLI exit status 2).
class precondition_error : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

// Thrown when a bounded search exhausts its budget (CLI exit status 3).
class search_exhausted : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Internal consistency failure: an invariant that is supposed to be a
// theorem did not check out. Always indicates a bug, never bad input.
class internal_error : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

inline int sign_of(const Int& x) { return x.sign(); }
inline int sign_of(const Rat& x) { return x.sign(); }

inline Int abs_of(const Int& x) { return x < 0 ? Int(-x) : x; }
inline Rat abs_of(const Rat& x) { return x < 0 ? Rat(-x) : x; }

inline Int rat_num(const Rat& x) { return numerator(x); }
inline Int rat_den(const Rat& x) { return denominator(x); }

// floor(sqrt(x)) for x >= 0.
inline Int isqrt_floor(const Int& x) {
  if (x < 0) throw precondition_error("isqrt of negative integer");
  return boost::multiprecision::sqrt(x);
}

inline bool is_perfect_square(const Int& x, Int& root) {
  if (x < 0) return false;
  root = isqrt_floor(x);
  return root * root == x;
}

inline Int pow_int(const Int& base, unsigned long exp) {
  Int r = 1, b = base;
  unsigned long e = exp;
  while (e) {
    if (e & 1) r *= b;
    b *= b;
    e >>= 1;
  }
  return r;
}

inline Rat pow_rat(const Rat& base, long exp) {
  if (exp < 0) {
    if (base == 0) throw precondition_error("zero to a negative power");
    return Rat(pow_int(rat_den(base), static_cast<unsigned long>(-exp)),
               pow_int(rat_num(base), static_cast<unsigned long>(-exp)));
  }
  return Rat(pow_int(rat_num(base), static_cast<unsigned long>(exp)),
             pow_int(rat_den(base), static_cast<unsigned long>(exp)));
}

// 2^-bits as a rational.
inline Rat pow2_inv(int bits) { return Rat(1, pow_int(2, static_cast<unsigned long>(bits))); }

inline Int gcd_int(const Int& a, const Int& b) { return boost::multiprecision::gcd(a, b); }
inline Int lcm_int(const Int& a, const Int& b) { return boost::multiprecision::lcm(a, b); }

// Closed rational interval [lo, hi]. Endpoints are exact; the interval is
// the certificate that some real value lies between them.
struct RatInterval {
  Rat lo, hi;

  RatInterval() : lo(0), hi(0) {}
  RatInterval(Rat l, Rat h) : lo(std::move(l)), hi(std::move(h)) {
    if (lo > hi) throw internal_error("interval with lo > hi");
  }
  static RatInterval point(const Rat& x) { return RatInterval(x, x); }

  Rat width() const { return hi - lo; }
  Rat mid() const { return (lo + hi) / 2; }
  bool contains(const Rat& x) const { return lo <= x && x <= hi; }
  bool contains_zero() const { return lo <= 0 && 0 <= hi; }

  // -1, +1 when the sign is certain, 0 when the interval straddles zero.
  int definite_sign() const {
    if (lo > 0) return 1;
    if (hi < 0) return -1;
    return 0;
  }

  RatInterval operator-() const { return RatInterval(-hi, -lo); }

  friend RatInterval operator+(const RatInterval& a, const RatInterval& b) {
    return RatInterval(a.lo + b.lo, a.hi + b.hi);
  }
  friend RatInterval operator-(const RatInterval& a, const RatInterval& b) {
    return RatInterval(a.lo - b.hi, a.hi - b.lo);
  }
  friend RatInterval operator*(const RatInterval& a, const RatInterval& b) {
    Rat p1 = a.lo * b.lo, p2 = a.lo * b.hi, p3 = a.hi * b.lo, p4 = a.hi * b.hi;
    Rat lo = p1, hi = p1;
    for (const Rat& p : {p2, p3, p4}) {
      if (p < lo) lo = p;
      if (p > hi) hi = p;
    }
    return RatInterval(lo, hi);
  }
  friend RatInterval operator*(const Rat& c, const RatInterval& a) {
    return c >= 0 ? RatInterval(c * a.lo, c * a.hi) : RatInterval(c * a.hi, c * a.lo);
  }
  friend RatInterval operator+(const Rat& c, const RatInterval& a) {
    return RatInterval(c + a.lo, c + a.hi);
  }

  bool overlaps(const RatInterval& o) const { return lo <= o.hi && o.lo <= hi; }
};

// Enclosure of sqrt(x) with width at most 2^-bits, x >= 0.
inline RatInterval sqrt_enclosure(const Rat& x, int bits) {
  if (x < 0) throw precondition_error("sqrt of negative value");
  if (x == 0) return RatInterval::point(Rat(0));
  const Int p = rat_num(x), q = rat_den(x);
  // sqrt(p/q) = sqrt(p*q)/q; scale by 2^bits for the requested resolution.
  Int t = pow_int(2, static_cast<unsigned long>(bits)) * q;
  Int s = isqrt_floor(p * q * t * t / (q * q));  // floor(sqrt(p/q) * t)
  Rat lo(s, t), hi(s + 1, t);
  return RatInterval(lo, hi);
}

// Fixed-point decimal rendering of an exact rational, rounded half away
// from zero at the requested number of fractional digits. Deterministic.
inline std::string decimal_string(const Rat& x, int digits) {
  Int scale = pow_int(10, static_cast<unsigned long>(digits));
  Int num = rat_num(x) * scale * 2;
  Int den = rat_den(x);
  // round(v) = floor((2v + 1)/2) for v >= 0, mirrored for v < 0
  bool neg = num < 0;
  Int mag = abs_of(num);
  Int scaled = (mag / den + 1) / 2;
  std::string digits_str = scaled.str();
  if (static_cast<int>(digits_str.size()) <= digits)
    digits_str = std::string(digits + 1 - digits_str.size(), '0') + digits_str;
  std::string out = digits_str.substr(0, digits_str.size() - digits);
  if (digits > 0) out += "." + digits_str.substr(digits_str.size() - digits);
  if (neg && scaled != 0) out = "-" + out;
  return out;
}

inline std::string rat_to_string(const Rat& x) {
  if (rat_den(x) == 1) return rat_num(x).str();
  return rat_num(x).str() + "/" + rat_den(x).str();
}

inline Rat rat_from_string(const std::string& s) {
  auto slash = s.find('/');
  try {
    if (slash == std::string::npos) return Rat(Int(s));
    Int num(s.substr(0, slash));
    Int den(s.substr(slash + 1));
    if (den == 0) throw precondition_error("rational with zero denominator: " + s);
    return Rat(num, den);
  } catch (const std::exception&) {
    throw precondition_error("malformed rational: " + s);
  }
}

}  // namespace salempa
