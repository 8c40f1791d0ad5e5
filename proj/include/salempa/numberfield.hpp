#pragma once

// Arithmetic in Q(theta) for a real algebraic theta. Elements are rational
// polynomials in theta of degree < [Q(theta):Q]; products reduce modulo the
// minimal polynomial, inverses come from the extended Euclidean algorithm.
// Zero tests are exact (the reduced representative is zero), so sign
// determination by interval refinement of theta always terminates.
//
// Minimal polynomials of elements come from the characteristic polynomial
// of the multiplication map: for t of degree d over Q inside a degree-n
// field that polynomial is minpoly(t)^(n/d), so its squarefree part is the
// minimal polynomial, with no factorization search.

#include <memory>
#include <utility>
#include <vector>

#include "salempa/algebraic.hpp"
#include "salempa/matrix.hpp"
#include "salempa/poly.hpp"

namespace salempa {

class NumberField {
 public:
  static std::shared_ptr<const NumberField> make(AlgebraicReal theta) {
    const IntPoly& mp = theta.minpoly();
    RatPoly modulus = Rat(1) / Rat(mp.lead()) * to_rat(mp);
    return std::shared_ptr<const NumberField>(
        new NumberField(std::move(theta), std::move(modulus)));
  }

  int degree() const { return modulus_.degree(); }
  const AlgebraicReal& theta() const { return theta_; }
  const RatPoly& modulus() const { return modulus_; }

 private:
  NumberField(AlgebraicReal theta, RatPoly modulus)
      : theta_(std::move(theta)), modulus_(std::move(modulus)) {}
  AlgebraicReal theta_;
  RatPoly modulus_;  // monic minimal polynomial of theta
};

using FieldPtr = std::shared_ptr<const NumberField>;

class FieldElem {
 public:
  FieldElem() = default;  // detached null element; usable only after assignment

  FieldElem(FieldPtr field, RatPoly rep) : K_(std::move(field)) {
    rep_ = divmod(std::move(rep), K_->modulus()).second;
  }
  static FieldElem from_rational(FieldPtr field, const Rat& r) {
    return FieldElem(std::move(field), RatPoly::constant(r));
  }
  static FieldElem generator(FieldPtr field) { return FieldElem(std::move(field), RatPoly::x()); }

  const FieldPtr& field() const { return K_; }
  const RatPoly& rep() const { return rep_; }
  bool is_zero() const { return rep_.is_zero(); }

  bool operator==(const FieldElem& o) const {
    check_same_field(o);
    return rep_ == o.rep_;
  }
  bool operator!=(const FieldElem& o) const { return !(*this == o); }

  FieldElem operator-() const { return raw(K_, -rep_); }
  friend FieldElem operator+(const FieldElem& a, const FieldElem& b) {
    a.check_same_field(b);
    return raw(a.K_, a.rep_ + b.rep_);
  }
  friend FieldElem operator-(const FieldElem& a, const FieldElem& b) {
    a.check_same_field(b);
    return raw(a.K_, a.rep_ - b.rep_);
  }
  friend FieldElem operator*(const FieldElem& a, const FieldElem& b) {
    a.check_same_field(b);
    return raw(a.K_, divmod(a.rep_ * b.rep_, a.K_->modulus()).second);
  }
  friend FieldElem operator*(const Rat& c, const FieldElem& a) { return raw(a.K_, c * a.rep_); }
  friend FieldElem operator/(const FieldElem& a, const FieldElem& b) { return a * b.inverse(); }

  FieldElem inverse() const {
    if (is_zero()) throw precondition_error("inverse of zero field element");
    // extended Euclid: s*rep + t*modulus = gcd = const
    RatPoly r0 = K_->modulus(), r1 = rep_;
    RatPoly s0, s1{Rat(1)};
    while (!r1.is_zero()) {
      auto [q, r] = divmod(r0, r1);
      r0 = std::move(r1);
      r1 = std::move(r);
      RatPoly ns = s0 - q * s1;
      s0 = std::move(s1);
      s1 = std::move(ns);
    }
    if (r0.degree() != 0)
      throw internal_error("field modulus is not irreducible over this element");
    return raw(K_, divmod(Rat(1) / r0.coeff(0) * s0, K_->modulus()).second);
  }

  FieldElem pow(long long e) const {
    if (e < 0) return inverse().pow(-e);
    FieldElem result = from_rational(K_, Rat(1));
    FieldElem base = *this;
    while (e) {
      if (e & 1) result = result * base;
      base = base * base;
      e >>= 1;
    }
    return result;
  }

  bool is_rational_elem() const { return rep_.degree() <= 0; }
  Rat as_rational() const {
    if (!is_rational_elem()) throw precondition_error("field element is not rational");
    return rep_.coeff(0);
  }

  RatInterval enclosure(int bits) const {
    return rep_.eval_interval(K_->theta().enclosure(bits));
  }

  int sign() const {
    if (is_zero()) return 0;
    if (is_rational_elem()) return sign_of(rep_.coeff(0));
    for (int bits = 8;; bits *= 2) {
      int s = enclosure(bits).definite_sign();
      if (s != 0) return s;
      if (bits > (1 << 22)) throw internal_error("field element sign: no separation");
    }
  }
  int compare(const FieldElem& o) const { return (*this - o).sign(); }
  int compare(const Rat& r) const { return (*this - from_rational(K_, r)).sign(); }

  // Matrix of multiplication by this element in the power basis of theta.
  RatMatrix multiplication_matrix() const {
    const int n = K_->degree();
    RatMatrix m(n, n);
    RatPoly cur = rep_;
    for (int j = 0; j < n; ++j) {
      for (int i = 0; i < n; ++i) m.at(i, j) = cur.coeff(i);
      cur = divmod(cur.shifted(1), K_->modulus()).second;
    }
    return m;
  }

  // Primitive integer minimal polynomial over Q, positive leading coefficient.
  IntPoly min_poly() const {
    if (is_zero()) return IntPoly{Int(0), Int(1)};
    RatPoly cp = multiplication_matrix().char_poly();
    return clear_denominators(squarefree_part(cp));
  }
  int degree_over_q() const { return min_poly().degree(); }

  AlgebraicReal as_algebraic() const {
    IntPoly m = min_poly();
    if (m.degree() == 1) return AlgebraicReal::from_rational(Rat(-m.coeff(0), m.coeff(1)));
    auto chain = sturm_chain(m);
    for (int bits = 8;; bits *= 2) {
      RatInterval J = enclosure(bits);
      if (m.eval(J.lo) != 0 && m.eval(J.hi) != 0 && sturm_count(chain, J.lo, J.hi) == 1)
        return AlgebraicReal::from_isolated_root(m, J.lo, J.hi);
      if (bits > (1 << 22)) throw internal_error("as_algebraic: no isolating enclosure");
    }
  }

  // (integer polynomial in theta, positive denominator) with
  // value = poly(theta) / denominator.
  std::pair<IntPoly, Int> integral_form() const {
    Int l = 1;
    for (const Rat& c : rep_.coeffs()) l = lcm_int(l, rat_den(c));
    std::vector<Int> num;
    num.reserve(rep_.coeffs().size());
    for (const Rat& c : rep_.coeffs()) num.push_back(rat_num(c) * (l / rat_den(c)));
    return {IntPoly(std::move(num)), l};
  }

 private:
  FieldPtr K_;
  RatPoly rep_;

  static FieldElem raw(const FieldPtr& k, RatPoly rep) {
    FieldElem e;
    e.K_ = k;
    e.rep_ = std::move(rep);
    return e;
  }
  void check_same_field(const FieldElem& o) const {
    if (K_.get() != o.K_.get()) throw precondition_error("field elements from different fields");
  }
};

using FieldVector = std::vector<FieldElem>;

// Kernel basis of a square matrix over Q(theta) by Gauss-Jordan elimination.
// Deterministic: first nonzero pivot, free columns parameterized in order.
inline std::vector<FieldVector> field_kernel(std::vector<FieldVector> m, const FieldPtr& K) {
  const int rows = static_cast<int>(m.size());
  const int cols = rows ? static_cast<int>(m[0].size()) : 0;
  const FieldElem zero = FieldElem::from_rational(K, Rat(0));
  const FieldElem one = FieldElem::from_rational(K, Rat(1));
  std::vector<int> pivot_of_col(cols, -1);
  int rank = 0;
  for (int col = 0; col < cols && rank < rows; ++col) {
    int piv = -1;
    for (int i = rank; i < rows; ++i)
      if (!m[i][col].is_zero()) { piv = i; break; }
    if (piv < 0) continue;
    std::swap(m[rank], m[piv]);
    FieldElem inv = m[rank][col].inverse();
    for (int j = 0; j < cols; ++j) m[rank][j] = inv * m[rank][j];
    for (int i = 0; i < rows; ++i) {
      if (i == rank || m[i][col].is_zero()) continue;
      FieldElem f = m[i][col];
      for (int j = 0; j < cols; ++j) m[i][j] = m[i][j] - f * m[rank][j];
    }
    pivot_of_col[col] = rank;
    ++rank;
  }
  std::vector<FieldVector> basis;
  for (int col = 0; col < cols; ++col) {
    if (pivot_of_col[col] >= 0) continue;
    FieldVector v(cols, zero);
    v[col] = one;
    for (int c2 = 0; c2 < cols; ++c2)
      if (pivot_of_col[c2] >= 0) v[c2] = -m[pivot_of_col[c2]][col];
    basis.push_back(std::move(v));
  }
  return basis;
}

}  // namespace salempa
