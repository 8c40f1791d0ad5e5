#pragma once

// Realize a totally real algebraic integer as an eigenvalue of a rational
// symmetric matrix by bounded search, compute its eigenvector exactly over
// Q(theta), and conjugate by a rational rotation until that eigenvector is
// strictly positive.
//
// Search order: for each excess e = 0.. e_max, dense symmetric integer
// matrices (entries scanned from +bound down to -bound, upper triangle in
// row major order), then symmetric tridiagonal integer matrices, then dense
// symmetric rationals with denominators 2, 3, ... First hit wins; the trace
// and sum-of-squares of the target spectrum prune the scan without
// reordering it.
//
// Rational rotations come from the exact Cayley transform
// U = (I-S)^-1 (I+S) of a rational skew-symmetric S obtained by rounding a
// numerically built rotation; positivity of the rotated eigenvector is then
// decided exactly, with retries at higher precision.

#include <functional>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "salempa/algebraic.hpp"
#include "salempa/matrix.hpp"
#include "salempa/numberfield.hpp"

namespace salempa {

struct RealizeResult {
  RatMatrix Q;
  int excess = 0;  // char poly = g * (x-1)^excess
};

struct RationalRotation {
  RatMatrix m;
  static RationalRotation checked(RatMatrix u) {
    if (!u.is_square()) throw precondition_error("rotation must be square");
    if (u.transposed() * u != RatMatrix::identity(u.rows()) || u.det() != 1)
      throw precondition_error("not a rational rotation: U^T U = I and det U = 1 required");
    return RationalRotation{std::move(u)};
  }
};

inline bool is_rotation(const RatMatrix& u) {
  return u.is_square() && u.transposed() * u == RatMatrix::identity(u.rows()) && u.det() == 1;
}

// (I - S)^-1 (I + S) for rational skew-symmetric S; always in SO(n, Q).
inline RatMatrix cayley_rotation(const RatMatrix& s) {
  if (!s.is_square() || s.transposed() != -s)
    throw precondition_error("cayley_rotation: skew-symmetric matrix required");
  RatMatrix eye = RatMatrix::identity(s.rows());
  return (eye - s).inverse() * (eye + s);
}

namespace detail {

struct DenseScan {
  int m;
  long long bound;
  RatPoly target;
  Int target_trace;
  Int target_sumsq;

  std::optional<RatMatrix> run() {
    std::vector<long long> upper(static_cast<size_t>(m) * (m + 1) / 2, 0);
    std::optional<RatMatrix> hit;
    rec(upper, 0, 0, Int(0), Int(0), hit);
    return hit;
  }

 private:
  // positions walk the upper triangle row major: (0,0), (0,1), ..., (1,1), ...
  void pos_to_ij(int pos, int& i, int& j) const {
    int p = pos;
    for (i = 0; i < m; ++i) {
      int len = m - i;
      if (p < len) { j = i + p; return; }
      p -= len;
    }
    throw internal_error("dense scan index out of range");
  }

  void rec(std::vector<long long>& upper, int pos, int diag_done, Int trace, Int sumsq,
           std::optional<RatMatrix>& hit) const {
    if (hit) return;
    const int total = static_cast<int>(upper.size());
    if (pos == total) {
      if (trace != target_trace || sumsq != target_sumsq) return;
      RatMatrix q(m, m);
      int k = 0;
      for (int i = 0; i < m; ++i)
        for (int j = i; j < m; ++j, ++k) q.at(i, j) = q.at(j, i) = Rat(upper[k]);
      if (q.char_poly() == target) hit = q;
      return;
    }
    int i, j;
    pos_to_ij(pos, i, j);
    const bool diag = (i == j);
    for (long long v = bound; v >= -bound && !hit; --v) {
      Int ntrace = trace, nsumsq = sumsq;
      int ndiag = diag_done;
      if (diag) {
        ntrace += v;
        nsumsq += Int(v) * v;
        ++ndiag;
        Int slack = Int(bound) * (m - ndiag);
        if (ntrace - slack > target_trace || ntrace + slack < target_trace) continue;
      } else {
        nsumsq += 2 * Int(v) * v;
      }
      if (nsumsq > target_sumsq) {
        if (v > 0) continue;  // smaller positive values shrink the square
        break;                // more negative values only grow it
      }
      upper[pos] = v;
      rec(upper, pos + 1, ndiag, ntrace, nsumsq, hit);
    }
    upper[pos] = 0;
  }
};

inline std::optional<RatMatrix> scan_tridiagonal(int m, long long bound, const RatPoly& target,
                                                 const Int& target_trace, const Int& target_sumsq) {
  // entries: m diagonal values then m-1 off-diagonal values
  std::vector<long long> entry(2 * m - 1, 0);
  std::optional<RatMatrix> hit;
  std::function<void(int, Int, Int)> rec = [&](int pos, Int trace, Int sumsq) {
    if (hit) return;
    if (pos == 2 * m - 1) {
      if (trace != target_trace || sumsq != target_sumsq) return;
      RatMatrix q(m, m);
      for (int i = 0; i < m; ++i) q.at(i, i) = Rat(entry[i]);
      for (int i = 0; i + 1 < m; ++i) q.at(i, i + 1) = q.at(i + 1, i) = Rat(entry[m + i]);
      if (q.char_poly() == target) hit = q;
      return;
    }
    const bool diag = pos < m;
    for (long long v = bound; v >= -bound && !hit; --v) {
      Int ntrace = trace, nsumsq = sumsq;
      if (diag) {
        ntrace += v;
        nsumsq += Int(v) * v;
        Int slack = Int(bound) * (m - pos - 1);
        if (ntrace - slack > target_trace || ntrace + slack < target_trace) continue;
      } else {
        nsumsq += 2 * Int(v) * v;
      }
      if (nsumsq > target_sumsq) {
        if (v > 0) continue;
        break;
      }
      entry[pos] = v;
      rec(pos + 1, ntrace, nsumsq);
    }
    entry[pos] = 0;
  };
  rec(0, Int(0), Int(0));
  return hit;
}

inline std::optional<RatMatrix> scan_rational(int m, long long bound, const RatPoly& target) {
  for (long long den = 2; den <= bound; ++den) {
    const long long nb = den * bound;
    std::vector<long long> upper(static_cast<size_t>(m) * (m + 1) / 2, 0);
    std::optional<RatMatrix> hit;
    std::function<void(int)> rec = [&](int pos) {
      if (hit) return;
      if (pos == static_cast<int>(upper.size())) {
        RatMatrix q(m, m);
        int k = 0;
        for (int i = 0; i < m; ++i)
          for (int j = i; j < m; ++j, ++k) q.at(i, j) = q.at(j, i) = Rat(upper[k], den);
        if (q.char_poly() == target) hit = q;
        return;
      }
      for (long long v = nb; v >= -nb && !hit; --v) {
        upper[pos] = v;
        rec(pos + 1);
      }
      upper[pos] = 0;
    };
    rec(0);
    if (hit) return hit;
  }
  return std::nullopt;
}

inline Rat dyadic_round(const Rat& x, int bits) {
  Int scale = pow_int(2, static_cast<unsigned long>(bits));
  Int num2 = rat_num(x) * scale * 2 + rat_den(x);  // round half up: floor((2xs + 1)/2)
  Int den2 = rat_den(x) * 2;
  Int q = num2 / den2;
  if (num2 < 0 && q * den2 != num2) q -= 1;  // floor for negatives
  return Rat(q, scale);
}

}  // namespace detail

// Symmetric rational matrix with characteristic polynomial g(x) (x-1)^e,
// 0 <= e <= e_max. g must be monic, irreducible, and totally real.
inline RealizeResult realize_symmetric(const IntPoly& g, int e_max, long long search_bound) {
  if (g.is_zero() || !g.is_monic())
    throw precondition_error("realize_symmetric: monic polynomial required");
  if (e_max < 0 || e_max > 2) throw precondition_error("realize_symmetric: e_max in {0,1,2}");
  if (search_bound < 1) throw precondition_error("realize_symmetric: positive search bound");
  if (!is_irreducible(g)) throw precondition_error("realize_symmetric: irreducible g required");
  if (!is_totally_real(g)) throw precondition_error("realize_symmetric: totally real g required");

  const RatPoly xm1{Rat(-1), Rat(1)};
  for (int e = 0; e <= e_max; ++e) {
    RatPoly target = to_rat(g);
    for (int i = 0; i < e; ++i) target = target * xm1;
    const int m = g.degree() + e;
    const Int c1 = rat_num(target.coeff(m - 1));  // integer coefficients throughout
    const Int c2 = rat_num(target.coeff(m - 2));
    const Int target_trace = -c1;
    const Int target_sumsq = c1 * c1 - 2 * c2;
    if (m <= 3) {
      detail::DenseScan scan{m, search_bound, target, target_trace, target_sumsq};
      if (auto q = scan.run()) return {*q, e};
    }
    if (m >= 4 && m <= 8) {
      if (auto q = detail::scan_tridiagonal(m, search_bound, target, target_trace, target_sumsq))
        return {*q, e};
    }
    if (m <= 2) {
      if (auto q = detail::scan_rational(m, search_bound, target)) return {*q, e};
    }
  }
  throw search_exhausted(
      "realization not found within bound " + std::to_string(search_bound) +
      "; raise the bound or supply a matrix directly");
}

// Nonzero v over Q(theta) with Q v = theta v, first nonzero coordinate 1.
inline FieldVector eigenvector_exact(const RatMatrix& Q, const FieldPtr& K) {
  if (!Q.is_square()) throw precondition_error("eigenvector_exact: square matrix required");
  RatPoly cp = Q.char_poly();
  RatPoly mp = K->modulus();
  if (!divides(mp, cp)) throw precondition_error("theta is not an eigenvalue of Q");
  const int n = Q.rows();
  FieldElem th = FieldElem::generator(K);
  std::vector<FieldVector> a(n);
  for (int i = 0; i < n; ++i) {
    a[i].reserve(n);
    for (int j = 0; j < n; ++j) {
      FieldElem entry = FieldElem::from_rational(K, Q.at(i, j));
      if (i == j) entry = entry - th;
      a[i].push_back(std::move(entry));
    }
  }
  auto basis = field_kernel(std::move(a), K);
  if (basis.empty()) throw internal_error("eigenvector_exact: empty kernel for an eigenvalue");
  FieldVector v = basis.front();
  for (const FieldElem& c : v) {
    if (!c.is_zero()) {
      FieldElem inv = c.inverse();
      for (FieldElem& x : v) x = inv * x;
      break;
    }
  }
  return v;
}

inline FieldVector eigenvector_exact(const RatMatrix& Q, const AlgebraicReal& theta) {
  return eigenvector_exact(Q, NumberField::make(theta));
}

struct Positivized {
  RationalRotation rotation;
  RatMatrix Q;  // rotation.m * Q_in * rotation.m^T
};

// Conjugate Q by a rational rotation so the eigenvector for theta becomes
// strictly positive. theta must be a simple eigenvalue.
inline Positivized positivize(const RatMatrix& Q, const AlgebraicReal& theta,
                              int max_retries = 10) {
  if (!Q.is_square() || !Q.is_symmetric())
    throw precondition_error("positivize: symmetric matrix required");
  RatPoly cp = Q.char_poly();
  RatPoly mp = Rat(1) / Rat(theta.minpoly().lead()) * to_rat(theta.minpoly());
  if (!divides(mp, cp)) throw precondition_error("theta is not an eigenvalue of Q");
  if (divides(mp, divide_exact(cp, mp)))
    throw precondition_error("theta multiple eigenvalue");

  const int n = Q.rows();
  FieldPtr K = NumberField::make(theta);
  FieldVector v = eigenvector_exact(Q, K);

  auto all_same_strict_sign = [](const FieldVector& w) {
    int s0 = 0;
    for (const FieldElem& c : w) {
      int s = c.sign();
      if (s == 0) return false;
      if (s0 == 0) s0 = s;
      if (s != s0) return false;
    }
    return true;
  };

  if (all_same_strict_sign(v)) return {RationalRotation{RatMatrix::identity(n)}, Q};

  for (int attempt = 0, bits = 16; attempt < max_retries; ++attempt, bits *= 2) {
    // rational approximation of the eigenvector, zero coordinates nudged
    std::vector<Rat> a(n);
    const Rat nudge = pow2_inv(bits / 2);
    for (int i = 0; i < n; ++i) {
      a[i] = v[i].enclosure(bits).mid();
      if (abs_of(a[i]) < nudge) a[i] = nudge;
    }
    Rat norm2 = 0;
    for (const Rat& x : a) norm2 += x * x;
    Rat inv_len = Rat(1) / sqrt_enclosure(norm2, bits).mid();
    for (Rat& x : a) x *= inv_len;  // approximately unit
    // target: the center ray of the positive orthant
    Rat u = sqrt_enclosure(Rat(1, n), bits).mid();
    std::vector<Rat> b(n, u);
    // rotation carrying a to b (both approx unit): R = I - w w^T/(1+a.b) + 2 b a^T
    Rat adotb = 0;
    for (int i = 0; i < n; ++i) adotb += a[i] * b[i];
    if (adotb <= Rat(-9, 10)) continue;  // nearly antipodal; retry finer
    RatMatrix r = RatMatrix::identity(n);
    Rat denom = 1 + adotb;
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j)
        r.at(i, j) += -(a[i] + b[i]) * (a[j] + b[j]) / denom + 2 * b[i] * a[j];
    // S = (R - I)(R + I)^-1, then exact skew part, dyadically rounded
    RatMatrix eye = RatMatrix::identity(n);
    RatMatrix rp = r + eye;
    RatMatrix s(n, n);
    try {
      s = (r - eye) * rp.inverse();
    } catch (const precondition_error&) {
      continue;  // R + I singular at this precision; retry finer
    }
    RatMatrix skew(n, n);
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j)
        skew.at(i, j) = detail::dyadic_round((s.at(i, j) - s.at(j, i)) / 2, bits);
    RatMatrix rot = cayley_rotation(skew);
    FieldVector w(n, FieldElem::from_rational(K, Rat(0)));
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j) w[i] = w[i] + rot.at(i, j) * v[j];
    if (!all_same_strict_sign(w)) continue;
    RatMatrix q2 = rot * Q * rot.transposed();
    if (q2.char_poly() != cp) throw internal_error("positivize: conjugation changed the spectrum");
    FieldVector check = eigenvector_exact(q2, K);
    bool positive = true;
    for (const FieldElem& c : check) positive = positive && c.sign() > 0;
    if (!positive) throw internal_error("positivize: normalized eigenvector not positive");
    return {RationalRotation::checked(std::move(rot)), std::move(q2)};
  }
  throw search_exhausted("positivize: no rotation found after " + std::to_string(max_retries) +
                         " precision retries");
}

}  // namespace salempa
