#pragma once

// Thurston's construction, made exact: Perron-Frobenius data of M Q N Q^T
// over Q(nu), the standard twist representatives [[1,1],[0,1]] and
// [[1,0],[-nu,1]], word evaluation with exact trace classification, the
// totally-real trace field check, and the 2x2 observation that produces
// degree-4 Salem polynomials from eigenvalue pairs.
//
// All hyperbolicity decisions compare |trace| with 2 exactly; the stretch
// factor is the larger root of x^2 - |trace| x + 1, identified with its
// true minimal polynomial via the trace-to-reciprocal transform.

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

struct TwistWeights {
  std::vector<Int> n;  // one positive integer per C curve
  std::vector<Int> m;  // one positive integer per D curve
  static TwistWeights ones(int c_count, int d_count) {
    return {std::vector<Int>(c_count, Int(1)), std::vector<Int>(d_count, Int(1))};
  }
};

struct PFData {
  FieldPtr field;  // Q(nu)
  AlgebraicReal nu;
  RatMatrix product;    // M Q N Q^T
  FieldVector widths;   // PF eigenvector of M Q N Q^T, one entry per D curve
  FieldVector heights;  // PF eigenvector of N Q^T M Q, one entry per C curve
};

namespace detail {

inline bool pattern_connected(const RatMatrix& p) {
  const int n = p.rows();
  std::vector<char> seen(n, 0);
  std::vector<int> stack{0};
  seen[0] = 1;
  while (!stack.empty()) {
    int cur = stack.back();
    stack.pop_back();
    for (int j = 0; j < n; ++j)
      if (!seen[j] && (p.at(cur, j) != 0 || p.at(j, cur) != 0)) {
        seen[j] = 1;
        stack.push_back(j);
      }
  }
  for (char c : seen)
    if (!c) return false;
  return true;
}

}  // namespace detail

// Exact PF data for the product matrix itself (nu, its field, and the
// width eigenvector). Used directly when only M Q N Q^T is known.
inline PFData pf_data_from_product(const RatMatrix& product) {
  if (!product.is_square()) throw precondition_error("pf_data: square product required");
  for (int i = 0; i < product.rows(); ++i)
    for (int j = 0; j < product.cols(); ++j)
      if (product.at(i, j) < 0) throw precondition_error("pf_data: nonnegative matrix required");
  if (!detail::pattern_connected(product))
    throw precondition_error("Perron-Frobenius inapplicable: reducible matrix");
  RatPoly cp = product.char_poly();
  auto roots = isolate_roots(clear_denominators(cp));
  if (roots.empty()) throw internal_error("pf_data: no real eigenvalues");
  AlgebraicReal nu = roots.back();
  if (nu.sign() <= 0) throw precondition_error("pf_data: spectral radius not positive");
  // simplicity of nu: its minimal polynomial divides the char poly exactly once
  RatPoly mp = Rat(1) / Rat(nu.minpoly().lead()) * to_rat(nu.minpoly());
  if (divides(mp, divide_exact(cp, mp)))
    throw internal_error("pf_data: Perron root is not simple");
  for (const AlgebraicReal& r : roots)
    if (!(r.compare(nu) == 0) && r.negated().compare(nu) >= 0)
      throw internal_error("pf_data: Perron root is not dominant");

  FieldPtr K = NumberField::make(nu);
  FieldVector ell = eigenvector_exact(product, K);
  for (const FieldElem& c : ell)
    if (c.sign() <= 0) throw internal_error("pf_data: PF eigenvector not positive");
  PFData out{K, nu, product, std::move(ell), {}};
  return out;
}

// Full PF data from Q (rows = D curves, columns = C curves) and weights.
inline PFData pf_data(const RatMatrix& q, const TwistWeights& w) {
  const int d_count = q.rows(), c_count = q.cols();
  if (d_count == 0 || c_count == 0) throw precondition_error("pf_data: empty matrix");
  if (!q.is_integral()) throw precondition_error("pf_data: integer intersection matrix required");
  for (int i = 0; i < d_count; ++i)
    for (int j = 0; j < c_count; ++j)
      if (q.at(i, j) < 0) throw precondition_error("pf_data: nonnegative matrix required");
  if (static_cast<int>(w.n.size()) != c_count || static_cast<int>(w.m.size()) != d_count)
    throw precondition_error("pf_data: weight sizes do not match the matrix");
  for (const Int& v : w.n)
    if (v < 1) throw precondition_error("pf_data: twist weights must be positive");
  for (const Int& v : w.m)
    if (v < 1) throw precondition_error("pf_data: twist weights must be positive");

  RatMatrix mdiag(d_count, d_count), ndiag(c_count, c_count);
  for (int i = 0; i < d_count; ++i) mdiag.at(i, i) = Rat(w.m[i]);
  for (int j = 0; j < c_count; ++j) ndiag.at(j, j) = Rat(w.n[j]);
  RatMatrix product = mdiag * q * ndiag * q.transposed();
  PFData data = pf_data_from_product(product);

  // heights from the transposed product, same eigenvalue
  RatMatrix product_c = ndiag * q.transposed() * mdiag * q;
  data.heights = eigenvector_exact(product_c, data.field);
  for (const FieldElem& c : data.heights)
    if (c.sign() <= 0) throw internal_error("pf_data: height eigenvector not positive");

  // affine conditions: h_i / (n_i (Q^T ell)_i) constant over C curves and
  // ell_j / (m_j (Q h)_j) constant over D curves
  FieldPtr K = data.field;
  auto ratio_constant = [&](const FieldVector& num, const FieldVector& den) {
    std::optional<FieldElem> value;
    for (size_t i = 0; i < num.size(); ++i) {
      if (den[i].is_zero()) return false;
      FieldElem r = num[i] / den[i];
      if (!value)
        value = r;
      else if (!(*value == r))
        return false;
    }
    return true;
  };
  FieldVector qt_ell(c_count, FieldElem::from_rational(K, Rat(0)));
  for (int i = 0; i < c_count; ++i) {
    for (int r = 0; r < d_count; ++r)
      qt_ell[i] = qt_ell[i] + q.at(r, i) * data.widths[r];
    qt_ell[i] = Rat(w.n[i]) * qt_ell[i];
  }
  FieldVector q_h(d_count, FieldElem::from_rational(K, Rat(0)));
  for (int j = 0; j < d_count; ++j) {
    for (int s = 0; s < c_count; ++s) q_h[j] = q_h[j] + q.at(j, s) * data.heights[s];
    q_h[j] = Rat(w.m[j]) * q_h[j];
  }
  if (!ratio_constant(data.heights, qt_ell) || !ratio_constant(data.widths, q_h))
    throw internal_error("pf_data: affine conditions failed");
  return data;
}

// 2x2 matrices over Q(nu).
struct FMat2 {
  FieldElem a, b, c, d;
  friend FMat2 operator*(const FMat2& x, const FMat2& y) {
    return {x.a * y.a + x.b * y.c, x.a * y.b + x.b * y.d, x.c * y.a + x.d * y.c,
            x.c * y.b + x.d * y.d};
  }
  FieldElem trace() const { return a + d; }
  FieldElem det() const { return a * d - b * c; }
};

// eq.-style representatives: [T_C] = [[1,1],[0,1]], [T_D] = [[1,0],[-nu,1]].
inline std::pair<FMat2, FMat2> twist_reps(const FieldPtr& K) {
  FieldElem zero = FieldElem::from_rational(K, Rat(0));
  FieldElem one = FieldElem::from_rational(K, Rat(1));
  FieldElem nu = FieldElem::generator(K);
  if (nu.sign() <= 0) throw precondition_error("twist_reps: nu > 0 required");
  return {FMat2{one, one, zero, one}, FMat2{one, zero, -nu, one}};
}

struct WordLetter {
  char letter;         // 'C' or 'D'
  long long exponent;  // nonzero
};

inline std::vector<WordLetter> parse_word(const std::string& text) {
  std::vector<WordLetter> out;
  size_t i = 0;
  while (i < text.size()) {
    char ch = text[i];
    if (std::isspace(static_cast<unsigned char>(ch))) { ++i; continue; }
    if (ch != 'C' && ch != 'D') throw precondition_error("word letters must be C or D");
    ++i;
    long long exp = 1;
    size_t j = i;
    if (j < text.size() && text[j] == '^') ++j;
    size_t digits = j;
    if (digits < text.size() && text[digits] == '-') ++digits;
    size_t k = digits;
    while (k < text.size() && std::isdigit(static_cast<unsigned char>(text[k]))) ++k;
    if (k > digits) {
      exp = std::stoll(std::string(text.substr(j, k - j)));
      i = k;
    } else if (j > i) {
      throw precondition_error("caret without exponent in word");
    }
    if (exp == 0) throw precondition_error("zero exponent in word");
    out.push_back({ch, exp});
  }
  if (out.empty()) throw precondition_error("empty word");
  return out;
}

// merge adjacent equal letters; drop runs that cancel
inline std::vector<WordLetter> normalize_word(const std::vector<WordLetter>& in) {
  std::vector<WordLetter> out;
  for (const WordLetter& l : in) {
    if (!out.empty() && out.back().letter == l.letter) {
      out.back().exponent += l.exponent;
      if (out.back().exponent == 0) out.pop_back();
    } else {
      out.push_back(l);
    }
  }
  return out;
}

inline std::string word_to_string(const std::vector<WordLetter>& word) {
  std::string s;
  for (const WordLetter& l : word) {
    s += l.letter;
    if (l.exponent != 1) s += "^" + std::to_string(l.exponent);
  }
  return s.empty() ? "(identity)" : s;
}

enum class WordVerdict { pseudoAnosov, parabolic, elliptic };

inline const char* to_string(WordVerdict v) {
  switch (v) {
    case WordVerdict::pseudoAnosov: return "pseudoAnosov";
    case WordVerdict::parabolic: return "parabolic";
    case WordVerdict::elliptic: return "elliptic";
  }
  return "?";
}

struct PseudoAnosovReport {
  std::string word;
  FieldPtr field;  // Q(nu)
  AlgebraicReal nu;
  FMat2 rep;
  FieldElem trace;
  WordVerdict verdict;
  std::optional<AlgebraicReal> stretch;  // lambda > 1 when pseudo-Anosov
  IntPoly trace_field_poly;              // minimal polynomial of |trace|
};

inline PseudoAnosovReport classify_word(const std::vector<WordLetter>& word_in, const FieldPtr& K,
                                        const AlgebraicReal& nu) {
  if (word_in.empty()) throw precondition_error("classify_word: nonempty word required");
  std::vector<WordLetter> word = normalize_word(word_in);
  FieldElem zero = FieldElem::from_rational(K, Rat(0));
  FieldElem one = FieldElem::from_rational(K, Rat(1));
  FieldElem nu_elem = FieldElem::generator(K);
  FMat2 acc{one, zero, zero, one};
  for (const WordLetter& l : word) {
    // closed-form powers of the unipotent representatives
    FMat2 p = (l.letter == 'C')
                  ? FMat2{one, Rat(l.exponent) * one, zero, one}
                  : FMat2{one, zero, Rat(-l.exponent) * nu_elem, one};
    acc = acc * p;
  }
  if (!(acc.det() == one)) throw internal_error("classify_word: determinant drifted from 1");

  PseudoAnosovReport rep;
  rep.word = word_to_string(word);
  rep.field = K;
  rep.nu = nu;
  rep.rep = acc;
  rep.trace = acc.trace();
  FieldElem abs_trace = rep.trace.sign() >= 0 ? rep.trace : -rep.trace;
  rep.trace_field_poly = abs_trace.min_poly();
  int cmp = abs_trace.compare(Rat(2));
  if (cmp < 0) {
    rep.verdict = WordVerdict::elliptic;
  } else if (cmp == 0) {
    rep.verdict = WordVerdict::parabolic;
  } else {
    rep.verdict = WordVerdict::pseudoAnosov;
    // lambda + 1/lambda = |trace|: annihilator x^d m(x + 1/x), enclosure
    // from |trace| and the quadratic formula
    IntPoly ann = reciprocal_from_trace(rep.trace_field_poly);
    auto enclose = [&abs_trace](int bits) {
      RatInterval t = abs_trace.enclosure(bits);
      Rat disc_lo = t.lo * t.lo - 4, disc_hi = t.hi * t.hi - 4;
      if (disc_lo < 0) disc_lo = 0;
      RatInterval s(sqrt_enclosure(disc_lo, bits).lo, sqrt_enclosure(disc_hi, bits).hi);
      RatInterval sum = t + s;
      return RatInterval(sum.lo / 2, sum.hi / 2);
    };
    rep.stretch = identify_root(ann, enclose);
    if (rep.stretch->compare(Rat(1)) <= 0)
      throw internal_error("classify_word: stretch factor not above 1");
  }
  return rep;
}

inline PseudoAnosovReport classify_word(const std::string& word, const AlgebraicReal& nu) {
  return classify_word(parse_word(word), NumberField::make(nu), nu);
}

// Veech: the trace field Q(lambda + 1/lambda) of a Thurston stretch factor
// is totally real. Returns the verdict and the minimal polynomial.
inline std::pair<bool, IntPoly> veech_check(const AlgebraicReal& stretch) {
  if (stretch.compare(Rat(1)) <= 0) throw precondition_error("veech_check: stretch > 1 required");
  FieldPtr K = NumberField::make(stretch);
  FieldElem lam = FieldElem::generator(K);
  IntPoly m = (lam + lam.inverse()).min_poly();
  return {is_totally_real(m), m};
}

// Observation-style extraction: a 2x2 positive symmetric integer matrix with
// eigenvalues nu > mu > 0 yields the integer quartic
// (x^2-(nu-2)x+1)(x^2+(2-mu)x+1); when nu > 4 and 0 < mu < 4 its largest
// real root is a Salem number or quadratic reciprocal unit.
inline SalemClassification salem_from_2x2(const RatMatrix& s) {
  if (s.rows() != 2 || s.cols() != 2 || !s.is_symmetric() || !s.is_integral())
    throw precondition_error("salem_from_2x2: 2x2 symmetric integer matrix required");
  for (int i = 0; i < 2; ++i)
    for (int j = 0; j < 2; ++j)
      if (s.at(i, j) < 0) throw precondition_error("salem_from_2x2: nonnegative entries required");
  const Int a = rat_num(s.trace());
  const Int b = rat_num(s.det());
  auto roots = isolate_roots(clear_denominators(s.char_poly()));
  if (roots.size() != 2)
    return {SalemVerdict::NotSalem, std::nullopt, "eigenvalues not distinct"};
  const AlgebraicReal& mu = roots[0];
  const AlgebraicReal& nu = roots[1];
  if (mu.compare(Rat(0)) <= 0 || mu.compare(Rat(4)) >= 0)
    return {SalemVerdict::NotSalem, std::nullopt, "small eigenvalue escapes unit-circle window"};
  if (nu.compare(Rat(4)) <= 0)
    return {SalemVerdict::NotSalem, std::nullopt, "large eigenvalue fails |2-nu| > 2"};
  // f(-x) for f = (x^2-(2-nu)x+1)(x^2-(2-mu)x+1), via symmetric functions
  IntPoly candidate{Int(1), -(a - 4), b - 2 * a + 6, -(a - 4), Int(1)};
  AlgebraicReal largest = isolate_roots(candidate).back();
  return classify_salem(largest.minpoly());
}

}  // namespace salempa
