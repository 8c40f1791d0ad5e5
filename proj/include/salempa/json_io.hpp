#pragma once

// JSON forms shared by the CLI and the certificate files. Matrices are
// arrays of arrays of exact rational strings ("-3/2"); polynomials use the
// ASCII form "x^4-x^3-x^2-x+1"; algebraic numbers carry their minimal
// polynomial, an isolating interval, and an advisory decimal. Key order is
// fixed (ordered_json) so equal inputs produce byte-identical documents.

#include <json.hpp>

#include <string>
#include <vector>

#include "salempa/algebraic.hpp"
#include "salempa/matrix.hpp"
#include "salempa/numberfield.hpp"
#include "salempa/realize.hpp"
#include "salempa/skewpower.hpp"
#include "salempa/surface.hpp"
#include "salempa/thurston.hpp"
#include "salempa/unitfinder.hpp"

namespace salempa {

using Json = nlohmann::ordered_json;

inline Json rat_to_json(const Rat& x) { return rat_to_string(x); }
inline Rat rat_from_json(const Json& j) {
  if (j.is_number_integer()) return Rat(static_cast<long long>(j.get<long long>()));
  if (j.is_string()) return rat_from_string(j.get<std::string>());
  throw precondition_error("expected a rational as string or integer");
}

inline Json matrix_to_json(const RatMatrix& m) {
  Json rows = Json::array();
  for (int i = 0; i < m.rows(); ++i) {
    Json row = Json::array();
    for (int j = 0; j < m.cols(); ++j) row.push_back(rat_to_json(m.at(i, j)));
    rows.push_back(std::move(row));
  }
  return rows;
}

inline RatMatrix matrix_from_json(const Json& j) {
  if (!j.is_array() || j.empty()) throw precondition_error("matrix must be a nonempty array");
  std::vector<std::vector<Rat>> rows;
  for (const Json& row : j) {
    if (!row.is_array() || row.empty())
      throw precondition_error("matrix rows must be nonempty arrays");
    std::vector<Rat> r;
    for (const Json& v : row) r.push_back(rat_from_json(v));
    rows.push_back(std::move(r));
  }
  return RatMatrix::from_rows(std::move(rows));
}

inline Json poly_to_json(const IntPoly& p) { return poly_to_string(p); }
inline IntPoly poly_from_json(const Json& j) {
  if (!j.is_string()) throw precondition_error("polynomial must be a string");
  return poly_from_string(j.get<std::string>());
}

inline Json algebraic_to_json(const AlgebraicReal& a, int digits) {
  RatInterval iv = a.interval();
  return Json{{"minpoly", poly_to_json(a.minpoly())},
              {"interval", Json::array({rat_to_json(iv.lo), rat_to_json(iv.hi)})},
              {"decimal", a.decimal(digits)}};
}

inline AlgebraicReal algebraic_from_json(const Json& j) {
  IntPoly mp = poly_from_json(j.at("minpoly"));
  Rat lo = rat_from_json(j.at("interval").at(0));
  Rat hi = rat_from_json(j.at("interval").at(1));
  if (mp.degree() == 1) return AlgebraicReal::from_rational(Rat(-mp.coeff(0), mp.coeff(1)));
  if (!is_irreducible(mp))
    throw precondition_error("algebraic value carries a reducible minimal polynomial");
  return AlgebraicReal::from_isolated_root(mp, lo, hi);
}

// field elements as integer-polynomial-in-theta over a common denominator
inline Json field_elem_to_json(const FieldElem& x) {
  auto [num, den] = x.integral_form();
  return Json{{"num", poly_to_json(num)}, {"den", den.str()}};
}

inline FieldElem field_elem_from_json(const Json& j, const FieldPtr& field) {
  IntPoly num = poly_from_json(j.at("num"));
  Int den(j.at("den").get<std::string>());
  if (den <= 0) throw precondition_error("field element denominator must be positive");
  return Rat(1, den) * FieldElem(field, to_rat(num));
}

inline Json rotation_to_json(const RationalRotation& u) { return matrix_to_json(u.m); }

inline Json integrality_to_json(const IntegralityCertificate& c) {
  return Json{{"exponent", c.exponent},
              {"c", c.c.str()},
              {"d", c.d.str()},
              {"modulus", c.modulus.str()},
              {"omega_order", c.omega_order}};
}

inline IntegralityCertificate integrality_from_json(const Json& j) {
  IntegralityCertificate c;
  c.exponent = j.at("exponent").get<long long>();
  c.c = Int(j.at("c").get<std::string>());
  c.d = Int(j.at("d").get<std::string>());
  c.modulus = Int(j.at("modulus").get<std::string>());
  c.omega_order = j.at("omega_order").get<long long>();
  return c;
}

inline Json salem_classification_to_json(const SalemClassification& c, int digits) {
  Json j{{"verdict", to_string(c.verdict)}};
  if (c.salem_root) j["salem_root"] = algebraic_to_json(*c.salem_root, digits);
  if (!c.reason.empty()) j["reason"] = c.reason;
  return j;
}

inline Json certificate_to_json(const SkewPowerCertificate& cert, int digits) {
  Json j;
  j["input"] = poly_to_json(cert.p);
  j["verdict"] = to_string(cert.verdict);
  j["trace_polynomial"] = poly_to_json(cert.trace_poly);
  j["base_realization"] = matrix_to_json(cert.base_q);
  j["excess"] = cert.excess;
  j["rotation"] = rotation_to_json(cert.rotation);
  j["q"] = matrix_to_json(cert.q);
  j["integrality"] = integrality_to_json(cert.integrality);
  j["k"] = cert.k;
  j["qk"] = matrix_to_json(cert.qk);
  j["eigenvalue"] = algebraic_to_json(cert.eigenvalue, digits);
  j["eigen_minpoly"] = poly_to_json(cert.eigen_minpoly);
  Json evec = Json::array();
  for (const FieldElem& c : cert.eigenvector) evec.push_back(field_elem_to_json(c));
  j["eigenvector"] = std::move(evec);
  j["charpoly_qk"] = poly_to_json(cert.charpoly_qk);
  j["chart_a"] = cert.chart_a;
  j["replay"] = Json{{"entry_floor", cert.entry_floor.str()},
                     {"search_bound", cert.search_bound},
                     {"max_power", cert.max_power}};
  return j;
}

inline SkewPowerCertificate certificate_from_json(const Json& j) {
  SkewPowerCertificate cert;
  cert.p = poly_from_json(j.at("input"));
  std::string verdict = j.at("verdict").get<std::string>();
  cert.verdict = verdict == "Salem" ? SalemVerdict::Salem
                                    : verdict == "QuadraticReciprocalUnit"
                                          ? SalemVerdict::QuadraticReciprocalUnit
                                          : SalemVerdict::NotSalem;
  cert.trace_poly = poly_from_json(j.at("trace_polynomial"));
  cert.base_q = matrix_from_json(j.at("base_realization"));
  cert.excess = j.at("excess").get<int>();
  cert.rotation = RationalRotation::checked(matrix_from_json(j.at("rotation")));
  cert.q = matrix_from_json(j.at("q"));
  cert.integrality = integrality_from_json(j.at("integrality"));
  cert.k = j.at("k").get<long long>();
  cert.qk = matrix_from_json(j.at("qk"));
  cert.eigenvalue = algebraic_from_json(j.at("eigenvalue"));
  cert.eigen_minpoly = poly_from_json(j.at("eigen_minpoly"));
  AlgebraicReal theta = isolate_roots(cert.trace_poly).back();
  FieldPtr field = NumberField::make(theta);
  for (const Json& e : j.at("eigenvector")) cert.eigenvector.push_back(field_elem_from_json(e, field));
  cert.charpoly_qk = poly_from_json(j.at("charpoly_qk"));
  cert.chart_a = j.at("chart_a").get<int>();
  cert.entry_floor = Int(j.at("replay").at("entry_floor").get<std::string>());
  cert.search_bound = j.at("replay").at("search_bound").get<long long>();
  cert.max_power = j.at("replay").at("max_power").get<long long>();
  return cert;
}

// all indices 1-based in the file format
inline Json surface_to_json(const CombinatorialSurface& s) {
  Json j;
  j["n"] = s.n;
  Json rects = Json::array();
  for (const SurfaceBox& b : s.boxes)
    rects.push_back(Json{{"strip", b.strip + 1}, {"pos", b.pos + 1}, {"d", b.dlabel + 1}});
  j["rectangles"] = std::move(rects);
  auto slot_name = [](int slot) {
    static const char* side = "tblr";
    return "r" + std::to_string(CombinatorialSurface::box_of(slot) + 1) + "." +
           side[CombinatorialSurface::side_of(slot)];
  };
  Json glue = Json::array();
  for (int sl = 0; sl < static_cast<int>(s.glue.size()); ++sl)
    if (sl < s.glue[sl]) glue.push_back(Json::array({slot_name(sl), slot_name(s.glue[sl])}));
  j["gluing"] = std::move(glue);
  auto paths = [](const std::vector<std::vector<int>>& ps) {
    Json out = Json::array();
    for (const auto& p : ps) {
      Json path = Json::array();
      for (int b : p) path.push_back(b + 1);
      out.push_back(std::move(path));
    }
    return out;
  };
  j["c_curves"] = paths(s.c_paths);
  j["d_curves"] = paths(s.d_paths);
  return j;
}

inline Json surface_report_to_json(const SurfaceReport& rep) {
  Json j;
  j["vertices"] = rep.vertices;
  j["edges"] = rep.edges;
  j["faces"] = rep.faces;
  j["euler"] = rep.euler;
  j["genus"] = rep.genus;
  j["orientable"] = rep.orientable;
  j["connected"] = rep.connected;
  j["components"] = rep.components;
  j["tight"] = rep.tight;
  j["filling"] = rep.filling;
  j["intersection"] = matrix_to_json(rep.intersection);
  return j;
}

inline RoutingPlan routing_plan_from_json(const Json& j) {
  RoutingPlan plan;
  for (const Json& strip : j.at("strips")) {
    std::vector<int> labels;
    for (const Json& v : strip) labels.push_back(v.get<int>() - 1);
    plan.strip_labels.push_back(std::move(labels));
  }
  for (const Json& conn : j.at("connections")) {
    std::vector<std::pair<int, int>> c;
    for (const Json& ref : conn) c.emplace_back(ref.at(0).get<int>() - 1, ref.at(1).get<int>() - 1);
    plan.connections.push_back(std::move(c));
  }
  return plan;
}

inline Json pa_report_to_json(const PseudoAnosovReport& rep, int digits) {
  Json j;
  j["word"] = rep.word;
  j["nu"] = algebraic_to_json(rep.nu, digits);
  j["rep"] = Json::array({Json::array({field_elem_to_json(rep.rep.a), field_elem_to_json(rep.rep.b)}),
                          Json::array({field_elem_to_json(rep.rep.c), field_elem_to_json(rep.rep.d)})});
  j["trace"] = field_elem_to_json(rep.trace);
  j["verdict"] = to_string(rep.verdict);
  if (rep.stretch) j["stretch"] = algebraic_to_json(*rep.stretch, digits);
  j["trace_field_poly"] = poly_to_json(rep.trace_field_poly);
  return j;
}

inline Json theoremb_report_to_json(const TheoremBReport& rep, int digits) {
  Json j;
  j["field"] = poly_to_json(rep.defining);
  j["degree"] = rep.degree;
  j["rational_field_case"] = rep.rational_field_case;
  if (rep.generator) {
    Json g;
    g["alpha"] = field_elem_to_json(rep.generator->alpha);
    g["alpha_minpoly"] = poly_to_json(rep.alpha_minpoly);
    Json conj = Json::array();
    for (const AlgebraicReal& a : rep.generator->conjugate_values)
      conj.push_back(algebraic_to_json(a, digits));
    g["conjugates"] = std::move(conj);
    g["unit_exponents"] = rep.generator->exponents;
    g["normalization_power"] = rep.alpha_normalization_power;
    j["generator"] = std::move(g);
  }
  Json cert;
  cert["realization"] = matrix_to_json(rep.realization.Q);
  cert["excess"] = rep.realization.excess;
  cert["rotation"] = rotation_to_json(rep.rotation);
  cert["q"] = matrix_to_json(rep.positivized);
  cert["integrality"] = integrality_to_json(rep.integrality);
  cert["power"] = rep.power;
  cert["q_final"] = matrix_to_json(rep.q_final);
  j["certificate"] = std::move(cert);
  j["surface_report"] = surface_report_to_json(rep.surface);
  j["pa_report"] = pa_report_to_json(rep.pa, digits);
  Json eq;
  eq["equal"] = rep.field_equality.equal;
  eq["s_minpoly"] = poly_to_json(rep.field_equality.s_minpoly);
  {
    // theta = num(s) / den with num integral
    Int l = 1;
    for (const Rat& c : rep.field_equality.theta_in_s.coeffs()) l = lcm_int(l, rat_den(c));
    std::vector<Int> num;
    for (const Rat& c : rep.field_equality.theta_in_s.coeffs())
      num.push_back(rat_num(c) * (l / rat_den(c)));
    eq["theta_in_s"] = poly_to_json(IntPoly(std::move(num)));
    eq["theta_in_s_denominator"] = l.str();
  }
  j["field_equality"] = std::move(eq);
  return j;
}

}  // namespace salempa
