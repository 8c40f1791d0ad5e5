// Command line front end: classify / certify / surface / thurston /
// pipeline-field, JSON in and out, deterministic byte-identical output for
// identical inputs. Exit status 0 on success, 2 on precondition or parse
// errors, 3 on search-bound exhaustion.

#include <CLI11.hpp>

#include <fstream>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include "salempa/json_io.hpp"

using namespace salempa;

namespace {

struct OutputOptions {
  std::string out_path;
  int precision = 12;
};

void emit_text(const OutputOptions& opt, const std::string& text) {
  if (opt.out_path.empty()) {
    std::cout << text;
  } else {
    std::ofstream out(opt.out_path, std::ios::binary);
    if (!out) throw precondition_error("cannot open output file " + opt.out_path);
    out << text;
  }
}

void emit(const OutputOptions& opt, const Json& j) { emit_text(opt, j.dump(2) + "\n"); }

Json load_json_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw precondition_error("cannot open file " + path);
  try {
    return Json::parse(in);
  } catch (const nlohmann::json::parse_error& e) {
    throw precondition_error("malformed JSON in " + path + ": " + e.what());
  }
}

RatMatrix parse_matrix_arg(const std::string& text) {
  try {
    return matrix_from_json(Json::parse(text));
  } catch (const nlohmann::json::parse_error& e) {
    throw precondition_error("malformed matrix: " + std::string(e.what()));
  }
}

std::vector<Int> parse_weights_arg(const std::string& text) {
  Json j;
  try {
    j = Json::parse(text);
  } catch (const nlohmann::json::parse_error& e) {
    throw precondition_error("malformed weight list: " + std::string(e.what()));
  }
  if (!j.is_array() || j.empty()) throw precondition_error("weights must be a nonempty array");
  std::vector<Int> out;
  for (const Json& v : j) out.push_back(Int(v.get<long long>()));
  return out;
}

// unit syntax: an integer polynomial in the field generator, optionally
// "(poly)/den" with a positive integer denominator
FieldElem parse_unit_arg(const std::string& text, const FieldPtr& field) {
  std::string poly_part = text;
  Int den = 1;
  if (!text.empty() && text.front() == '(') {
    auto close = text.rfind(')');
    if (close == std::string::npos) throw precondition_error("unbalanced parentheses in unit");
    poly_part = text.substr(1, close - 1);
    std::string rest = text.substr(close + 1);
    if (!rest.empty()) {
      if (rest[0] != '/') throw precondition_error("expected /denominator after unit parentheses");
      den = Int(rest.substr(1));
      if (den <= 0) throw precondition_error("unit denominator must be positive");
    }
  }
  return Rat(1, den) * FieldElem(field, to_rat(poly_from_string(poly_part)));
}

int run(int argc, char** argv) {
  CLI::App app{"exact Salem-number and totally-real-field pseudo-Anosov pipelines"};
  app.require_subcommand(1);
  OutputOptions out;

  std::string cls_poly;
  auto* cls = app.add_subcommand("classify", "classify a polynomial as Salem");
  cls->add_option("polynomial", cls_poly, "monic integer polynomial, e.g. x^4-x^3-x^2-x+1")
      ->required();
  cls->add_option("--precision", out.precision, "decimal digits in reports");
  cls->add_option("--out", out.out_path, "write JSON to a file instead of stdout");

  std::string cert_poly, cert_verify_path;
  long long cert_floor = 1, cert_bound = 6, cert_max_power = 10000;
  auto* cert = app.add_subcommand("certify", "build a stretch-factor certificate");
  cert->add_option("polynomial", cert_poly, "Salem or quadratic reciprocal unit polynomial");
  cert->add_option("--entry-floor", cert_floor, "minimum entry of the final matrix (default 1)");
  cert->add_option("--search-bound", cert_bound, "realization search bound (default 6)");
  cert->add_option("--max-power", cert_max_power, "cap on power searches (default 10000)");
  cert->add_option("--verify", cert_verify_path, "re-validate a stored certificate file");
  cert->add_option("--precision", out.precision, "decimal digits in reports");
  cert->add_option("--out", out.out_path, "write JSON to a file instead of stdout");

  std::string surf_matrix, surf_routing;
  bool surf_adjacency = false;
  auto* surf = app.add_subcommand("surface", "build and analyze a glued-rectangle surface");
  surf->add_option("--matrix", surf_matrix, "positive integer matrix, e.g. [[5,1],[1,2]]")
      ->required();
  surf->add_option("--routing", surf_routing, "JSON routing plan file");
  surf->add_flag("--adjacency", surf_adjacency, "emit a flat-text adjacency dump");
  surf->add_option("--precision", out.precision, "decimal digits in reports");
  surf->add_option("--out", out.out_path, "write output to a file instead of stdout");

  std::string th_matrix, th_word = "CD", th_wn, th_wm;
  bool th_product = false;
  auto* th = app.add_subcommand("thurston", "run Thurston's construction on a matrix");
  th->add_option("--matrix", th_matrix, "intersection matrix (rows = D curves)")->required();
  th->add_flag("--pf-product", th_product, "treat --matrix as the product M Q N Q^T directly");
  th->add_option("--word", th_word, "twist word, e.g. CD or C^2D^-1 (default CD)");
  th->add_option("--weights-n", th_wn, "C-curve twist weights, e.g. [2,2,1] (default ones)");
  th->add_option("--weights-m", th_wm, "D-curve twist weights (default ones)");
  th->add_option("--precision", out.precision, "decimal digits in reports");
  th->add_option("--out", out.out_path, "write JSON to a file instead of stdout");

  std::string pf_poly;
  std::vector<std::string> pf_units;
  long long pf_floor = 1, pf_bound = 6, pf_max_power = 10000, pf_alpha_bound = 16;
  auto* pf = app.add_subcommand("pipeline-field", "totally real field to pseudo-Anosov bundle");
  pf->add_option("polynomial", pf_poly, "monic irreducible totally real polynomial")->required();
  pf->add_option("--units", pf_units,
                 "fundamental units as polynomials in the generator, e.g. \"x\" or \"(x+1)/2\"");
  pf->add_option("--entry-floor", pf_floor, "minimum entry of the final matrix (default 1)");
  pf->add_option("--search-bound", pf_bound, "realization search bound (default 6)");
  pf->add_option("--max-power", pf_max_power, "cap on power searches (default 10000)");
  pf->add_option("--alpha-bound", pf_alpha_bound, "coefficient bound for the unit search");
  pf->add_option("--precision", out.precision, "decimal digits in reports");
  pf->add_option("--out", out.out_path, "write JSON to a file instead of stdout");

  CLI11_PARSE(app, argc, argv);

  if (cls->parsed()) {
    auto result = classify_salem(poly_from_string(cls_poly));
    emit(out, salem_classification_to_json(result, out.precision));
    return 0;
  }

  if (cert->parsed()) {
    if (!cert_verify_path.empty()) {
      SkewPowerCertificate loaded = certificate_from_json(load_json_file(cert_verify_path));
      validate_certificate(loaded);
      emit(out, Json{{"valid", true}, {"input", poly_to_json(loaded.p)}, {"k", loaded.k}});
      return 0;
    }
    if (cert_poly.empty())
      throw precondition_error("certify needs a polynomial or --verify FILE");
    auto certificate = salem_certificate(poly_from_string(cert_poly), Int(cert_floor),
                                         cert_bound, cert_max_power);
    emit(out, certificate_to_json(certificate, out.precision));
    return 0;
  }

  if (surf->parsed()) {
    RatMatrix q = parse_matrix_arg(surf_matrix);
    std::optional<RoutingPlan> plan;
    if (!surf_routing.empty()) plan = routing_plan_from_json(load_json_file(surf_routing));
    CombinatorialSurface s = build_surface(q, plan);
    SurfaceReport rep = analyze(s);
    if (surf_adjacency) {
      std::string text;
      for (size_t b = 0; b < s.boxes.size(); ++b)
        text += "box r" + std::to_string(b + 1) + ": strip " + std::to_string(s.boxes[b].strip + 1) +
                " pos " + std::to_string(s.boxes[b].pos + 1) + " D" +
                std::to_string(s.boxes[b].dlabel + 1) + "\n";
      static const char* side = "tblr";
      for (int sl = 0; sl < static_cast<int>(s.glue.size()); ++sl)
        if (sl < s.glue[sl]) {
          text += std::string("r") + std::to_string(CombinatorialSurface::box_of(sl) + 1) + "." +
                  side[CombinatorialSurface::side_of(sl)] + " -- r" +
                  std::to_string(CombinatorialSurface::box_of(s.glue[sl]) + 1) + "." +
                  side[CombinatorialSurface::side_of(s.glue[sl])] + "\n";
        }
      emit_text(out, text);
      return 0;
    }
    emit(out, Json{{"surface", surface_to_json(s)}, {"report", surface_report_to_json(rep)}});
    return 0;
  }

  if (th->parsed()) {
    RatMatrix q = parse_matrix_arg(th_matrix);
    PFData data = [&] {
      if (th_product) {
        if (!th_wn.empty() || !th_wm.empty())
          throw precondition_error("--pf-product does not take twist weights");
        return pf_data_from_product(q);
      }
      TwistWeights w = TwistWeights::ones(q.cols(), q.rows());
      if (!th_wn.empty()) w.n = parse_weights_arg(th_wn);
      if (!th_wm.empty()) w.m = parse_weights_arg(th_wm);
      return pf_data(q, w);
    }();
    PseudoAnosovReport rep = classify_word(parse_word(th_word), data.field, data.nu);
    Json j = pa_report_to_json(rep, out.precision);
    if (!th_product) {
      Json widths = Json::array(), heights = Json::array();
      for (const FieldElem& c : data.widths) widths.push_back(field_elem_to_json(c));
      for (const FieldElem& c : data.heights) heights.push_back(field_elem_to_json(c));
      j["pf"] = Json{{"product", matrix_to_json(data.product)},
                     {"widths", std::move(widths)},
                     {"heights", std::move(heights)}};
    } else {
      j["pf"] = Json{{"product", matrix_to_json(data.product)}};
    }
    emit(out, j);
    return 0;
  }

  if (pf->parsed()) {
    TotallyRealField field = make_totally_real_field(poly_from_string(pf_poly));
    std::optional<UnitSystem> units;
    if (!pf_units.empty()) {
      std::vector<FieldElem> elems;
      for (const std::string& u : pf_units) elems.push_back(parse_unit_arg(u, field.field()));
      units = verify_unit_system(field, std::move(elems));
    }
    PipelineConfig config;
    config.entry_floor = Int(pf_floor);
    config.search_bound = pf_bound;
    config.max_power = pf_max_power;
    config.precision_digits = out.precision;
    config.alpha_coeff_bound = pf_alpha_bound;
    TheoremBReport rep = theoremB_pipeline(field, units, config);
    emit(out, theoremb_report_to_json(rep, out.precision));
    return 0;
  }

  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  try {
    return run(argc, argv);
  } catch (const search_exhausted& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 3;
  } catch (const precondition_error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "internal error: " << e.what() << "\n";
    return 1;
  }
}
