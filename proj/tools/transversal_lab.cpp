// Command-line front end. Results go to stdout as JSON (or to --out); exit
// status is 0 on success, 1 on a negative mathematical result and 2 on bad
// usage or input.

#include <cstdint>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <nlohmann/json.hpp>

#include "tlab/tlab.hpp"

namespace {

using Json = nlohmann::ordered_json;
using tlab::format_number;

constexpr int exit_ok = 0;
constexpr int exit_negative = 1;
constexpr int exit_input = 2;

Json line_json(const tlab::LineParam& l) {
  return Json::array({format_number(l.a), format_number(l.b), format_number(l.c), format_number(l.d)});
}

Json exact_line_json(const tlab::QLineParam& l) {
  return Json::array({tlab::to_string(l.a), tlab::to_string(l.b), tlab::to_string(l.c), tlab::to_string(l.d)});
}

Json point_json(const tlab::Vec2& p) { return Json::array({format_number(p.x), format_number(p.y)}); }

Json report_json(const tlab::TransversalReport& r) {
  Json j;
  j["feasible"] = r.feasible;
  if (r.witness) j["line"] = line_json(*r.witness);
  if (r.exact_witness) j["exact_line"] = exact_line_json(*r.exact_witness);
  if (r.feasible) j["margin"] = format_number(r.margin);
  if (r.infeasible_subset) j["infeasible_subset"] = *r.infeasible_subset;
  return j;
}

Json deformation_json(const tlab::DeformationResult& d) {
  Json j;
  j["found"] = d.found;
  if (d.line) j["line"] = line_json(*d.line);
  if (d.exact_line) j["exact_line"] = exact_line_json(*d.exact_line);
  Json s = Json::array();
  for (double v : d.slack) s.push_back(format_number(v));
  j["slack"] = s;
  j["total_slack"] = format_number(d.total_slack);
  if (d.stencil) {
    Json st = Json::array();
    for (const tlab::Vec2& p : *d.stencil) st.push_back(point_json(p));
    j["stencil"] = st;
  }
  if (d.dilation) j["dilation"] = format_number(*d.dilation);
  if (!d.route.empty()) j["route"] = d.route;
  return j;
}

std::string witness_kind(tlab::ContradictionWitness::Kind k) {
  switch (k) {
    case tlab::ContradictionWitness::Kind::containment: return "containment";
    case tlab::ContradictionWitness::Kind::browder_line: return "browder_line";
    case tlab::ContradictionWitness::Kind::segment: return "segment";
  }
  return "containment";
}

class Output {
 public:
  explicit Output(std::string path) : path_(std::move(path)) {}
  void emit(const Json& j) const { write(j.dump(2) + "\n"); }
  void write(const std::string& text) const {
    if (path_.empty()) {
      std::cout << text;
      return;
    }
    std::ofstream f(path_, std::ios::binary);
    if (!f) throw tlab::IoError("cannot write " + path_);
    f << text;
  }

 private:
  std::string path_;
};

const tlab::HalfPlaneConfig& require_config(const tlab::Scene& s) {
  if (!s.config) throw tlab::ValidationError("scene has no half-planes");
  return *s.config;
}

std::vector<tlab::Section> sections_at_config(const tlab::Scene& s) {
  const tlab::HalfPlaneConfig& c = require_config(s);
  std::vector<tlab::Section> out;
  for (const tlab::HalfPlane& h : c.planes())
    for (const tlab::Section& sec : s.sections.sections())
      if (sec.t() == h.t) out.push_back(sec);
  if (out.size() != 5) throw tlab::ValidationError("need a section at every half-plane height");
  return out;
}

std::vector<double> parse_heights(const std::string& s) {
  std::vector<double> out;
  std::stringstream ss(s);
  std::string item;
  while (std::getline(ss, item, ',')) {
    if (!tlab::detail::is_decimal(item)) throw tlab::ValidationError("bad height \"" + item + "\"");
    out.push_back(tlab::detail::read_number(nlohmann::json(item), "heights"));
  }
  return out;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Line transversals of sections, Chebyshev lines and half-plane codes"};
  app.require_subcommand(1);
  app.fallthrough();
  std::string out_path;
  app.add_option("-o,--out", out_path, "write the JSON result here instead of stdout");

  std::string scene_path;
  auto scene_cmd = [&](const std::string& name, const std::string& help) {
    CLI::App* c = app.add_subcommand(name, help);
    c->add_option("scene", scene_path, "scene JSON file")->required();
    return c;
  };

  CLI::App* classify = app.add_subcommand("classify-codes", "orbits of the 3840 codes under the four generators");
  CLI::App* transversal = scene_cmd("transversal", "exact LP search for a line meeting every section");
  bool canonical = false;
  transversal->add_flag("--canonical", canonical, "report the analytic center of the feasible lines");
  CLI::App* helly = scene_cmd("helly", "compare global feasibility with feasibility of all 5-subfamilies");
  CLI::App* browder = scene_cmd("browder4", "transversal of four sections, optionally with the fixed-point trace");
  std::vector<std::size_t> pick;
  bool trace = false;
  int max_iter = 200;
  browder->add_option("--pick", pick, "positions of the four sections (default: the first four)")->expected(4);
  browder->add_flag("--trace", trace, "iterate the set-valued map on the second section");
  browder->add_option("--max-iter", max_iter, "iterations for --trace");
  CLI::App* cheb = scene_cmd("chebyshev", "line minimizing the largest distance to the sections");
  double tol = 1e-10;
  cheb->add_option("--tol", tol, "duality-gap tolerance");
  CLI::App* extract = scene_cmd("extract-config", "scene with the half-planes of the Chebyshev line");
  CLI::App* code = scene_cmd("code", "code of the scene's half-plane configuration");
  int m_interval = 4, orient = 1, n_index = 0, circle = 1;
  code->add_option("--m", m_interval, "projection center: 0..3 between heights, 4 at infinity");
  code->add_option("--orient", orient, "numbering direction, 1 or -1");
  code->add_option("--n", n_index, "arc of the circle holding N, 0..9");
  code->add_option("--circle", circle, "direction of travel around the circle, 1 or -1");
  CLI::App* deform = scene_cmd("deform", "search for a good deformation of the half-planes");
  CLI::App* verify = scene_cmd("verify-case", "run the class-specific argument on the configuration");
  std::string cls_name;
  verify->add_option("--class", cls_name, "C1, C2, C3, C4, D5 or E6 (default: the configuration's class)");
  CLI::App* cc = scene_cmd("check-cc", "sampled three-section line property");
  int samples = 1000;
  std::uint64_t seed = 1;
  bool exact = false, affine = false;
  cc->add_option("--samples", samples, "number of sampled (triple, point) pairs");
  cc->add_option("--seed", seed, "random seed");
  cc->add_flag("--exact", exact, "check every vertex of every triple instead of sampling");
  cc->add_flag("--affine", affine, "only sample points of the middle section");
  CLI::App* gen = app.add_subcommand("gen", "generate a scene");
  std::string model = "hyperboloid", heights_arg, name;
  int n_sections = 5, n_vertices = 16;
  std::uint64_t gen_seed = 1;
  gen->add_option("--model", model, "hyperboloid, split-cone or random")
      ->check(CLI::IsMember({"hyperboloid", "split-cone", "random"}));
  gen->add_option("--heights", heights_arg, "comma-separated heights");
  gen->add_option("--sections", n_sections, "number of sections when --heights is absent");
  gen->add_option("--vertices", n_vertices, "vertices per polygon (hyperboloid, split-cone)");
  gen->add_option("--seed", gen_seed, "random seed");
  gen->add_option("--name", name, "scene name");
  CLI::App* render = scene_cmd("render", "SVG of the scene projected to a horizontal plane");
  std::string svg_path;
  render->add_option("svg", svg_path, "output SVG file")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return exit_input;
  }

  const Output out(out_path);
  try {
    if (classify->parsed()) {
      const tlab::Classification& cl = tlab::classification();
      Json j;
      j["codes"] = tlab::Code::count;
      j["orbits"] = cl.orbits.size();
      j["group_order"] = tlab::induced_group_order();
      Json sizes = Json::array();
      for (const auto& o : cl.orbits) sizes.push_back(o.size());
      j["orbit_sizes"] = sizes;
      Json tf = Json::array();
      for (std::size_t id : cl.trivial_free) {
        const tlab::Code rep = cl.orbits[id].front();
        tf.push_back({{"class", tlab::class_name(tlab::canonical_class(rep))},
                      {"representative", rep.str()},
                      {"size", cl.orbits[id].size()}});
      }
      j["trivial_free"] = tf;
      out.emit(j);
      return cl.trivial_free.size() == 6 ? exit_ok : exit_negative;
    }

    if (gen->parsed()) {
      std::vector<double> heights = heights_arg.empty() ? std::vector<double>{} : parse_heights(heights_arg);
      if (heights.empty() && model != "random")
        for (int i = 0; i < n_sections; ++i) heights.push_back(model == "split-cone" ? 2.0 + i : -2.0 + i);
      tlab::Scene s;
      if (model == "hyperboloid") s.sections = tlab::hyperboloid_sections(heights, n_vertices);
      else if (model == "split-cone") s.sections = tlab::split_cone_sections(heights, n_vertices);
      else s.sections = tlab::random_convex_concave(gen_seed, heights.empty() ? n_sections : static_cast<int>(heights.size()), heights);
      s.meta.name = name;
      s.meta.provenance = s.sections.provenance();
      if (model == "random") s.meta.seed = gen_seed;
      out.write(tlab::serialize_scene(s));
      return exit_ok;
    }

    const tlab::Scene scene = tlab::parse_scene(scene_path);
    const std::vector<tlab::Section>& secs = scene.sections.sections();

    if (transversal->parsed()) {
      tlab::TransversalReport r = tlab::find_transversal(secs, canonical);
      out.emit(report_json(r));
      return r.feasible ? exit_ok : exit_negative;
    }
    if (helly->parsed()) {
      tlab::HellyReport r = tlab::helly_check(secs);
      Json j;
      j["global"] = r.global;
      j["all_quintuples"] = r.all_quintuples;
      j["equivalent"] = r.equivalent();
      if (r.witness_quintuple) j["witness_quintuple"] = *r.witness_quintuple;
      out.emit(j);
      return r.equivalent() ? exit_ok : exit_negative;
    }
    if (browder->parsed()) {
      if (pick.empty()) pick = {0, 1, 2, 3};
      if (secs.size() < 4) throw tlab::TooFewSections("need four sections");
      std::vector<tlab::Section> four = scene.sections.pick(pick);
      tlab::TransversalReport r = tlab::browder_four(four[0], four[1], four[2], four[3]);
      Json j = report_json(r);
      if (trace) {
        tlab::FixedPointTrace tr = tlab::fixed_point_trace(four[0], four[1], four[2], four[3], four[1].centroid(), max_iter);
        Json pts = Json::array();
        for (const tlab::Vec2& p : tr.points) pts.push_back(point_json(p));
        j["trace"] = {{"converged", tr.converged}, {"residual", format_number(tr.residual)}, {"points", pts}};
        if (tr.line) j["trace"]["line"] = line_json(*tr.line);
      }
      out.emit(j);
      return r.feasible ? exit_ok : exit_negative;
    }
    if (cheb->parsed()) {
      tlab::ChebyshevResult r = tlab::chebyshev_line(secs, tol);
      Json j;
      j["value"] = format_number(r.value);
      j["line"] = line_json(r.line);
      Json per = Json::array();
      for (const tlab::SectionDistance& d : r.per_section)
        per.push_back({{"distance", format_number(d.dist)}, {"line_point", point_json(d.a)}, {"closest", point_json(d.s)}});
      j["sections"] = per;
      j["spread"] = format_number(r.spread());
      j["polished"] = r.polished;
      out.emit(j);
      return exit_ok;
    }
    if (extract->parsed()) {
      tlab::ChebyshevResult r = tlab::chebyshev_line(secs);
      tlab::HalfPlaneConfig c = tlab::extract_halfplanes(r, secs);
      tlab::Scene s = scene;
      s.halfplanes = tlab::halfplanes_of(c);
      s.config = c;
      out.write(tlab::serialize_scene(s));
      return exit_ok;
    }
    if (code->parsed()) {
      tlab::CodingDetail d = tlab::coding_detail(require_config(scene), {m_interval, orient, n_index, circle});
      Json j;
      j["code"] = d.code.str();
      j["class"] = tlab::class_name(tlab::canonical_class(d.code));
      j["trivial"] = tlab::is_trivial_code(d.code);
      j["canonical_representative"] = tlab::canonical_representative(d.code).str();
      Json labels = Json::array();
      for (int p : d.plane_of_label) labels.push_back(p);
      j["plane_of_label"] = labels;
      j["m"] = d.m ? Json(format_number(*d.m)) : Json("infinity");
      j["n_angle"] = format_number(d.n_angle);
      out.emit(j);
      return exit_ok;
    }
    if (deform->parsed()) {
      tlab::DeformationResult d = tlab::find_good_deformation(require_config(scene));
      out.emit(deformation_json(d));
      return d.found ? exit_ok : exit_negative;
    }
    if (verify->parsed()) {
      const tlab::HalfPlaneConfig& c = require_config(scene);
      const tlab::CodeClass k = cls_name.empty() ? tlab::canonical_class(tlab::code_from_configuration(c))
                                                 : tlab::parse_class(cls_name);
      tlab::CaseOutcome o = tlab::verify_case(k, sections_at_config(scene), c);
      Json j;
      j["class"] = tlab::class_name(k);
      if (auto* d = std::get_if<tlab::DeformationResult>(&o)) {
        j["outcome"] = "deformation";
        j["deformation"] = deformation_json(*d);
        out.emit(j);
        return d->found ? exit_ok : exit_negative;
      }
      const auto& w = std::get<tlab::ContradictionWitness>(o);
      j["outcome"] = "contradiction";
      Json wj;
      wj["kind"] = witness_kind(w.kind);
      wj["detail"] = w.detail;
      if (w.section >= 0) wj["section"] = w.section;
      if (w.point) wj["point"] = point_json(*w.point);
      if (w.line) wj["line"] = line_json(*w.line);
      j["witness"] = wj;
      out.emit(j);
      return exit_ok;
    }
    if (cc->parsed()) {
      tlab::ConvexConcavityReport r =
          exact ? tlab::convex_concavity_exact(scene.sections, affine)
                : tlab::convex_concavity_check(scene.sections, samples, seed, affine);
      Json j;
      j["pass"] = r.pass;
      j["tested"] = r.tested;
      if (r.witness)
        j["witness"] = {{"triple", r.witness->triple}, {"section", r.witness->section}, {"point", point_json(r.witness->point)}};
      out.emit(j);
      return r.pass ? exit_ok : exit_negative;
    }
    if (render->parsed()) {
      tlab::RenderOverlay ov;
      ov.title = scene.meta.name;
      if (!secs.empty()) {
        tlab::TransversalReport r = tlab::find_transversal(secs);
        if (r.feasible) ov.witness = r.witness;
        else if (secs.size() == 5) ov.witness = tlab::chebyshev_line(secs).line;
      }
      if (scene.config && scene.config->generic()) {
        try {
          ov.code = tlab::code_from_configuration(*scene.config);
        } catch (const tlab::Degenerate&) {
        }
      }
      tlab::render_svg(scene, ov, svg_path);
      return exit_ok;
    }
  } catch (const tlab::Error& e) {
    std::cerr << e.what() << "\n";
    return e.category() == tlab::ErrorCategory::input ? exit_input : exit_negative;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return exit_input;
  }
  return exit_ok;
}
