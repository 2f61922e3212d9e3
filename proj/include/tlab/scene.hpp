#pragma once

#include <cctype>
#include <charconv>
#include <cmath>
#include <cstdint>
#include <fstream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "bodies.hpp"
#include "error.hpp"
#include "geom.hpp"

namespace tlab {

struct SceneMeta {
  std::string name;
  std::optional<std::uint64_t> seed;
  Provenance provenance = Provenance::custom;

  bool operator==(const SceneMeta&) const = default;
};

/// Sections plus an optional half-plane configuration. The half-planes are
/// kept as written so that serialization round-trips bit for bit; `config`
/// is the validated, sorted form.
struct Scene {
  SectionStack sections;
  std::vector<HalfPlane> halfplanes;
  std::optional<HalfPlaneConfig> config;
  SceneMeta meta;
};

inline bool operator==(const Scene& a, const Scene& b) {
  if (a.sections.size() != b.sections.size() || a.halfplanes.size() != b.halfplanes.size() || !(a.meta == b.meta))
    return false;
  for (std::size_t i = 0; i < a.sections.size(); ++i) {
    const Section& s = a.sections[i];
    const Section& r = b.sections[i];
    if (s.t() != r.t() || s.size() != r.size()) return false;
    for (std::size_t k = 0; k < s.size(); ++k)
      if (s.vertices()[k].x != r.vertices()[k].x || s.vertices()[k].y != r.vertices()[k].y) return false;
  }
  for (std::size_t i = 0; i < a.halfplanes.size(); ++i) {
    const HalfPlane& h = a.halfplanes[i];
    const HalfPlane& g = b.halfplanes[i];
    if (h.t != g.t || h.anchor.x != g.anchor.x || h.anchor.y != g.anchor.y || h.normal.x != g.normal.x ||
        h.normal.y != g.normal.y)
      return false;
  }
  return true;
}

/// Shortest decimal that reads back as the same double.
inline std::string format_number(double v) {
  char buf[64];
  auto [end, ec] = std::to_chars(buf, buf + sizeof buf, v);
  if (ec != std::errc()) throw ValidationError("number not representable");
  return std::string(buf, end);
}

namespace detail {

inline bool is_decimal(const std::string& s) {
  std::size_t i = 0;
  if (i < s.size() && (s[i] == '-' || s[i] == '+')) ++i;
  std::size_t digits = 0;
  while (i < s.size() && std::isdigit(static_cast<unsigned char>(s[i]))) ++i, ++digits;
  if (i < s.size() && s[i] == '.') {
    ++i;
    while (i < s.size() && std::isdigit(static_cast<unsigned char>(s[i]))) ++i, ++digits;
  }
  if (digits == 0) return false;
  if (i < s.size() && (s[i] == 'e' || s[i] == 'E')) {
    ++i;
    if (i < s.size() && (s[i] == '-' || s[i] == '+')) ++i;
    std::size_t exp = 0;
    while (i < s.size() && std::isdigit(static_cast<unsigned char>(s[i]))) ++i, ++exp;
    if (exp == 0) return false;
  }
  return i == s.size();
}

// from_chars rounds the exact decimal value to the nearest double.
inline double read_number(const nlohmann::json& j, const std::string& where) {
  if (j.is_number()) {
    const double v = j.get<double>();
    if (!std::isfinite(v)) throw ValidationError(where + ": number is not finite");
    return v;
  }
  if (j.is_string()) {
    std::string s = j.get<std::string>();
    if (!is_decimal(s)) throw ValidationError(where + ": \"" + s + "\" is not a decimal number");
    const char* first = s.data() + (s[0] == '+' ? 1 : 0);
    double v = 0;
    auto [ptr, ec] = std::from_chars(first, s.data() + s.size(), v);
    if (ec != std::errc() || ptr != s.data() + s.size() || !std::isfinite(v))
      throw ValidationError(where + ": \"" + s + "\" is out of range");
    return v;
  }
  throw ValidationError(where + ": expected a number");
}

inline Vec2 read_point(const nlohmann::json& j, const std::string& where) {
  if (!j.is_array() || j.size() != 2) throw ValidationError(where + ": expected [x, y]");
  return {read_number(j[0], where + "/0"), read_number(j[1], where + "/1")};
}

inline nlohmann::json write_point(const Vec2& p) { return {format_number(p.x), format_number(p.y)}; }

inline std::pair<std::size_t, std::size_t> line_column(const std::string& text, std::size_t byte) {
  std::size_t line = 1, col = 1;
  for (std::size_t i = 0; i < byte && i < text.size(); ++i) {
    if (text[i] == '\n') {
      ++line;
      col = 1;
    } else {
      ++col;
    }
  }
  return {line, col};
}

inline Provenance parse_provenance(const std::string& s) {
  if (s == "hyperboloid") return Provenance::hyperboloid;
  if (s == "split_cone") return Provenance::split_cone;
  if (s == "random") return Provenance::random;
  if (s == "custom") return Provenance::custom;
  throw ValidationError("meta/provenance: unknown provenance \"" + s + "\"");
}

}  // namespace detail

inline Scene scene_from_json(const nlohmann::json& doc) {
  if (!doc.is_object()) throw ValidationError("scene must be a JSON object");
  for (auto it = doc.begin(); it != doc.end(); ++it)
    if (it.key() != "sections" && it.key() != "halfplanes" && it.key() != "meta")
      throw ValidationError("unknown key \"" + it.key() + "\"");
  if (!doc.contains("sections") || !doc["sections"].is_array()) throw ValidationError("sections: expected an array");

  Scene scene;
  if (doc.contains("meta")) {
    const auto& m = doc["meta"];
    if (!m.is_object()) throw ValidationError("meta: expected an object");
    if (m.contains("name")) {
      if (!m["name"].is_string()) throw ValidationError("meta/name: expected a string");
      scene.meta.name = m["name"].get<std::string>();
    }
    if (m.contains("seed")) {
      if (m["seed"].is_number_unsigned()) {
        scene.meta.seed = m["seed"].get<std::uint64_t>();
      } else if (m["seed"].is_string()) {
        const std::string s = m["seed"].get<std::string>();
        std::uint64_t v = 0;
        auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
        if (ec != std::errc() || ptr != s.data() + s.size()) throw ValidationError("meta/seed: not an unsigned integer");
        scene.meta.seed = v;
      } else {
        throw ValidationError("meta/seed: not an unsigned integer");
      }
    }
    if (m.contains("provenance")) {
      if (!m["provenance"].is_string()) throw ValidationError("meta/provenance: expected a string");
      scene.meta.provenance = detail::parse_provenance(m["provenance"].get<std::string>());
    }
  }

  std::vector<Section> sections;
  const auto& arr = doc["sections"];
  for (std::size_t i = 0; i < arr.size(); ++i) {
    const std::string where = "sections/" + std::to_string(i);
    const auto& s = arr[i];
    if (!s.is_object() || !s.contains("t") || !s.contains("vertices"))
      throw ValidationError(where + ": expected {\"t\", \"vertices\"}");
    const double t = detail::read_number(s["t"], where + "/t");
    if (!s["vertices"].is_array() || s["vertices"].empty()) throw ValidationError(where + "/vertices: expected a non-empty array");
    std::vector<Vec2> v;
    for (std::size_t k = 0; k < s["vertices"].size(); ++k)
      v.push_back(detail::read_point(s["vertices"][k], where + "/vertices/" + std::to_string(k)));
    try {
      sections.emplace_back(t, v);
    } catch (const InvalidPolygon& e) {
      throw ValidationError(where + ": " + e.what());
    }
  }
  try {
    scene.sections = SectionStack(std::move(sections), scene.meta.provenance);
  } catch (const DuplicateHeights&) {
    throw ValidationError("heights not distinct");
  }

  if (doc.contains("halfplanes")) {
    const auto& hp = doc["halfplanes"];
    if (!hp.is_array()) throw ValidationError("halfplanes: expected an array");
    for (std::size_t i = 0; i < hp.size(); ++i) {
      const std::string where = "halfplanes/" + std::to_string(i);
      const auto& h = hp[i];
      if (!h.is_object() || !h.contains("t") || !h.contains("anchor") || !h.contains("normal"))
        throw ValidationError(where + ": expected {\"t\", \"anchor\", \"normal\"}");
      scene.halfplanes.push_back({detail::read_point(h["anchor"], where + "/anchor"),
                                  detail::read_point(h["normal"], where + "/normal"),
                                  detail::read_number(h["t"], where + "/t")});
    }
    if (!scene.halfplanes.empty()) {
      try {
        scene.config = HalfPlaneConfig(scene.halfplanes);
      } catch (const AnchorCollision&) {
        throw ValidationError("half-plane heights not distinct");
      }
      if (!scene.sections.sections().empty()) {
        for (const HalfPlane& h : scene.halfplanes) {
          bool found = false;
          for (const Section& s : scene.sections.sections()) found = found || s.t() == h.t;
          if (!found) throw ValidationError("half-plane height " + format_number(h.t) + " is not a section height");
        }
      }
    }
  }
  return scene;
}

inline Scene parse_scene_text(const std::string& text) {
  nlohmann::json doc;
  try {
    doc = nlohmann::json::parse(text);
  } catch (const nlohmann::json::parse_error& e) {
    auto [line, col] = detail::line_column(text, e.byte > 0 ? e.byte - 1 : 0);
    throw ParseError("line " + std::to_string(line) + ", column " + std::to_string(col) + ": " + e.what());
  }
  return scene_from_json(doc);
}

inline Scene parse_scene(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot open " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return parse_scene_text(ss.str());
}

inline nlohmann::json scene_to_json(const Scene& scene) {
  nlohmann::json doc = nlohmann::json::object();
  nlohmann::json secs = nlohmann::json::array();
  for (const Section& s : scene.sections.sections()) {
    nlohmann::json v = nlohmann::json::array();
    for (const Vec2& p : s.vertices()) v.push_back(detail::write_point(p));
    secs.push_back({{"t", format_number(s.t())}, {"vertices", v}});
  }
  doc["sections"] = secs;
  if (!scene.halfplanes.empty()) {
    nlohmann::json hp = nlohmann::json::array();
    for (const HalfPlane& h : scene.halfplanes)
      hp.push_back({{"t", format_number(h.t)}, {"anchor", detail::write_point(h.anchor)}, {"normal", detail::write_point(h.normal)}});
    doc["halfplanes"] = hp;
  }
  nlohmann::json meta = nlohmann::json::object();
  if (!scene.meta.name.empty()) meta["name"] = scene.meta.name;
  if (scene.meta.seed) meta["seed"] = *scene.meta.seed;
  meta["provenance"] = provenance_name(scene.meta.provenance);
  doc["meta"] = meta;
  return doc;
}

inline std::string serialize_scene(const Scene& scene) { return scene_to_json(scene).dump(2) + "\n"; }

inline void write_scene(const Scene& scene, const std::string& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw IoError("cannot write " + path);
  out << serialize_scene(scene);
  if (!out) throw IoError("write failed for " + path);
}

/// Scene holding the half-planes of a configuration (sorted by height).
inline std::vector<HalfPlane> halfplanes_of(const HalfPlaneConfig& config) {
  return {config.planes().begin(), config.planes().end()};
}

}  // namespace tlab
