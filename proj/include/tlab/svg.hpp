#pragma once

#include <algorithm>
#include <cstdio>
#include <fstream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "codes.hpp"
#include "error.hpp"
#include "geom.hpp"
#include "scene.hpp"

namespace tlab {

/// What to draw on top of a scene.
struct RenderOverlay {
  std::optional<LineParam> witness;
  std::optional<Code> code;
  std::string title;
};

namespace detail {

inline std::string fixed3(double v) {
  char buf[48];
  std::snprintf(buf, sizeof buf, "%.3f", v);
  std::string s(buf);
  return s == "-0.000" ? "0.000" : s;
}

inline std::string xml_escape(const std::string& s) {
  std::string out;
  for (char c : s) {
    switch (c) {
      case '<': out += "&lt;"; break;
      case '>': out += "&gt;"; break;
      case '&': out += "&amp;"; break;
      case '"': out += "&quot;"; break;
      default: out += c;
    }
  }
  return out;
}

class SvgFrame {
 public:
  SvgFrame(double lo_x, double lo_y, double hi_x, double hi_y, double size)
      : lo_x_(lo_x), hi_y_(hi_y), size_(size) {
    const double span = std::max({hi_x - lo_x, hi_y - lo_y, 1e-9});
    scale_ = (size - 2 * margin) / span;
  }
  double x(double v) const { return margin + (v - lo_x_) * scale_; }
  double y(double v) const { return margin + (hi_y_ - v) * scale_; }
  double scale() const { return scale_; }
  double size() const { return size_; }
  static constexpr double margin = 40;

 private:
  double lo_x_, hi_y_, size_, scale_ = 1;
};

}  // namespace detail

/// Parallel projection of the scene onto a horizontal plane: section
/// outlines, half-plane boundaries with inward arrows, the projected witness
/// line and the code. Output depends only on the input.
inline std::string render_svg_string(const Scene& scene, const RenderOverlay& overlay = {}) {
  std::vector<Vec2> pts;
  for (const Section& s : scene.sections.sections())
    for (const Vec2& v : s.vertices()) pts.push_back(v);
  double t_lo = 0, t_hi = 1;
  if (!scene.sections.sections().empty()) {
    t_lo = scene.sections.sections().front().t();
    t_hi = scene.sections.sections().back().t();
  }
  if (scene.config) {
    for (const HalfPlane& h : scene.config->planes()) pts.push_back(h.anchor);
    t_lo = std::min(t_lo, (*scene.config)[0].t);
    t_hi = std::max(t_hi, (*scene.config)[4].t);
  }
  if (overlay.witness) {
    pts.push_back(line_point_at(*overlay.witness, t_lo));
    pts.push_back(line_point_at(*overlay.witness, t_hi));
  }
  if (pts.empty()) pts.push_back({0, 0});
  double lx = pts[0].x, ly = pts[0].y, hx = lx, hy = ly;
  for (const Vec2& p : pts) {
    lx = std::min(lx, p.x);
    ly = std::min(ly, p.y);
    hx = std::max(hx, p.x);
    hy = std::max(hy, p.y);
  }
  const double pad = 0.1 * std::max({hx - lx, hy - ly, 1.0});
  detail::SvgFrame f(lx - pad, ly - pad, hx + pad, hy + pad, 600);
  using detail::fixed3;

  std::ostringstream o;
  o << "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n";
  o << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"600\" height=\"640\" viewBox=\"0 0 600 640\">\n";
  o << "<style>.section{fill:#4a90d9;fill-opacity:0.12;stroke:#1f4e8c;stroke-width:1.5}"
       ".boundary{stroke:#b03030;stroke-width:1.2}.arrow{fill:none;stroke:#b03030;stroke-width:1.2}"
       ".witness{stroke:#208020;stroke-width:2}.label{font:12px sans-serif}</style>\n";
  o << "<rect width=\"600\" height=\"640\" fill=\"white\"/>\n";

  for (const Section& s : scene.sections.sections()) {
    o << "<polygon class=\"section\" data-t=\"" << format_number(s.t()) << "\" points=\"";
    for (std::size_t i = 0; i < s.size(); ++i)
      o << (i ? " " : "") << fixed3(f.x(s.vertices()[i].x)) << "," << fixed3(f.y(s.vertices()[i].y));
    o << "\"/>\n";
  }

  if (scene.config) {
    const double reach = 0.5 * (f.size() - 2 * detail::SvgFrame::margin) / f.scale();
    for (int k = 0; k < 5; ++k) {
      const HalfPlane& h = (*scene.config)[k];
      const Vec2 dir{-h.normal.y, h.normal.x};
      // Spread the boundaries of coincident anchors a little along the line.
      const Vec2 p = h.anchor + (0.15 * reach * (k - 2) / 2.0) * dir;
      const Vec2 a = h.anchor - reach * dir, b = h.anchor + reach * dir;
      o << "<line class=\"boundary\" data-t=\"" << format_number(h.t) << "\" x1=\"" << fixed3(f.x(a.x)) << "\" y1=\""
        << fixed3(f.y(a.y)) << "\" x2=\"" << fixed3(f.x(b.x)) << "\" y2=\"" << fixed3(f.y(b.y)) << "\"/>\n";
      const Vec2 tip = p + (0.12 * reach) * h.normal;
      const Vec2 l = tip - (0.04 * reach) * h.normal + (0.025 * reach) * dir;
      const Vec2 r = tip - (0.04 * reach) * h.normal - (0.025 * reach) * dir;
      o << "<path class=\"arrow\" d=\"M" << fixed3(f.x(p.x)) << "," << fixed3(f.y(p.y)) << " L" << fixed3(f.x(tip.x))
        << "," << fixed3(f.y(tip.y)) << " M" << fixed3(f.x(l.x)) << "," << fixed3(f.y(l.y)) << " L"
        << fixed3(f.x(tip.x)) << "," << fixed3(f.y(tip.y)) << " L" << fixed3(f.x(r.x)) << "," << fixed3(f.y(r.y))
        << "\"/>\n";
      o << "<text class=\"label\" x=\"" << fixed3(f.x(b.x)) << "\" y=\"" << fixed3(f.y(b.y)) << "\">" << k + 1
        << "</text>\n";
    }
  }

  if (overlay.witness) {
    const Vec2 a = line_point_at(*overlay.witness, t_lo), b = line_point_at(*overlay.witness, t_hi);
    o << "<line class=\"witness\" x1=\"" << fixed3(f.x(a.x)) << "\" y1=\"" << fixed3(f.y(a.y)) << "\" x2=\""
      << fixed3(f.x(b.x)) << "\" y2=\"" << fixed3(f.y(b.y)) << "\"/>\n";
  }

  std::string caption = overlay.title;
  if (overlay.code) caption += (caption.empty() ? "" : "  ") + std::string("code ") + overlay.code->str();
  if (!caption.empty()) o << "<text class=\"label code\" x=\"20\" y=\"625\">" << detail::xml_escape(caption) << "</text>\n";
  o << "</svg>\n";
  return o.str();
}

inline void render_svg(const Scene& scene, const RenderOverlay& overlay, const std::string& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw IoError("cannot write " + path);
  out << render_svg_string(scene, overlay);
  if (!out) throw IoError("write failed for " + path);
}

}  // namespace tlab
