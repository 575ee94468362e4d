#include "udg/svg.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <sstream>

namespace udg {

namespace {

// Fixed-precision coordinate formatting keeps the output byte-stable.
std::string fmt(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.4f", v + 0.0);  // +0.0 folds -0 into 0
  return buf;
}

std::string fmt_len(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.6f", v);
  return buf;
}

std::string xml_escape(const std::string& s) {
  std::string out;
  for (char c : s) {
    switch (c) {
      case '&': out += "&amp;"; break;
      case '<': out += "&lt;"; break;
      case '>': out += "&gt;"; break;
      default: out += c;
    }
  }
  return out;
}

}  // namespace

std::string render_svg(const Graph& g, std::span<const Vec2> coords, const SvgStyle& style) {
  if (static_cast<int>(coords.size()) != g.vertex_count())
    throw std::invalid_argument("render_svg: coordinate count does not match vertex count");

  double minX = 0, maxX = 1, minY = 0, maxY = 1;
  if (!coords.empty()) {
    minX = maxX = coords[0][0];
    minY = maxY = coords[0][1];
    for (const Vec2& p : coords) {
      minX = std::min(minX, p[0]);
      maxX = std::max(maxX, p[0]);
      minY = std::min(minY, p[1]);
      maxY = std::max(maxY, p[1]);
    }
  }
  const double spanX = std::max(maxX - minX, 1e-9);
  const double spanY = std::max(maxY - minY, 1e-9);
  const double inner = style.widthPx - 2 * style.marginPx;
  const double scale = inner / std::max(spanX, spanY);
  const double heightPx = spanY * scale + 2 * style.marginPx;

  auto px = [&](const Vec2& p) -> Vec2 {
    // y flips so the plane's +y points up on screen.
    return {style.marginPx + (p[0] - minX) * scale,
            heightPx - (style.marginPx + (p[1] - minY) * scale)};
  };

  std::ostringstream out;
  out << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << fmt(style.widthPx)
      << "\" height=\"" << fmt(heightPx) << "\" viewBox=\"0 0 " << fmt(style.widthPx) << " "
      << fmt(heightPx) << "\">\n";
  out << "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";

  for (const Edge& e : g.edges()) {
    Vec2 a = px(coords[e.u]), b = px(coords[e.v]);
    double dx = coords[e.u][0] - coords[e.v][0], dy = coords[e.u][1] - coords[e.v][1];
    double len = std::sqrt(dx * dx + dy * dy);
    bool offUnit = std::abs(len - 1.0) > style.deviationTol;
    out << "<line x1=\"" << fmt(a[0]) << "\" y1=\"" << fmt(a[1]) << "\" x2=\"" << fmt(b[0])
        << "\" y2=\"" << fmt(b[1]) << "\" stroke=\"" << (offUnit ? "#c0392b" : "#2c3e50")
        << "\" stroke-width=\"1.5\"";
    if (offUnit) out << " stroke-dasharray=\"6 4\"";
    out << "/>\n";
    if (offUnit) {
      Vec2 mid{(a[0] + b[0]) / 2, (a[1] + b[1]) / 2};
      out << "<text x=\"" << fmt(mid[0]) << "\" y=\"" << fmt(mid[1] - 4)
          << "\" font-size=\"11\" fill=\"#c0392b\" text-anchor=\"middle\">"
          << fmt_len(len) << "</text>\n";
    }
  }

  for (int v = 0; v < g.vertex_count(); ++v) {
    Vec2 p = px(coords[v]);
    out << "<circle cx=\"" << fmt(p[0]) << "\" cy=\"" << fmt(p[1]) << "\" r=\""
        << fmt(style.vertexRadiusPx) << "\" fill=\"#ecf0f1\" stroke=\"#2c3e50\" "
           "stroke-width=\"1\"/>\n";
    out << "<text x=\"" << fmt(p[0]) << "\" y=\"" << fmt(p[1] + 3.5)
        << "\" font-size=\"10\" text-anchor=\"middle\">" << xml_escape(g.label(v))
        << "</text>\n";
  }
  out << "</svg>\n";
  return out.str();
}

}  // namespace udg
