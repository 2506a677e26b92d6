#include "latsurg/svg.hpp"

#include <algorithm>
#include <sstream>

namespace latsurg {

namespace {

std::string escape(const std::string& s) {
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

void line(std::ostringstream& o, int x1, int y1, int x2, int y2, bool dashed) {
  o << "<line x1=\"" << x1 << "\" y1=\"" << y1 << "\" x2=\"" << x2 << "\" y2=\"" << y2
    << "\" stroke=\"#222\" stroke-width=\"3\"" << (dashed ? " stroke-dasharray=\"5,4\"" : "") << "/>\n";
}

}  // namespace

std::string board_svg(const Board& b, int cell) {
  std::ostringstream o;
  const int w = b.cols() * cell, h = b.rows() * cell;
  o << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << w << "\" height=\"" << h << "\" viewBox=\"0 0 " << w
    << ' ' << h << "\">\n";
  for (int i = 0; i < b.tile_count(); ++i) {
    const Coord c = b.coord(i);
    const char* fill = "#f4f4f4";
    std::string label;
    switch (b.kind(c)) {
      case TileKind::routing: break;
      case TileKind::blocked: fill = "#555"; break;
      case TileKind::ancilla: fill = "#9cc9f0"; label = "A"; break;
      case TileKind::magic: fill = "#f3c77b"; label = "M"; break;
      case TileKind::data: fill = "#e9a3b6"; label = "q" + std::to_string(b.patch_at(c)); break;
    }
    const int x = c.c * cell, y = c.r * cell;
    o << "<rect x=\"" << x << "\" y=\"" << y << "\" width=\"" << cell << "\" height=\"" << cell << "\" fill=\"" << fill
      << "\" stroke=\"#bbb\"/>\n";
    if (!label.empty())
      o << "<text x=\"" << x + cell / 2 << "\" y=\"" << y + cell / 2 + 5 << "\" text-anchor=\"middle\" font-size=\""
        << cell / 3 << "\" font-family=\"sans-serif\">" << escape(label) << "</text>\n";
  }
  for (const auto& [id, p] : b.patches()) {
    for (Coord t : p.tiles) {
      const int x = t.c * cell + 3, y = t.r * cell + 3, s = cell - 6;
      // 'h': X on left/right.
      const bool x_vertical = p.orientation == Orientation::h;
      line(o, x, y, x + s, y, x_vertical);
      line(o, x, y + s, x + s, y + s, x_vertical);
      line(o, x, y, x, y + s, !x_vertical);
      line(o, x + s, y, x + s, y + s, !x_vertical);
    }
  }
  o << "</svg>\n";
  return o.str();
}

std::string bar_chart_svg(const std::string& title, const std::vector<std::pair<std::string, double>>& bars) {
  const int bar_h = 22, label_w = 180, plot_w = 360, top = 30;
  const int h = top + static_cast<int>(bars.size()) * (bar_h + 6) + 10;
  double max_v = 0.0;
  for (const auto& [l, v] : bars) max_v = std::max(max_v, v);
  std::ostringstream o;
  o << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << label_w + plot_w + 90 << "\" height=\"" << h << "\">\n";
  o << "<text x=\"10\" y=\"20\" font-size=\"14\" font-family=\"sans-serif\">" << escape(title) << "</text>\n";
  int y = top;
  for (const auto& [label, v] : bars) {
    const int len = max_v > 0 ? static_cast<int>(plot_w * v / max_v) : 0;
    o << "<text x=\"" << label_w - 6 << "\" y=\"" << y + 16 << "\" text-anchor=\"end\" font-size=\"12\" "
      << "font-family=\"sans-serif\">" << escape(label) << "</text>\n";
    o << "<rect x=\"" << label_w << "\" y=\"" << y << "\" width=\"" << len << "\" height=\"" << bar_h
      << "\" fill=\"#6a8fc7\"/>\n";
    o << "<text x=\"" << label_w + len + 6 << "\" y=\"" << y + 16 << "\" font-size=\"12\" font-family=\"sans-serif\">"
      << v << "</text>\n";
    y += bar_h + 6;
  }
  o << "</svg>\n";
  return o.str();
}

}  // namespace latsurg
