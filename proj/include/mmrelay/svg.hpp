#pragma once

#include <array>
#include <cstdio>
#include <ostream>
#include <string>
#include <vector>

#include "mmrelay/routing.hpp"
#include "mmrelay/topology.hpp"

namespace mmrelay {

// Red, green, blue for the first three pairs, then the cycle continues with
// orange, purple, cyan, magenta, brown.
inline const char* pair_color(int pair) {
  static constexpr std::array<const char*, 8> palette = {
      "#d62728", "#2ca02c", "#1f77b4", "#ff7f0e",
      "#9467bd", "#17becf", "#e377c2", "#8c564b"};
  return palette[static_cast<std::size_t>(pair) % palette.size()];
}

namespace detail {

inline std::string svg_coord(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.2f", v);
  return buf;
}

}  // namespace detail

// Standalone SVG path map: the area rectangle to scale, sources as colored
// circles, destinations as matching squares, relays as black circles, and
// one edge group per pair. LOS edges are solid, NLOS edges dashed.
inline void render_svg(const Instance& inst, const std::vector<Path>& paths,
                       std::ostream& os) {
  const double margin = 40.0;
  const double scale = 800.0 / std::max(inst.area.width, inst.area.height);
  const double width = inst.area.width * scale + 2 * margin;
  const double height = inst.area.height * scale + 2 * margin;
  const auto px = [&](double x) { return margin + x * scale; };
  const auto py = [&](double y) { return margin + (inst.area.height - y) * scale; };
  using detail::svg_coord;

  os << "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n"
     << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << svg_coord(width)
     << "\" height=\"" << svg_coord(height) << "\" viewBox=\"0 0 " << svg_coord(width) << " "
     << svg_coord(height) << "\">\n";
  os << "  <rect class=\"area\" x=\"" << svg_coord(margin) << "\" y=\"" << svg_coord(margin)
     << "\" width=\"" << svg_coord(inst.area.width * scale) << "\" height=\""
     << svg_coord(inst.area.height * scale)
     << "\" fill=\"#ffffff\" stroke=\"#888888\" stroke-width=\"1\"/>\n";

  for (const Path& path : paths) {
    os << "  <g class=\"pair-path\" fill=\"none\" stroke=\"" << pair_color(path.pair)
       << "\" stroke-width=\"2\">\n";
    for (std::size_t j = 0; j + 1 < path.nodes.size(); ++j) {
      const Node& a = inst.nodes[path.nodes[j]];
      const Node& b = inst.nodes[path.nodes[j + 1]];
      os << "    <line x1=\"" << svg_coord(px(a.x)) << "\" y1=\"" << svg_coord(py(a.y))
         << "\" x2=\"" << svg_coord(px(b.x)) << "\" y2=\"" << svg_coord(py(b.y)) << "\"";
      if (!inst.los(a.id, b.id)) os << " stroke-dasharray=\"6 4\"";
      os << "/>\n";
    }
    os << "  </g>\n";
  }

  for (const Node& node : inst.nodes) {
    switch (node.role) {
      case NodeRole::source:
        os << "  <circle class=\"node source\" cx=\"" << svg_coord(px(node.x)) << "\" cy=\""
           << svg_coord(py(node.y)) << "\" r=\"7\" fill=\"" << pair_color(node.pair)
           << "\"/>\n";
        break;
      case NodeRole::destination:
        os << "  <rect class=\"node destination\" x=\"" << svg_coord(px(node.x) - 6)
           << "\" y=\"" << svg_coord(py(node.y) - 6) << "\" width=\"12\" height=\"12\" fill=\""
           << pair_color(node.pair) << "\"/>\n";
        break;
      case NodeRole::relay:
        os << "  <circle class=\"node relay\" cx=\"" << svg_coord(px(node.x)) << "\" cy=\""
           << svg_coord(py(node.y)) << "\" r=\"5\" fill=\"#000000\"/>\n";
        break;
    }
  }
  os << "</svg>\n";
}

}  // namespace mmrelay
