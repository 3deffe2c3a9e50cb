#pragma once

#include <algorithm>
#include <map>
#include <sstream>
#include <string>
#include <vector>

#include "skedc/instance.hpp"
#include "skedc/rational.hpp"

namespace skedc {

namespace detail {

struct GanttBar {
  Rational start, end;
  int i, j;
};

// Machine -> bars sorted by start, ties by end then subtask identity.
inline std::map<int, std::vector<GanttBar>> gantt_rows(const Schedule& s) {
  std::map<int, std::vector<GanttBar>> rows;
  for (size_t i0 = 0; i0 < s.assignments.size(); ++i0)
    for (size_t j0 = 0; j0 < s.assignments[i0].size(); ++j0) {
      const ScheduleEntry& e = s.assignments[i0][j0];
      rows[e.machine].push_back(
          {e.start, e.end, static_cast<int>(i0 + 1), static_cast<int>(j0 + 1)});
    }
  for (auto& [k, bars] : rows)
    std::sort(bars.begin(), bars.end(), [](const GanttBar& a, const GanttBar& b) {
      if (!(a.start == b.start)) return a.start < b.start;
      if (!(a.end == b.end)) return a.end < b.end;
      return std::pair(a.i, a.j) < std::pair(b.i, b.j);
    });
  return rows;
}

}  // namespace detail

inline std::string gantt_text(const Schedule& s) {
  std::string out;
  for (const auto& [k, bars] : detail::gantt_rows(s)) {
    out += "m" + std::to_string(k) + ":";
    for (const auto& b : bars)
      out += " " + std::to_string(b.i) + "." + std::to_string(b.j) + " [" + b.start.str() +
             "," + b.end.str() + ")";
    out += "\n";
  }
  return out;
}

// Standalone SVG, one row per machine that has work, 1 time unit = 4 px,
// bar color keyed by job index so the same job reads as one color anywhere.
inline std::string gantt_svg(const Schedule& s) {
  auto rows = detail::gantt_rows(s);
  const double px = 4.0;
  const double left = 48.0, top = 24.0, row_h = 28.0, bar_h = 22.0;
  double span = s.makespan.to_double();
  double width = left + span * px + 24.0;
  double height = top + rows.size() * row_h + 32.0;

  std::ostringstream svg;
  svg << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << width << "\" height=\""
      << height << "\" viewBox=\"0 0 " << width << " " << height << "\">\n";
  svg << "<rect x=\"0\" y=\"0\" width=\"" << width << "\" height=\"" << height
      << "\" fill=\"white\"/>\n";
  int row = 0;
  for (const auto& [k, bars] : rows) {
    double y = top + row * row_h;
    svg << "<text x=\"6\" y=\"" << y + bar_h - 6 << "\" font-family=\"monospace\" font-size=\"12\">m"
        << k << "</text>\n";
    for (const auto& b : bars) {
      double x = left + b.start.to_double() * px;
      double w = (b.end - b.start).to_double() * px;
      int hue = (b.i * 137) % 360;
      svg << "<rect x=\"" << x << "\" y=\"" << y << "\" width=\"" << w << "\" height=\"" << bar_h
          << "\" fill=\"hsl(" << hue << ",65%,60%)\" stroke=\"black\" stroke-width=\"0.5\"/>\n";
      svg << "<text x=\"" << x + 3 << "\" y=\"" << y + bar_h - 7
          << "\" font-family=\"monospace\" font-size=\"11\">" << b.i << "." << b.j
          << "</text>\n";
    }
    ++row;
  }
  double axis_y = top + rows.size() * row_h + 6.0;
  svg << "<line x1=\"" << left << "\" y1=\"" << axis_y << "\" x2=\"" << left + span * px
      << "\" y2=\"" << axis_y << "\" stroke=\"black\" stroke-width=\"1\"/>\n";
  svg << "<text x=\"" << left << "\" y=\"" << axis_y + 14
      << "\" font-family=\"monospace\" font-size=\"11\">0</text>\n";
  svg << "<text x=\"" << left + span * px << "\" y=\"" << axis_y + 14
      << "\" font-family=\"monospace\" font-size=\"11\" text-anchor=\"end\">" << s.makespan.str()
      << "</text>\n";
  svg << "</svg>\n";
  return svg.str();
}

}  // namespace skedc
