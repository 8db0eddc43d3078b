#pragma once

// CSV and hand-written SVG output for staircases and measure curves. Every
// coordinate an SVG emits lies inside its declared width and height.

#include <algorithm>
#include <cstdio>
#include <map>
#include <ostream>
#include <string>
#include <vector>

#include "sophdepth/measures.hpp"

namespace sophdepth {

inline constexpr std::string_view kStaircaseCsvHeader = "i,j";

inline void write_staircase_csv(std::ostream& os, const StructureSet& s) {
  os << kStaircaseCsvHeader << '\n';
  for (const auto& p : s.staircase) os << p.i << ',' << p.j << '\n';
}

struct SvgFrame {
  double width = 480;
  double height = 360;
  double margin = 40;
  double x_max = 1;
  double y_max = 1;

  [[nodiscard]] double px(double x) const {
    return margin + (width - 2 * margin) * std::clamp(x / x_max, 0.0, 1.0);
  }
  [[nodiscard]] double py(double y) const {
    return height - margin - (height - 2 * margin) * std::clamp(y / y_max, 0.0, 1.0);
  }
};

namespace detail {

inline std::string fmt(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.1f", v);
  return buf;
}

inline void svg_open(std::ostream& os, const SvgFrame& f, const std::string& title) {
  os << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << fmt(f.width) << "\" height=\""
     << fmt(f.height) << "\" viewBox=\"0 0 " << fmt(f.width) << ' ' << fmt(f.height) << "\">\n"
     << "<title>" << title << "</title>\n"
     << "<rect x=\"0.0\" y=\"0.0\" width=\"" << fmt(f.width) << "\" height=\"" << fmt(f.height)
     << "\" fill=\"white\"/>\n"
     << "<line x1=\"" << fmt(f.px(0)) << "\" y1=\"" << fmt(f.py(0)) << "\" x2=\"" << fmt(f.px(f.x_max))
     << "\" y2=\"" << fmt(f.py(0)) << "\" stroke=\"black\"/>\n"
     << "<line x1=\"" << fmt(f.px(0)) << "\" y1=\"" << fmt(f.py(0)) << "\" x2=\"" << fmt(f.px(0))
     << "\" y2=\"" << fmt(f.py(f.y_max)) << "\" stroke=\"black\"/>\n";
}

inline void svg_label(std::ostream& os, double x, double y, const std::string& text) {
  os << "<text x=\"" << fmt(x) << "\" y=\"" << fmt(y) << "\" font-size=\"12\">" << text << "</text>\n";
}

}  // namespace detail

/// Staircase h(i) with its attainable region shaded, and the line i + j = C(x).
inline void write_staircase_svg(std::ostream& os, const BitString& x, const StructureSet& s,
                                std::uint64_t complexity, std::size_t i_max, std::size_t j_max) {
  SvgFrame f;
  f.x_max = static_cast<double>(std::max<std::size_t>(i_max, 1));
  f.y_max = static_cast<double>(std::max<std::size_t>(j_max, 1));
  detail::svg_open(os, f, "structure of " + x.field());
  if (!s.staircase.empty()) {
    // Region above the staircase, drawn as a closed step polygon.
    os << "<polygon fill=\"#dde6f3\" points=\"";
    os << detail::fmt(f.px(static_cast<double>(s.staircase.front().i))) << ','
       << detail::fmt(f.py(f.y_max)) << ' ';
    for (std::size_t n = 0; n < s.staircase.size(); ++n) {
      const auto& p = s.staircase[n];
      const double next = n + 1 < s.staircase.size() ? static_cast<double>(s.staircase[n + 1].i)
                                                     : f.x_max;
      os << detail::fmt(f.px(static_cast<double>(p.i))) << ',' << detail::fmt(f.py(static_cast<double>(p.j)))
         << ' ' << detail::fmt(f.px(next)) << ',' << detail::fmt(f.py(static_cast<double>(p.j))) << ' ';
    }
    os << detail::fmt(f.px(f.x_max)) << ',' << detail::fmt(f.py(f.y_max)) << "\"/>\n";
    for (const auto& p : s.staircase) {
      os << "<circle cx=\"" << detail::fmt(f.px(static_cast<double>(p.i))) << "\" cy=\""
         << detail::fmt(f.py(static_cast<double>(p.j))) << "\" r=\"3\" fill=\"#1f4e8c\"/>\n";
    }
  }
  // i + j = C, clipped to the frame.
  const double c = static_cast<double>(complexity);
  const double x0 = std::max(0.0, c - f.y_max);
  const double x1 = std::min(f.x_max, c);
  if (x0 <= x1) {
    os << "<line x1=\"" << detail::fmt(f.px(x0)) << "\" y1=\"" << detail::fmt(f.py(c - x0))
       << "\" x2=\"" << detail::fmt(f.px(x1)) << "\" y2=\"" << detail::fmt(f.py(c - x1))
       << "\" stroke=\"#b22222\" stroke-dasharray=\"4 3\"/>\n";
  }
  detail::svg_label(os, f.width / 2, f.height - 10, "i (program length)");
  detail::svg_label(os, 4, 14, "j = log2|S|, line i+j=" + std::to_string(complexity));
  os << "</svg>\n";
}

/// One polyline per measure over the significance grid.
inline void write_curves_svg(std::ostream& os, const BitString& x, const std::vector<std::size_t>& cs,
                             const std::map<std::string, std::vector<MeasureValue>>& curves) {
  SvgFrame f;
  f.x_max = static_cast<double>(std::max<std::size_t>(cs.empty() ? 1 : cs.back(), 1));
  double top = 1;
  for (const auto& [name, vs] : curves) {
    for (const auto& v : vs) top = std::max(top, static_cast<double>(v.value));
  }
  f.y_max = top;
  detail::svg_open(os, f, "measures of " + x.field());
  static const char* colors[] = {"#1f4e8c", "#b22222", "#2e7d32", "#6a1b9a", "#ef6c00", "#455a64"};
  std::size_t n = 0;
  for (const auto& [name, vs] : curves) {
    const char* color = colors[n % 6];
    os << "<polyline fill=\"none\" stroke=\"" << color << "\" points=\"";
    for (std::size_t i = 0; i < vs.size() && i < cs.size(); ++i) {
      if (!vs[i].defined()) continue;
      os << detail::fmt(f.px(static_cast<double>(cs[i]))) << ','
         << detail::fmt(f.py(static_cast<double>(vs[i].value))) << ' ';
    }
    os << "\"/>\n";
    detail::svg_label(os, f.width - 110, 16.0 + 14.0 * static_cast<double>(n), name);
    ++n;
  }
  detail::svg_label(os, f.width / 2, f.height - 10, "c");
  os << "</svg>\n";
}

}  // namespace sophdepth
