#pragma once

// Minimal self-contained SVG line charts: frame, five ticks per axis, one
// polyline per series, and a caption.

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <limits>
#include <sstream>
#include <string>
#include <vector>

namespace briberynet::cli {

struct Series {
  std::string label;
  std::vector<double> xs;
  std::vector<double> ys;
};

struct ChartSpec {
  std::string caption;
  std::string x_label;
  std::string y_label;
  std::vector<Series> series;
};

namespace detail {

inline std::string svg_number(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.6g", v);
  return buf;
}

inline std::string escape_xml(const std::string& s) {
  std::string out;
  for (char c : s) {
    switch (c) {
      case '&': out += "&amp;"; break;
      case '<': out += "&lt;"; break;
      case '>': out += "&gt;"; break;
      case '"': out += "&quot;"; break;
      default: out += c;
    }
  }
  return out;
}

struct Extent {
  double lo = std::numeric_limits<double>::infinity();
  double hi = -std::numeric_limits<double>::infinity();

  void add(double v) {
    lo = std::min(lo, v);
    hi = std::max(hi, v);
  }
  void pad() {
    if (!(lo <= hi)) {
      lo = 0.0;
      hi = 1.0;
    } else if (hi - lo < 1e-12) {
      const double d = std::max(std::abs(lo) * 0.1, 0.5);
      lo -= d;
      hi += d;
    }
  }
};

}  // namespace detail

inline std::string line_chart_svg(const ChartSpec& spec) {
  constexpr double width = 640, height = 420;
  constexpr double left = 70, right = 20, top = 40, bottom = 60;
  constexpr double plot_w = width - left - right, plot_h = height - top - bottom;
  static const char* colors[] = {"#1f77b4", "#d62728", "#2ca02c"};

  detail::Extent ex, ey;
  for (const auto& s : spec.series)
    for (std::size_t i = 0; i < s.xs.size(); ++i) {
      ex.add(s.xs[i]);
      ey.add(s.ys[i]);
    }
  ex.pad();
  ey.pad();
  auto sx = [&](double v) { return left + (v - ex.lo) / (ex.hi - ex.lo) * plot_w; };
  auto sy = [&](double v) { return top + plot_h - (v - ey.lo) / (ey.hi - ey.lo) * plot_h; };
  using detail::svg_number;

  std::ostringstream os;
  os << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << width << "\" height=\"" << height
     << "\" viewBox=\"0 0 " << width << ' ' << height << "\">\n";
  os << "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
  os << "<text x=\"" << width / 2 << "\" y=\"24\" text-anchor=\"middle\" font-family=\"sans-serif\" "
        "font-size=\"14\">"
     << detail::escape_xml(spec.caption) << "</text>\n";
  os << "<rect x=\"" << left << "\" y=\"" << top << "\" width=\"" << plot_w << "\" height=\"" << plot_h
     << "\" fill=\"none\" stroke=\"black\"/>\n";
  for (int i = 0; i <= 4; ++i) {
    const double vx = ex.lo + (ex.hi - ex.lo) * i / 4.0;
    const double vy = ey.lo + (ey.hi - ey.lo) * i / 4.0;
    os << "<line x1=\"" << svg_number(sx(vx)) << "\" y1=\"" << top + plot_h << "\" x2=\"" << svg_number(sx(vx))
       << "\" y2=\"" << top + plot_h + 5 << "\" stroke=\"black\"/>\n";
    os << "<text x=\"" << svg_number(sx(vx)) << "\" y=\"" << top + plot_h + 18
       << "\" text-anchor=\"middle\" font-family=\"sans-serif\" font-size=\"11\">" << svg_number(vx)
       << "</text>\n";
    os << "<line x1=\"" << left - 5 << "\" y1=\"" << svg_number(sy(vy)) << "\" x2=\"" << left << "\" y2=\""
       << svg_number(sy(vy)) << "\" stroke=\"black\"/>\n";
    os << "<text x=\"" << left - 8 << "\" y=\"" << svg_number(sy(vy) + 4)
       << "\" text-anchor=\"end\" font-family=\"sans-serif\" font-size=\"11\">" << svg_number(vy)
       << "</text>\n";
  }
  os << "<text x=\"" << left + plot_w / 2 << "\" y=\"" << height - 15
     << "\" text-anchor=\"middle\" font-family=\"sans-serif\" font-size=\"12\">"
     << detail::escape_xml(spec.x_label) << "</text>\n";
  os << "<text x=\"16\" y=\"" << top + plot_h / 2 << "\" text-anchor=\"middle\" font-family=\"sans-serif\" "
        "font-size=\"12\" transform=\"rotate(-90 16 "
     << top + plot_h / 2 << ")\">" << detail::escape_xml(spec.y_label) << "</text>\n";

  for (std::size_t k = 0; k < spec.series.size(); ++k) {
    const Series& s = spec.series[k];
    const char* color = colors[k % 3];
    if (s.xs.size() > 1) {
      os << "<polyline fill=\"none\" stroke=\"" << color << "\" stroke-width=\"2\" points=\"";
      for (std::size_t i = 0; i < s.xs.size(); ++i)
        os << (i ? " " : "") << svg_number(sx(s.xs[i])) << ',' << svg_number(sy(s.ys[i]));
      os << "\"/>\n";
    }
    for (std::size_t i = 0; i < s.xs.size(); ++i)
      os << "<circle cx=\"" << svg_number(sx(s.xs[i])) << "\" cy=\"" << svg_number(sy(s.ys[i]))
         << "\" r=\"3\" fill=\"" << color << "\"/>\n";
    if (!s.label.empty())
      os << "<text x=\"" << left + plot_w - 6 << "\" y=\"" << top + 16 + 14.0 * k
         << "\" text-anchor=\"end\" font-family=\"sans-serif\" font-size=\"11\" fill=\"" << color << "\">"
         << detail::escape_xml(s.label) << "</text>\n";
  }
  os << "</svg>\n";
  return os.str();
}

}  // namespace briberynet::cli
