#pragma once

// Minimal static SVG charts: network layout, line charts, bar charts.

#include "bbnet/cost.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <limits>
#include <sstream>
#include <string>
#include <vector>

namespace bbnet::svg {

namespace detail {

inline constexpr double kWidth = 640.0;
inline constexpr double kHeight = 480.0;
inline constexpr double kMargin = 60.0;

inline const char* palette(std::size_t i) {
  static const char* colors[] = {"#1f77b4", "#d62728", "#2ca02c", "#ff7f0e", "#9467bd", "#8c564b"};
  return colors[i % 6];
}

inline std::string num(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.2f", v);
  return buf;
}

inline std::string label(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.4g", v);
  return buf;
}

inline std::string escape(const std::string& s) {
  std::string out;
  for (char c : s) {
    switch (c) {
      case '<': out += "&lt;"; break;
      case '>': out += "&gt;"; break;
      case '&': out += "&amp;"; break;
      default: out += c;
    }
  }
  return out;
}

inline std::string header(const std::string& title) {
  std::ostringstream s;
  s << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << kWidth << "\" height=\"" << kHeight
    << "\" viewBox=\"0 0 " << kWidth << ' ' << kHeight << "\" font-family=\"sans-serif\" font-size=\"12\">\n"
    << "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n"
    << "<text x=\"" << kWidth / 2 << "\" y=\"24\" text-anchor=\"middle\" font-size=\"15\">" << escape(title)
    << "</text>\n";
  return s.str();
}

struct Axes {
  double x0, x1, y0, y1;

  double px(double x) const { return kMargin + (x - x0) / (x1 - x0) * (kWidth - 2 * kMargin); }
  double py(double y) const { return kHeight - kMargin - (y - y0) / (y1 - y0) * (kHeight - 2 * kMargin); }
};

inline std::string frame(const Axes& ax, const std::string& xlabel, const std::string& ylabel) {
  std::ostringstream s;
  const double l = kMargin, r = kWidth - kMargin, t = kMargin, b = kHeight - kMargin;
  s << "<rect x=\"" << l << "\" y=\"" << t << "\" width=\"" << r - l << "\" height=\"" << b - t
    << "\" fill=\"none\" stroke=\"#444\"/>\n";
  for (int i = 0; i <= 4; ++i) {
    const double fx = ax.x0 + (ax.x1 - ax.x0) * i / 4.0;
    const double fy = ax.y0 + (ax.y1 - ax.y0) * i / 4.0;
    s << "<text x=\"" << num(ax.px(fx)) << "\" y=\"" << b + 16 << "\" text-anchor=\"middle\">" << label(fx)
      << "</text>\n";
    s << "<text x=\"" << l - 6 << "\" y=\"" << num(ax.py(fy) + 4) << "\" text-anchor=\"end\">" << label(fy)
      << "</text>\n";
  }
  s << "<text x=\"" << kWidth / 2 << "\" y=\"" << kHeight - 18 << "\" text-anchor=\"middle\">" << escape(xlabel)
    << "</text>\n";
  s << "<text x=\"16\" y=\"" << kHeight / 2 << "\" text-anchor=\"middle\" transform=\"rotate(-90 16 "
    << kHeight / 2 << ")\">" << escape(ylabel) << "</text>\n";
  return s.str();
}

}  // namespace detail

/// Hosts green, backbones red, backbone links blue, cover links red.
inline std::string layout(const NetworkInstance& inst, const std::string& title) {
  using namespace detail;
  double x0 = 0.0, y0 = 0.0, x1 = inst.plane.width, y1 = inst.plane.height;
  auto grow = [&](const Point2& p) {
    x0 = std::min(x0, p.x);
    x1 = std::max(x1, p.x);
    y0 = std::min(y0, p.y);
    y1 = std::max(y1, p.y);
  };
  for (const auto& p : inst.hosts) grow(p);
  for (const auto& p : inst.backbones) grow(p);
  const Axes ax{x0, x1, y0, y1};

  std::ostringstream s;
  s << header(title) << frame(ax, "x", "y");
  s << "<rect x=\"" << num(ax.px(0)) << "\" y=\"" << num(ax.py(inst.plane.height)) << "\" width=\""
    << num(ax.px(inst.plane.width) - ax.px(0)) << "\" height=\"" << num(ax.py(0) - ax.py(inst.plane.height))
    << "\" fill=\"none\" stroke=\"#bbb\" stroke-dasharray=\"4 3\"/>\n";
  const auto asg = nearest_assignment(inst);
  for (std::size_t i = 0; i < inst.host_count(); ++i) {
    const auto& h = inst.hosts[i];
    const auto& b = inst.backbones[asg[i]];
    s << "<line x1=\"" << num(ax.px(h.x)) << "\" y1=\"" << num(ax.py(h.y)) << "\" x2=\"" << num(ax.px(b.x))
      << "\" y2=\"" << num(ax.py(b.y)) << "\" stroke=\"red\" stroke-width=\"0.8\"/>\n";
  }
  for (const auto& e : inst.edges) {
    const auto& a = inst.backbones[e.a];
    const auto& b = inst.backbones[e.b];
    s << "<line x1=\"" << num(ax.px(a.x)) << "\" y1=\"" << num(ax.py(a.y)) << "\" x2=\"" << num(ax.px(b.x))
      << "\" y2=\"" << num(ax.py(b.y)) << "\" stroke=\"blue\" stroke-width=\"1.5\"/>\n";
  }
  for (const auto& h : inst.hosts) {
    s << "<circle cx=\"" << num(ax.px(h.x)) << "\" cy=\"" << num(ax.py(h.y))
      << "\" r=\"4\" fill=\"none\" stroke=\"green\" stroke-width=\"1.5\"/>\n";
  }
  for (const auto& b : inst.backbones) {
    s << "<circle cx=\"" << num(ax.px(b.x)) << "\" cy=\"" << num(ax.py(b.y))
      << "\" r=\"6\" fill=\"none\" stroke=\"red\" stroke-width=\"2\"/>\n";
  }
  s << "</svg>\n";
  return s.str();
}

struct Series {
  std::string name;
  std::vector<double> x;
  std::vector<double> y;
};

/// Line chart; non-finite points are skipped.
inline std::string line_chart(const std::string& title, const std::vector<Series>& series, const std::string& xlabel,
                              const std::string& ylabel) {
  using namespace detail;
  double x0 = std::numeric_limits<double>::infinity(), x1 = -x0, y0 = x0, y1 = -x0;
  for (const auto& sr : series) {
    for (std::size_t i = 0; i < sr.x.size() && i < sr.y.size(); ++i) {
      if (!std::isfinite(sr.x[i]) || !std::isfinite(sr.y[i])) continue;
      x0 = std::min(x0, sr.x[i]);
      x1 = std::max(x1, sr.x[i]);
      y0 = std::min(y0, sr.y[i]);
      y1 = std::max(y1, sr.y[i]);
    }
  }
  if (!(x1 >= x0)) x0 = 0, x1 = 1, y0 = 0, y1 = 1;
  if (x1 == x0) x1 = x0 + 1;
  if (y1 == y0) y1 = y0 + 1;
  y0 = std::min(y0, 0.0);
  const Axes ax{x0, x1, y0, y1};

  std::ostringstream s;
  s << header(title) << frame(ax, xlabel, ylabel);
  for (std::size_t k = 0; k < series.size(); ++k) {
    const auto& sr = series[k];
    s << "<polyline fill=\"none\" stroke=\"" << palette(k) << "\" stroke-width=\"1.5\" points=\"";
    for (std::size_t i = 0; i < sr.x.size() && i < sr.y.size(); ++i) {
      if (!std::isfinite(sr.x[i]) || !std::isfinite(sr.y[i])) continue;
      s << num(ax.px(sr.x[i])) << ',' << num(ax.py(sr.y[i])) << ' ';
    }
    s << "\"/>\n";
    s << "<text x=\"" << kWidth - kMargin - 4 << "\" y=\"" << kMargin + 16 + 16 * k << "\" text-anchor=\"end\" fill=\""
      << palette(k) << "\">" << escape(sr.name) << "</text>\n";
  }
  s << "</svg>\n";
  return s.str();
}

inline std::string bar_chart(const std::string& title, const std::vector<std::string>& labels,
                             const std::vector<double>& values, const std::string& ylabel) {
  using namespace detail;
  double top = 0.0;
  for (double v : values) {
    if (std::isfinite(v)) top = std::max(top, v);
  }
  if (top <= 0.0) top = 1.0;
  const Axes ax{0.0, static_cast<double>(std::max<std::size_t>(values.size(), 1)), 0.0, top * 1.1};

  std::ostringstream s;
  s << header(title);
  const double l = kMargin, r = kWidth - kMargin, t = kMargin, b = kHeight - kMargin;
  s << "<rect x=\"" << l << "\" y=\"" << t << "\" width=\"" << r - l << "\" height=\"" << b - t
    << "\" fill=\"none\" stroke=\"#444\"/>\n";
  for (int i = 0; i <= 4; ++i) {
    const double fy = ax.y1 * i / 4.0;
    s << "<text x=\"" << l - 6 << "\" y=\"" << num(ax.py(fy) + 4) << "\" text-anchor=\"end\">" << label(fy)
      << "</text>\n";
  }
  s << "<text x=\"16\" y=\"" << kHeight / 2 << "\" text-anchor=\"middle\" transform=\"rotate(-90 16 "
    << kHeight / 2 << ")\">" << escape(ylabel) << "</text>\n";
  for (std::size_t i = 0; i < values.size(); ++i) {
    const double v = std::isfinite(values[i]) ? values[i] : 0.0;
    const double left = ax.px(i + 0.2), right = ax.px(i + 0.8);
    s << "<rect x=\"" << num(left) << "\" y=\"" << num(ax.py(v)) << "\" width=\"" << num(right - left)
      << "\" height=\"" << num(ax.py(0) - ax.py(v)) << "\" fill=\"" << palette(i) << "\"/>\n";
    s << "<text x=\"" << num((left + right) / 2) << "\" y=\"" << num(ax.py(v) - 4) << "\" text-anchor=\"middle\">"
      << label(values[i]) << "</text>\n";
    s << "<text x=\"" << num((left + right) / 2) << "\" y=\"" << b + 16 << "\" text-anchor=\"middle\">"
      << escape(i < labels.size() ? labels[i] : "") << "</text>\n";
  }
  s << "</svg>\n";
  return s.str();
}

}  // namespace bbnet::svg
