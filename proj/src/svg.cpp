#include "cbo/svg.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <iterator>
#include <stdexcept>

#include "cbo/io.hpp"

namespace cbo {
namespace {

constexpr double kWidth = 720, kHeight = 440;
constexpr double kLeft = 70, kRight = 160, kTop = 40, kBottom = 50;
constexpr const char* kPalette[] = {"#1f77b4", "#d62728", "#2ca02c", "#9467bd",
                                    "#ff7f0e", "#8c564b", "#e377c2", "#17becf"};

const char* colour(std::size_t i) { return kPalette[i % std::size(kPalette)]; }

// Short fixed-precision labels for axes; data coordinates use format_double.
std::string label(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.3g", v);
  return buf;
}

std::string num(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.2f", v);
  return buf;
}

struct Axis {
  double lo, hi;
  bool log;
  double pixel_lo, pixel_hi;

  double map(double v) const {
    double t;
    if (log) t = (std::log10(v) - std::log10(lo)) / (std::log10(hi) - std::log10(lo));
    else t = (v - lo) / (hi - lo);
    return pixel_lo + t * (pixel_hi - pixel_lo);
  }
};

// Widens a degenerate range so the mapping stays finite.
void pad(double& lo, double& hi, bool log) {
  if (hi > lo) return;
  if (log) {
    lo /= 10;
    hi *= 10;
  } else {
    const double d = lo == 0.0 ? 1.0 : std::abs(lo) * 0.1;
    lo -= d;
    hi += d;
  }
}

std::string header(const std::string& title) {
  std::string s = "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n";
  s += "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" + num(kWidth) + "\" height=\"" +
       num(kHeight) + "\" viewBox=\"0 0 " + num(kWidth) + " " + num(kHeight) + "\">\n";
  s += "<rect x=\"0\" y=\"0\" width=\"" + num(kWidth) + "\" height=\"" + num(kHeight) +
       "\" fill=\"white\"/>\n";
  s += "<text x=\"" + num(kWidth / 2) + "\" y=\"24\" text-anchor=\"middle\" font-family=\"sans-serif\" "
       "font-size=\"15\">" + xml_escape(title) + "</text>\n";
  return s;
}

std::string axes(const Axis& x, const Axis& y, const std::string& x_name, const std::string& y_name) {
  std::string s;
  s += "<path d=\"M" + num(kLeft) + " " + num(kTop) + " V" + num(kHeight - kBottom) + " H" +
       num(kWidth - kRight) + "\" fill=\"none\" stroke=\"black\"/>\n";
  auto ticks = [](const Axis& a) {
    std::vector<double> t;
    if (a.log) {
      for (double e = std::floor(std::log10(a.lo)); e <= std::ceil(std::log10(a.hi)); e += 1) {
        const double v = std::pow(10.0, e);
        if (v >= a.lo * (1 - 1e-12) && v <= a.hi * (1 + 1e-12)) t.push_back(v);
      }
      if (t.size() < 2) t = {a.lo, a.hi};
    } else {
      for (int i = 0; i <= 4; ++i) t.push_back(a.lo + (a.hi - a.lo) * i / 4);
    }
    return t;
  };
  for (double v : ticks(x)) {
    const double px = x.map(v);
    s += "<text x=\"" + num(px) + "\" y=\"" + num(kHeight - kBottom + 16) +
         "\" text-anchor=\"middle\" font-family=\"sans-serif\" font-size=\"11\">" + label(v) + "</text>\n";
  }
  for (double v : ticks(y)) {
    const double py = y.map(v);
    s += "<text x=\"" + num(kLeft - 6) + "\" y=\"" + num(py + 4) +
         "\" text-anchor=\"end\" font-family=\"sans-serif\" font-size=\"11\">" + label(v) + "</text>\n";
  }
  s += "<text x=\"" + num((kLeft + kWidth - kRight) / 2) + "\" y=\"" + num(kHeight - 12) +
       "\" text-anchor=\"middle\" font-family=\"sans-serif\" font-size=\"12\">" + xml_escape(x_name) +
       "</text>\n";
  s += "<text x=\"16\" y=\"" + num((kTop + kHeight - kBottom) / 2) +
       "\" text-anchor=\"middle\" font-family=\"sans-serif\" font-size=\"12\" transform=\"rotate(-90 16 " +
       num((kTop + kHeight - kBottom) / 2) + ")\">" + xml_escape(y_name) + "</text>\n";
  return s;
}

std::string legend_entry(std::size_t i, const std::string& name) {
  const double y = kTop + 10 + 18 * static_cast<double>(i);
  const double x = kWidth - kRight + 12;
  return "<rect x=\"" + num(x) + "\" y=\"" + num(y - 8) + "\" width=\"14\" height=\"4\" fill=\"" +
         colour(i) + "\"/>\n<text x=\"" + num(x + 20) + "\" y=\"" + num(y) +
         "\" font-family=\"sans-serif\" font-size=\"12\">" + xml_escape(name) + "</text>\n";
}

}  // namespace

std::string xml_escape(const std::string& text) {
  std::string out;
  for (char c : text) {
    switch (c) {
      case '&': out += "&amp;"; break;
      case '<': out += "&lt;"; break;
      case '>': out += "&gt;"; break;
      case '"': out += "&quot;"; break;
      case '\'': out += "&apos;"; break;
      default: out += c;
    }
  }
  return out;
}

std::string gap_chart_svg(const std::vector<GapSeries>& series, const LineChartOptions& options) {
  if (series.empty()) throw std::invalid_argument("gap_chart_svg: no series");
  double x_lo = kUnsolved, x_hi = -kUnsolved, y_lo = kUnsolved, y_hi = -kUnsolved;
  // On a log axis, gaps at or below zero are drawn at the smallest positive value.
  double floor = kUnsolved;
  for (const auto& s : series) {
    for (std::size_t i = 0; i < s.curves.queries.size(); ++i) {
      x_lo = std::min<double>(x_lo, s.curves.queries[i]);
      x_hi = std::max<double>(x_hi, s.curves.queries[i]);
      for (double v : {s.curves.min[i], s.curves.max[i]}) {
        if (!std::isfinite(v)) continue;
        y_lo = std::min(y_lo, v);
        y_hi = std::max(y_hi, v);
        if (v > 0) floor = std::min(floor, v);
      }
    }
  }
  if (!std::isfinite(x_lo)) throw std::invalid_argument("gap_chart_svg: series without points");
  if (options.log_y) {
    if (!std::isfinite(floor)) floor = 1e-16;
    y_lo = std::max(y_lo, floor);
    y_hi = std::max(y_hi, floor);
  }
  if (!std::isfinite(y_lo)) y_lo = y_hi = 0.0;
  pad(x_lo, x_hi, false);
  pad(y_lo, y_hi, options.log_y);
  const Axis x{x_lo, x_hi, false, kLeft, kWidth - kRight};
  const Axis y{y_lo, y_hi, options.log_y, kHeight - kBottom, kTop};
  auto py = [&](double v) {
    if (options.log_y) v = std::max(v, floor);
    return y.map(std::clamp(v, y_lo, y_hi));
  };

  std::string s = header(options.title);
  s += axes(x, y, "oracle queries", options.log_y ? "optimality gap (log)" : "optimality gap");
  for (std::size_t k = 0; k < series.size(); ++k) {
    const auto& c = series[k].curves;
    std::string band, line;
    for (std::size_t i = 0; i < c.queries.size(); ++i)
      band += num(x.map(c.queries[i])) + "," + num(py(c.max[i])) + " ";
    for (std::size_t i = c.queries.size(); i-- > 0;)
      band += num(x.map(c.queries[i])) + "," + num(py(c.min[i])) + " ";
    for (std::size_t i = 0; i < c.queries.size(); ++i)
      line += num(x.map(c.queries[i])) + "," + num(py(c.mean[i])) + " ";
    band.pop_back();
    line.pop_back();
    s += "<polygon points=\"" + band + "\" fill=\"" + colour(k) + "\" fill-opacity=\"0.2\" stroke=\"none\"/>\n";
    s += "<polyline points=\"" + line + "\" fill=\"none\" stroke=\"" + colour(k) +
         "\" stroke-width=\"1.5\"><title>" + xml_escape(series[k].label) + "</title></polyline>\n";
    s += legend_entry(k, series[k].label);
  }
  s += "</svg>\n";
  return s;
}

std::string profile_chart_svg(const PerformanceProfile& profile, const std::vector<double>& taus,
                              const std::string& title) {
  if (taus.empty()) throw std::invalid_argument("profile_chart_svg: no tau values");
  double t_lo = taus.front(), t_hi = taus.back();
  pad(t_lo, t_hi, true);
  const Axis x{t_lo, t_hi, true, kLeft, kWidth - kRight};
  const Axis y{0.0, 1.0, false, kHeight - kBottom, kTop};
  std::string s = header(title);
  s += axes(x, y, "performance ratio tau", "fraction of problems solved");
  for (std::size_t k = 0; k < profile.solvers.size(); ++k) {
    std::string line;
    double prev = -1.0;
    for (double tau : taus) {
      const double r = profile.rho(k, tau);
      if (prev >= 0.0 && r != prev) line += num(x.map(tau)) + "," + num(y.map(prev)) + " ";
      line += num(x.map(tau)) + "," + num(y.map(r)) + " ";
      prev = r;
    }
    line.pop_back();
    s += "<polyline points=\"" + line + "\" fill=\"none\" stroke=\"" + colour(k) +
         "\" stroke-width=\"1.5\"><title>" + xml_escape(profile.solvers[k]) + "</title></polyline>\n";
    s += legend_entry(k, profile.solvers[k]);
  }
  s += "</svg>\n";
  return s;
}

std::string heatmap_svg(const HeatmapMatrix& m) {
  const std::size_t rows = m.b.values.size(), cols = m.a.values.size();
  if (rows == 0 || cols == 0) throw std::invalid_argument("heatmap_svg: empty matrix");
  double lo = kUnsolved, hi = -kUnsolved;
  for (const auto& row : m.cells)
    for (const auto& c : row)
      if (c && std::isfinite(*c)) {
        const double v = std::log10(std::max(std::abs(*c), 1e-300));
        lo = std::min(lo, v);
        hi = std::max(hi, v);
      }

  const double cw = (kWidth - kLeft - kRight) / static_cast<double>(cols);
  const double ch = (kHeight - kTop - kBottom) / static_cast<double>(rows);
  std::string s = header(m.algorithm + " on " + m.problem + ": median final f");
  for (std::size_t i = 0; i < rows; ++i) {
    for (std::size_t j = 0; j < cols; ++j) {
      const double x = kLeft + cw * static_cast<double>(j);
      const double y = kTop + ch * static_cast<double>(i);
      const auto& c = m.cells[i][j];
      std::string fill = "#bbbbbb";
      std::string text = "failed";
      if (c) {
        text = label(*c);
        double t = 0.5;
        if (std::isfinite(*c) && hi > lo) t = (std::log10(std::max(std::abs(*c), 1e-300)) - lo) / (hi - lo);
        // Dark blue for small values, pale yellow for large.
        const int r = static_cast<int>(std::lround(20 + 230 * t));
        const int g = static_cast<int>(std::lround(40 + 200 * t));
        const int b = static_cast<int>(std::lround(120 + 20 * t));
        char buf[8];
        std::snprintf(buf, sizeof buf, "#%02x%02x%02x", r, g, b);
        fill = buf;
      }
      s += "<rect x=\"" + num(x) + "\" y=\"" + num(y) + "\" width=\"" + num(cw) + "\" height=\"" + num(ch) +
           "\" fill=\"" + fill + "\" stroke=\"white\"/>\n";
      s += "<text x=\"" + num(x + cw / 2) + "\" y=\"" + num(y + ch / 2 + 4) +
           "\" text-anchor=\"middle\" font-family=\"sans-serif\" font-size=\"11\">" + xml_escape(text) +
           "</text>\n";
    }
    s += "<text x=\"" + num(kLeft - 6) + "\" y=\"" + num(kTop + ch * (static_cast<double>(i) + 0.5) + 4) +
         "\" text-anchor=\"end\" font-family=\"sans-serif\" font-size=\"11\">" + label(m.b.values[i]) +
         "</text>\n";
  }
  for (std::size_t j = 0; j < cols; ++j)
    s += "<text x=\"" + num(kLeft + cw * (static_cast<double>(j) + 0.5)) + "\" y=\"" +
         num(kHeight - kBottom + 16) + "\" text-anchor=\"middle\" font-family=\"sans-serif\" font-size=\"11\">" +
         label(m.a.values[j]) + "</text>\n";
  s += "<text x=\"" + num((kLeft + kWidth - kRight) / 2) + "\" y=\"" + num(kHeight - 12) +
       "\" text-anchor=\"middle\" font-family=\"sans-serif\" font-size=\"12\">" + xml_escape(m.a.name) + "</text>\n";
  s += "<text x=\"16\" y=\"" + num((kTop + kHeight - kBottom) / 2) +
       "\" text-anchor=\"middle\" font-family=\"sans-serif\" font-size=\"12\">" + xml_escape(m.b.name) + "</text>\n";
  s += "</svg>\n";
  return s;
}

}  // namespace cbo
