#pragma once

#include <string>
#include <vector>

#include "cbo/bench.hpp"
#include "cbo/tuner.hpp"

namespace cbo {

struct GapSeries {
  std::string label;
  GapCurves curves;
};

struct LineChartOptions {
  std::string title;
  bool log_y = false;
};

/// Mean gap vs queries, one polyline per series, with a shaded min-max band.
std::string gap_chart_svg(const std::vector<GapSeries>& series, const LineChartOptions& options);

/// rho_s(tau) step curves, one polyline per solver.
std::string profile_chart_svg(const PerformanceProfile& profile, const std::vector<double>& taus,
                              const std::string& title);

/// Cell colours scale with log10 of the entry; failed cells are grey.
std::string heatmap_svg(const HeatmapMatrix& matrix);

std::string xml_escape(const std::string& text);

}  // namespace cbo
