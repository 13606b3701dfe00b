#pragma once

#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include "coolshift/trace.hpp"

namespace coolshift {

struct PlotSeries {
  std::string label;
  const Trace* trace = nullptr;
};

struct PlotOptions {
  std::optional<double> t_lim;       // reference line on the temperature chart
  std::optional<double> t_throttle;  // reference line on the temperature chart
  int width = 900;
  int height = 360;
};

/// [lo, hi] data range widened by 5 % of its span on each side (or +/-1 for
/// a degenerate span).
struct AxisRange {
  double lo = 0.0;
  double hi = 1.0;
};
AxisRange padded_range(double data_min, double data_max);

/// Writes <prefix>_temperature.svg, <prefix>_frequency.svg and
/// <prefix>_latency.svg, one polyline per series, with shift events marked.
/// Returns the written paths. Throws AnalysisError when every series is
/// empty, IoError on write failure.
std::vector<std::filesystem::path> emit_plots(const std::vector<PlotSeries>& series, const std::string& path_prefix,
                                              const PlotOptions& options = {});

}  // namespace coolshift
