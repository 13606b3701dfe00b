#include "coolshift/plot.hpp"

#include <algorithm>
#include <cerrno>
#include <cmath>
#include <cstdio>
#include <cstring>
#include <fstream>
#include <functional>
#include <limits>
#include <sstream>

#include "coolshift/error.hpp"

namespace coolshift {
namespace {

constexpr const char* kPalette[] = {"#d62728", "#1f77b4", "#2ca02c", "#9467bd"};
constexpr int kMarginLeft = 64;
constexpr int kMarginRight = 16;
constexpr int kMarginTop = 28;
constexpr int kMarginBottom = 40;

using Getter = std::function<std::optional<double>(const TraceRecord&)>;

struct RefLine {
  std::string label;
  double value;
};

std::string num(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.4g", v);
  return buf;
}

std::string coord(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.2f", v);
  return buf;
}

std::string render_chart(const std::string& title, const std::string& y_label, const std::vector<PlotSeries>& series,
                         const Getter& get, const std::vector<RefLine>& refs, const PlotOptions& opt) {
  double x_min = std::numeric_limits<double>::infinity(), x_max = -x_min;
  double y_min = x_min, y_max = -x_min;
  for (const auto& s : series) {
    for (const auto& r : *s.trace) {
      x_min = std::min(x_min, r.sim_time);
      x_max = std::max(x_max, r.sim_time);
      if (auto y = get(r)) {
        y_min = std::min(y_min, *y);
        y_max = std::max(y_max, *y);
      }
    }
  }
  for (const auto& ref : refs) {
    y_min = std::min(y_min, ref.value);
    y_max = std::max(y_max, ref.value);
  }
  if (!std::isfinite(y_min)) y_min = 0.0, y_max = 1.0;
  const AxisRange xr = padded_range(x_min, x_max);
  const AxisRange yr = padded_range(y_min, y_max);

  const double plot_w = opt.width - kMarginLeft - kMarginRight;
  const double plot_h = opt.height - kMarginTop - kMarginBottom;
  auto sx = [&](double x) { return kMarginLeft + (x - xr.lo) / (xr.hi - xr.lo) * plot_w; };
  auto sy = [&](double y) { return kMarginTop + (yr.hi - y) / (yr.hi - yr.lo) * plot_h; };

  std::ostringstream svg;
  svg << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << opt.width << "\" height=\"" << opt.height
      << "\" font-family=\"sans-serif\" font-size=\"11\">\n";
  svg << "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
  svg << "<text x=\"" << kMarginLeft << "\" y=\"18\" font-size=\"13\">" << title << "</text>\n";
  svg << "<g class=\"axes\" stroke=\"black\">\n";
  svg << "<line x1=\"" << kMarginLeft << "\" y1=\"" << coord(sy(yr.lo)) << "\" x2=\"" << coord(sx(xr.hi))
      << "\" y2=\"" << coord(sy(yr.lo)) << "\"/>\n";
  svg << "<line x1=\"" << kMarginLeft << "\" y1=\"" << coord(sy(yr.lo)) << "\" x2=\"" << kMarginLeft << "\" y2=\""
      << coord(sy(yr.hi)) << "\"/>\n";
  svg << "</g>\n";
  for (int i = 0; i <= 4; ++i) {
    const double xv = xr.lo + (xr.hi - xr.lo) * i / 4.0;
    const double yv = yr.lo + (yr.hi - yr.lo) * i / 4.0;
    svg << "<text x=\"" << coord(sx(xv)) << "\" y=\"" << opt.height - 22 << "\" text-anchor=\"middle\">" << num(xv)
        << "</text>\n";
    svg << "<text x=\"" << kMarginLeft - 4 << "\" y=\"" << coord(sy(yv) + 4) << "\" text-anchor=\"end\">" << num(yv)
        << "</text>\n";
  }
  svg << "<text x=\"" << coord(kMarginLeft + plot_w / 2) << "\" y=\"" << opt.height - 6
      << "\" text-anchor=\"middle\">time (s)</text>\n";
  svg << "<text x=\"12\" y=\"" << coord(kMarginTop + plot_h / 2) << "\" transform=\"rotate(-90 12 "
      << coord(kMarginTop + plot_h / 2) << ")\" text-anchor=\"middle\">" << y_label << "</text>\n";
  for (const auto& ref : refs) {
    svg << "<line class=\"ref\" x1=\"" << kMarginLeft << "\" y1=\"" << coord(sy(ref.value)) << "\" x2=\""
        << coord(sx(xr.hi)) << "\" y2=\"" << coord(sy(ref.value))
        << "\" stroke=\"gray\" stroke-dasharray=\"6 4\"/>\n";
    svg << "<text x=\"" << coord(sx(xr.hi) - 4) << "\" y=\"" << coord(sy(ref.value) - 3)
        << "\" text-anchor=\"end\" fill=\"gray\">" << ref.label << " " << num(ref.value) << "</text>\n";
  }
  for (size_t i = 0; i < series.size(); ++i) {
    const char* color = kPalette[i % std::size(kPalette)];
    svg << "<polyline class=\"series\" data-label=\"" << series[i].label << "\" fill=\"none\" stroke=\"" << color
        << "\" stroke-width=\"1.2\" points=\"";
    bool first = true;
    for (const auto& r : *series[i].trace) {
      if (auto y = get(r)) {
        svg << (first ? "" : " ") << coord(sx(r.sim_time)) << ',' << coord(sy(*y));
        first = false;
      }
    }
    svg << "\"/>\n";
    for (const auto& r : *series[i].trace) {
      if (r.event.has(EventSet::kShiftToSmall) || r.event.has(EventSet::kShiftToLarge)) {
        const double x = sx(r.sim_time);
        svg << "<line class=\"shift\" x1=\"" << coord(x) << "\" y1=\"" << coord(sy(yr.lo)) << "\" x2=\""
            << coord(x) << "\" y2=\"" << coord(sy(yr.lo) - 8) << "\" stroke=\"" << color << "\"/>\n";
      }
    }
    svg << "<text x=\"" << coord(kMarginLeft + 8 + 140 * i) << "\" y=\"" << kMarginTop + 12 << "\" fill=\""
        << color << "\">" << series[i].label << "</text>\n";
  }
  svg << "</svg>\n";
  return svg.str();
}

void write_file(const std::filesystem::path& path, const std::string& content) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw IoError(path.string(), std::string("cannot open for writing: ") + std::strerror(errno));
  out << content;
  if (!out) throw IoError(path.string(), "write failed");
}

}  // namespace

AxisRange padded_range(double data_min, double data_max) {
  const double span = data_max - data_min;
  if (!(span > 0.0)) return {data_min - 1.0, data_max + 1.0};
  return {data_min - 0.05 * span, data_max + 0.05 * span};
}

std::vector<std::filesystem::path> emit_plots(const std::vector<PlotSeries>& series, const std::string& path_prefix,
                                              const PlotOptions& options) {
  const bool any = std::any_of(series.begin(), series.end(), [](const PlotSeries& s) {
    return s.trace != nullptr && !s.trace->empty();
  });
  if (!any) throw AnalysisError("cannot plot an empty trace");
  std::vector<PlotSeries> usable;
  for (const auto& s : series) {
    if (s.trace != nullptr && !s.trace->empty()) usable.push_back(s);
  }

  std::vector<RefLine> temp_refs;
  if (options.t_lim) temp_refs.push_back({"t_lim", *options.t_lim});
  if (options.t_throttle) temp_refs.push_back({"t_throttle", *options.t_throttle});

  const std::vector<std::filesystem::path> paths = {path_prefix + "_temperature.svg", path_prefix + "_frequency.svg",
                                                    path_prefix + "_latency.svg"};
  write_file(paths[0], render_chart("CPU temperature", "temperature (°C)", usable,
                                    [](const TraceRecord& r) { return std::optional<double>(r.cpu_temp); },
                                    temp_refs, options));
  write_file(paths[1], render_chart("CPU frequency", "frequency (GHz)", usable,
                                    [](const TraceRecord& r) { return r.freq; }, {}, options));
  write_file(paths[2], render_chart("Inference latency", "latency (s)", usable,
                                    [](const TraceRecord& r) { return r.inference_latency; }, {}, options));
  return paths;
}

}  // namespace coolshift
