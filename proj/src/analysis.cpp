#include "coolshift/analysis.hpp"

#include <algorithm>
#include <cstdio>
#include <future>
#include <ostream>
#include <thread>

#include "coolshift/error.hpp"

namespace coolshift {
namespace {

double weighted_accuracy(int n_large, int n_small, const ModelSuite& suite) {
  return (n_large * suite.large.accuracy + n_small * suite.small.accuracy) / (n_large + n_small);
}

std::string fmt_cell(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.3f", v);
  return buf;
}

std::string fmt_label(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%g", v);
  return buf;
}

AblationCell run_cell(const Scenario& base, double t_lim, double g_lim, double duration) {
  AblationCell cell{t_lim, g_lim, std::nullopt, {}};
  Scenario s = base;
  ControllerConfig c = s.controller.value_or(ControllerConfig{});
  c.t_lim = t_lim;
  c.g_lim = g_lim;
  s.controller = c;
  s.duration = duration;
  try {
    cell.accuracy = stable_iteration_accuracy(run_scenario(s), s.suite, kAblationIterations);
  } catch (const InsufficientCyclesError&) {
    cell.error = "insufficient-cycles";
  } catch (const Error& e) {
    cell.error = e.what();
  }
  return cell;
}

}  // namespace

Mode inference_mode(const TraceRecord& row) {
  if (row.event.has(EventSet::kShiftToSmall)) return Mode::Large;
  if (row.event.has(EventSet::kShiftToLarge)) return Mode::Small;
  return row.mode;
}

Summary summarize(const Trace& trace, const ModelSuite& suite) {
  if (trace.empty()) throw AnalysisError("cannot summarize an empty trace");
  Summary s;
  s.max_temp = trace.front().cpu_temp;
  double latency_sum = 0.0;
  int latency_rows = 0;
  for (const auto& r : trace) {
    (inference_mode(r) == Mode::Large ? s.n_large : s.n_small) += 1;
    if (r.inference_latency) {
      latency_sum += *r.inference_latency;
      ++latency_rows;
    }
    if (r.event.has(EventSet::kShiftToSmall)) ++s.n_shifts;
    if (r.event.has(EventSet::kShiftToLarge)) ++s.n_shifts;
    if (r.event.has(EventSet::kThrottleOn)) ++s.n_throttle_events;
    s.max_temp = std::max(s.max_temp, r.cpu_temp);
  }
  if (latency_rows > 0) s.avg_latency = latency_sum / latency_rows;
  s.est_accuracy = weighted_accuracy(s.n_large, s.n_small, suite);
  return s;
}

double stable_iteration_accuracy(const Trace& trace, const ModelSuite& suite, int n_iterations) {
  if (n_iterations < 1) throw AnalysisError("n_iterations must be >= 1");
  std::vector<size_t> to_small;
  for (size_t i = 0; i < trace.size(); ++i) {
    if (trace[i].event.has(EventSet::kShiftToSmall)) to_small.push_back(i);
  }
  // A cycle is complete once the next shift to SMALL closes its large phase.
  const int complete = to_small.empty() ? 0 : static_cast<int>(to_small.size()) - 1;
  if (complete < n_iterations) throw InsufficientCyclesError(complete, n_iterations);

  int n_large = 0;
  int n_small = 0;
  for (size_t i = to_small[0] + 1; i <= to_small[n_iterations]; ++i) {
    (inference_mode(trace[i]) == Mode::Large ? n_large : n_small) += 1;
  }
  return weighted_accuracy(n_large, n_small, suite);
}

AblationGrid ablation_grid(const Scenario& base_scenario, const std::vector<double>& t_lims,
                           const std::vector<double>& g_lims, double duration, unsigned threads) {
  if (t_lims.empty() || g_lims.empty()) throw AnalysisError("ablation threshold lists must be non-empty");
  if (!(duration > 0.0)) throw AnalysisError("ablation duration must be > 0");
  AblationGrid grid{t_lims, g_lims, {}};
  grid.cells.assign(g_lims.size(), std::vector<AblationCell>(t_lims.size()));

  if (threads == 0) threads = std::max(1u, std::thread::hardware_concurrency());
  const size_t total = t_lims.size() * g_lims.size();
  // Cells are independent; run them in batches of `threads`.
  for (size_t start = 0; start < total; start += threads) {
    std::vector<std::future<AblationCell>> batch;
    const size_t end = std::min(total, start + threads);
    for (size_t k = start; k < end; ++k) {
      const double t = t_lims[k % t_lims.size()];
      const double g = g_lims[k / t_lims.size()];
      batch.push_back(std::async(threads == 1 ? std::launch::deferred : std::launch::async, run_cell,
                                 std::cref(base_scenario), t, g, duration));
    }
    for (size_t k = start; k < end; ++k) {
      grid.cells[k / t_lims.size()][k % t_lims.size()] = batch[k - start].get();
    }
  }
  return grid;
}

void write_ablation_csv(std::ostream& out, const AblationGrid& grid) {
  out << "g_lim\\t_lim";
  for (double t : grid.t_lims) out << ',' << fmt_label(t);
  out << '\n';
  for (size_t g = 0; g < grid.g_lims.size(); ++g) {
    out << fmt_label(grid.g_lims[g]);
    for (const auto& cell : grid.cells[g]) {
      out << ',' << (cell.accuracy ? fmt_cell(*cell.accuracy) : cell.error);
    }
    out << '\n';
  }
}

std::string render_ablation_table(const AblationGrid& grid) {
  constexpr int kWidth = 20;
  auto pad = [](std::string s) {
    if (static_cast<int>(s.size()) < kWidth) s.insert(0, kWidth - s.size(), ' ');
    return s;
  };
  std::string out = pad("g_lim \\ t_lim");
  for (double t : grid.t_lims) out += pad(fmt_label(t));
  out += '\n';
  for (size_t g = 0; g < grid.g_lims.size(); ++g) {
    out += pad(fmt_label(grid.g_lims[g]));
    for (const auto& cell : grid.cells[g]) out += pad(cell.accuracy ? fmt_cell(*cell.accuracy) : cell.error);
    out += '\n';
  }
  return out;
}

}  // namespace coolshift
