#pragma once

#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "coolshift/harness.hpp"
#include "coolshift/trace.hpp"
#include "coolshift/workload.hpp"

namespace coolshift {

struct Summary {
  std::optional<double> avg_latency;  // mean inference latency, idle and overhead excluded
  double est_accuracy = 0.0;          // inference-count weighted suite accuracy
  int n_large = 0;
  int n_small = 0;
  int n_shifts = 0;
  int n_throttle_events = 0;  // throttle_on edges
  double max_temp = 0.0;
};

/// Model that ran the row's inference. A row carrying a shift event records
/// the post-decision mode, so its inference came from the other model.
Mode inference_mode(const TraceRecord& row);

/// Throws AnalysisError on an empty trace.
Summary summarize(const Trace& trace, const ModelSuite& suite);

/// Count-weighted accuracy over the first n complete shift cycles. A cycle
/// runs from the first small-model inference after a shift to SMALL through
/// the last large-model inference before the next one; the warm-up phase
/// before the first shift is excluded. Throws InsufficientCyclesError.
double stable_iteration_accuracy(const Trace& trace, const ModelSuite& suite, int n_iterations);

/// One cell of the threshold ablation: a value or the error text.
struct AblationCell {
  double t_lim = 0.0;
  double g_lim = 0.0;
  std::optional<double> accuracy;
  std::string error;
};

/// Rows follow g_lims, columns follow t_lims.
struct AblationGrid {
  std::vector<double> t_lims;
  std::vector<double> g_lims;
  std::vector<std::vector<AblationCell>> cells;

  const AblationCell& at(size_t g_index, size_t t_index) const { return cells.at(g_index).at(t_index); }
};

inline constexpr double kAblationDuration = 1800.0;  // s
inline constexpr int kAblationIterations = 2;

/// Runs every (t_lim, g_lim) cell of base_scenario independently with the
/// base seed. Per-cell failures are recorded in the cell. `threads` = 0 picks
/// the hardware concurrency.
AblationGrid ablation_grid(const Scenario& base_scenario, const std::vector<double>& t_lims,
                           const std::vector<double>& g_lims, double duration = kAblationDuration,
                           unsigned threads = 0);

/// CSV matrix: header "g_lim\t_lim,<t...>", one row per g_lim.
void write_ablation_csv(std::ostream& out, const AblationGrid& grid);
/// Fixed-width text table for terminals.
std::string render_ablation_table(const AblationGrid& grid);

}  // namespace coolshift
