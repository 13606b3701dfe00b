// coolshift: run, ablate, summarize, plot and live commands.

#include <atomic>
#include <csignal>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <sstream>

#include "CLI11.hpp"
#include "coolshift/analysis.hpp"
#include "coolshift/config.hpp"
#include "coolshift/error.hpp"
#include "coolshift/harness.hpp"
#include "coolshift/plot.hpp"
#include "coolshift/presets.hpp"
#include "coolshift/sensor.hpp"
#include "coolshift/trace.hpp"

using namespace coolshift;

namespace {

std::atomic<bool> g_stop{false};

extern "C" void on_sigint(int) { g_stop.store(true); }

void write_text(const std::filesystem::path& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw IoError(path.string(), "cannot open for writing");
  out << text;
  if (!out) throw IoError(path.string(), "write failed");
}

std::vector<double> parse_list(const std::string& text, const char* flag) {
  std::vector<double> out;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    try {
      size_t used = 0;
      out.push_back(std::stod(item, &used));
      if (used != item.size()) throw std::invalid_argument(item);
    } catch (const std::exception&) {
      throw ConfigError(std::string(flag) + ": not a number: '" + item + "'");
    }
  }
  if (out.empty()) throw ConfigError(std::string(flag) + ": empty list");
  return out;
}

struct RunArgs {
  std::string config, out;
  bool baseline = false, true_weight_sharing = false, literal_init = false;
};

int cmd_run(const RunArgs& a) {
  LoadedConfig cfg = load_config(a.config);
  Scenario& sc = cfg.scenario;
  if (a.baseline) sc.controller.reset();
  if (a.true_weight_sharing) sc.true_weight_sharing = true;
  if (a.literal_init && sc.controller) sc.controller->literal_init = true;
  Trace trace = run_scenario(sc);
  emit_trace(trace, a.out);
  Summary s = summarize(trace, sc.suite);
  write_text(a.out + ".summary.json", summary_to_json(s, &cfg));
  std::printf("%zu rows, %d throttle events, %d shifts, max %.2f C -> %s\n", trace.size(), s.n_throttle_events,
              s.n_shifts, s.max_temp, a.out.c_str());
  return 0;
}

struct AblateArgs {
  std::string config, tlims, glims, out;
  double duration = kAblationDuration;
};

int cmd_ablate(const AblateArgs& a) {
  LoadedConfig cfg = load_config(a.config);
  if (!cfg.scenario.controller) cfg.scenario.controller = ControllerConfig{};
  AblationGrid grid = ablation_grid(cfg.scenario, parse_list(a.tlims, "--tlims"), parse_list(a.glims, "--glims"),
                                    a.duration);
  std::ostringstream csv;
  write_ablation_csv(csv, grid);
  write_text(a.out, csv.str());
  std::string table = render_ablation_table(grid);
  write_text(a.out + ".txt", table);
  std::cout << table;
  return 0;
}

int cmd_summarize(const std::string& trace_path, const std::string& suite_name) {
  Trace trace = load_trace(trace_path);
  Summary s = summarize(trace, builtin_suite(suite_name).suite);
  std::cout << summary_to_json(s);
  return 0;
}

int cmd_plot(const std::string& trace_path, const std::string& overlay, const std::string& prefix,
             std::optional<double> t_lim, std::optional<double> t_throttle) {
  Trace primary = load_trace(trace_path);
  Trace second;
  std::vector<PlotSeries> series{{std::filesystem::path(trace_path).stem().string(), &primary}};
  if (!overlay.empty()) {
    second = load_trace(overlay);
    series.push_back({std::filesystem::path(overlay).stem().string(), &second});
  }
  PlotOptions opts;
  opts.t_lim = t_lim;
  opts.t_throttle = t_throttle;
  for (const auto& p : emit_plots(series, prefix, opts)) std::cout << p.string() << "\n";
  return 0;
}

struct LiveArgs {
  std::string zone, out;
  double t_lim = 73.0, g_lim = -0.07, period = 0.25, duration = 60.0;
};

int cmd_live(const LiveArgs& a) {
  // Fail fast on a bad zone before the loop starts.
  read_sysfs_temp(a.zone);
  ControllerConfig cc;
  cc.t_lim = a.t_lim;
  cc.g_lim = a.g_lim;
  LiveOptions opts;
  opts.period = a.period;
  opts.duration = a.duration;
  opts.stop = &g_stop;
  opts.on_shift = [](Decision d, const TraceRecord& r) {
    std::printf("%.3f %s temp=%.2f\n", r.sim_time, std::string(to_string(d)).c_str(), r.cpu_temp);
    std::fflush(stdout);
  };
  std::signal(SIGINT, on_sigint);
  SysfsSource source(a.zone);
  Trace trace = live_run(source, cc, opts);
  if (!a.out.empty()) emit_trace(trace, a.out);
  std::fprintf(stderr, "%zu samples\n", trace.size());
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Thermal-aware model shifting: simulate, analyse and run live."};
  app.require_subcommand(1);

  RunArgs run;
  auto* c_run = app.add_subcommand("run", "Simulate one scenario; writes a trace CSV and <out>.summary.json");
  c_run->add_option("--config", run.config, "JSON scenario configuration")->required()->check(CLI::ExistingFile);
  c_run->add_option("--out", run.out, "Trace CSV path")->required();
  c_run->add_flag("--baseline", run.baseline, "Drop the controller; large model only");
  c_run->add_flag("--true-weight-sharing", run.true_weight_sharing, "Shifts cost nothing");
  c_run->add_flag("--literal-init", run.literal_init, "Zero-initialised filters without warm-up guard");

  AblateArgs abl;
  auto* c_abl = app.add_subcommand("ablate", "Threshold grid of stable-iteration accuracy");
  c_abl->add_option("--config", abl.config, "JSON scenario configuration")->required()->check(CLI::ExistingFile);
  c_abl->add_option("--tlims", abl.tlims, "Comma-separated temperature limits, C")->required();
  c_abl->add_option("--glims", abl.glims, "Comma-separated gradient limits, C/s")->required();
  c_abl->add_option("--out", abl.out, "CSV matrix path; the text table goes to <out>.txt")->required();
  c_abl->add_option("--duration", abl.duration, "Simulated seconds per cell")->capture_default_str();

  std::string sum_trace, sum_suite;
  auto* c_sum = app.add_subcommand("summarize", "Summary of a trace CSV as JSON");
  c_sum->add_option("--trace", sum_trace, "Trace CSV")->required();
  c_sum->add_option("--suite", sum_suite, "Built-in suite the trace ran")->required();

  std::string plot_trace, plot_overlay, plot_out;
  std::optional<double> plot_tlim, plot_tthrottle;
  auto* c_plot = app.add_subcommand("plot", "Temperature, frequency and latency SVGs");
  c_plot->add_option("--trace", plot_trace, "Trace CSV")->required();
  c_plot->add_option("--overlay", plot_overlay, "Second trace drawn on the same axes");
  c_plot->add_option("--out", plot_out, "Output prefix")->required();
  c_plot->add_option("--tlim", plot_tlim, "Draw a t_lim reference line, C");
  c_plot->add_option("--tthrottle", plot_tthrottle, "Draw a throttle reference line, C");

  LiveArgs live;
  auto* c_live = app.add_subcommand("live", "Poll a thermal zone and report shift decisions");
  c_live->add_option("--zone", live.zone, "Thermal zone file (millidegrees)")->required();
  c_live->add_option("--tlim", live.t_lim, "Temperature limit, C")->capture_default_str();
  c_live->add_option("--glim", live.g_lim, "Gradient limit, C/s")->capture_default_str();
  c_live->add_option("--period", live.period, "Seconds between polls")->capture_default_str();
  c_live->add_option("--duration", live.duration, "Seconds to run")->capture_default_str();
  c_live->add_option("--out", live.out, "Optional trace CSV");

  CLI11_PARSE(app, argc, argv);

  try {
    if (*c_run) return cmd_run(run);
    if (*c_abl) return cmd_ablate(abl);
    if (*c_sum) return cmd_summarize(sum_trace, sum_suite);
    if (*c_plot) return cmd_plot(plot_trace, plot_overlay, plot_out, plot_tlim, plot_tthrottle);
    if (*c_live) return cmd_live(live);
  } catch (const std::exception& e) {
    std::fprintf(stderr, "coolshift: %s\n", e.what());
    return 1;
  }
  return 2;
}
