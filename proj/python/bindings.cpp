#include <pybind11/functional.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>
#include <pybind11/stl/filesystem.h>

#include <sstream>

#include "coolshift/analysis.hpp"
#include "coolshift/config.hpp"
#include "coolshift/controller.hpp"
#include "coolshift/error.hpp"
#include "coolshift/harness.hpp"
#include "coolshift/plot.hpp"
#include "coolshift/presets.hpp"
#include "coolshift/sensor.hpp"
#include "coolshift/thermal.hpp"
#include "coolshift/trace.hpp"

namespace py = pybind11;
using namespace coolshift;

namespace {

std::string trace_csv(const Trace& t) {
  std::ostringstream out;
  write_trace_csv(out, t);
  return out.str();
}

Trace parse_csv(const std::string& text) {
  std::istringstream in(text);
  return read_trace_csv(in, "<string>");
}

std::vector<std::string> suite_names() {
  std::vector<std::string> out;
  for (const auto& p : builtin_suites()) out.push_back(p.name);
  return out;
}

}  // namespace

PYBIND11_MODULE(_coolshift, m) {
  m.doc() = "Thermal-aware dynamic model shifting";
  m.attr("__version__") = "0.1.0";

  auto base = py::register_exception<Error>(m, "Error", PyExc_RuntimeError);
  py::register_exception<ConfigError>(m, "ConfigError", base.ptr());
  py::register_exception<SampleError>(m, "SampleError", base.ptr());
  py::register_exception<ScenarioError>(m, "ScenarioError", base.ptr());
  py::register_exception<CalibrationError>(m, "CalibrationError", base.ptr());
  auto analysis = py::register_exception<AnalysisError>(m, "AnalysisError", base.ptr());
  py::register_exception<InsufficientCyclesError>(m, "InsufficientCyclesError", analysis.ptr());
  py::register_exception<ReadError>(m, "ReadError", base.ptr());
  py::register_exception<IoError>(m, "IoError", base.ptr());

  py::enum_<Mode>(m, "Mode").value("LARGE", Mode::Large).value("SMALL", Mode::Small);
  py::enum_<Decision>(m, "Decision")
      .value("STAY", Decision::Stay)
      .value("SHIFT_TO_SMALL", Decision::ShiftToSmall)
      .value("SHIFT_TO_LARGE", Decision::ShiftToLarge);
  py::enum_<DerivativeUnit>(m, "DerivativeUnit")
      .value("PER_SECOND", DerivativeUnit::PerSecond)
      .value("PER_SAMPLE", DerivativeUnit::PerSample);
  py::enum_<GovernorKind>(m, "GovernorKind")
      .value("PHONE_DROP", GovernorKind::PhoneDrop)
      .value("PI_PIN", GovernorKind::PiPin);

  py::class_<ControllerConfig>(m, "ControllerConfig")
      .def(py::init<>())
      .def(py::init([](double t_lim, double g_lim, double alpha, double beta) {
             ControllerConfig c;
             c.t_lim = t_lim;
             c.g_lim = g_lim;
             c.alpha = alpha;
             c.beta = beta;
             return c;
           }),
           py::arg("t_lim"), py::arg("g_lim"), py::arg("alpha") = 0.995, py::arg("beta") = 0.99)
      .def_readwrite("alpha", &ControllerConfig::alpha)
      .def_readwrite("beta", &ControllerConfig::beta)
      .def_readwrite("t_lim", &ControllerConfig::t_lim)
      .def_readwrite("g_lim", &ControllerConfig::g_lim)
      .def_readwrite("unit", &ControllerConfig::unit)
      .def_readwrite("warmup_samples", &ControllerConfig::warmup_samples)
      .def_readwrite("literal_init", &ControllerConfig::literal_init);

  py::class_<Controller>(m, "Controller")
      .def(py::init<ControllerConfig>(), py::arg("config"))
      .def("observe", [](Controller& c, double time_s, double celsius) { return c.observe({time_s, celsius}); },
           py::arg("time_s"), py::arg("celsius"))
      .def("reset_filters", &Controller::reset_filters)
      .def_property_readonly("mode", &Controller::mode)
      .def_property_readonly("avg_temp", &Controller::last_avg_temp)
      .def_property_readonly("grad", &Controller::last_grad);

  m.def("ema_update", &ema_update, py::arg("prev"), py::arg("x"), py::arg("coeff"));

  py::class_<DeviceProfile>(m, "DeviceProfile")
      .def(py::init<>())
      .def_readwrite("heat_capacity", &DeviceProfile::heat_capacity)
      .def_readwrite("dissipation", &DeviceProfile::dissipation)
      .def_readwrite("ambient", &DeviceProfile::ambient)
      .def_readwrite("f_nominal", &DeviceProfile::f_nominal)
      .def_readwrite("f_throttled", &DeviceProfile::f_throttled)
      .def_readwrite("t_throttle", &DeviceProfile::t_throttle)
      .def_readwrite("t_resume", &DeviceProfile::t_resume)
      .def_readwrite("governor", &DeviceProfile::governor)
      .def_readwrite("pin_gain", &DeviceProfile::pin_gain)
      .def("equilibrium", &DeviceProfile::equilibrium, py::arg("power"))
      .def("validate", &DeviceProfile::validate);

  py::class_<DeviceState>(m, "DeviceState")
      .def_readonly("temp", &DeviceState::temp)
      .def_readonly("freq", &DeviceState::freq)
      .def_readonly("throttled", &DeviceState::throttled)
      .def_readonly("sim_time", &DeviceState::sim_time);
  m.def("initial_state", &initial_state, py::arg("profile"));
  m.def("thermal_step", &thermal_step, py::arg("state"), py::arg("profile"), py::arg("power"), py::arg("dt"));

  py::class_<TraceRecord>(m, "TraceRecord")
      .def_readonly("sim_time", &TraceRecord::sim_time)
      .def_readonly("cpu_temp", &TraceRecord::cpu_temp)
      .def_readonly("avg_temp", &TraceRecord::avg_temp)
      .def_readonly("grad", &TraceRecord::grad)
      .def_readonly("freq", &TraceRecord::freq)
      .def_readonly("mode", &TraceRecord::mode)
      .def_readonly("inference_latency", &TraceRecord::inference_latency)
      .def_readonly("idle", &TraceRecord::idle)
      .def_readonly("overhead", &TraceRecord::overhead)
      .def_property_readonly("event", [](const TraceRecord& r) { return r.event.str(); });

  py::class_<Scenario>(m, "Scenario")
      .def_readwrite("profile", &Scenario::profile)
      .def_readwrite("controller", &Scenario::controller)
      .def_readwrite("duration", &Scenario::duration)
      .def_readwrite("seed", &Scenario::seed)
      .def_readwrite("true_weight_sharing", &Scenario::true_weight_sharing)
      .def_readwrite("logging", &Scenario::logging);

  m.def("builtin_suites", &suite_names);
  m.def("builtin_scenario", &builtin_scenario, py::arg("suite"), py::arg("with_controller") = true,
        py::arg("duration") = 3600.0, py::arg("seed") = 1);
  m.def("parse_config", [](const std::string& text) { return parse_config(text).scenario; }, py::arg("json_text"));
  m.def("load_config", [](const std::filesystem::path& p) { return load_config(p).scenario; }, py::arg("path"));
  m.def("run_scenario", &run_scenario, py::arg("scenario"), py::call_guard<py::gil_scoped_release>());

  m.def("trace_to_csv", &trace_csv, py::arg("trace"));
  m.def("trace_from_csv", &parse_csv, py::arg("text"));
  m.def("emit_trace", &emit_trace, py::arg("trace"), py::arg("path"));
  m.def("load_trace", &load_trace, py::arg("path"));

  py::class_<Summary>(m, "Summary")
      .def_readonly("avg_latency", &Summary::avg_latency)
      .def_readonly("est_accuracy", &Summary::est_accuracy)
      .def_readonly("n_large", &Summary::n_large)
      .def_readonly("n_small", &Summary::n_small)
      .def_readonly("n_shifts", &Summary::n_shifts)
      .def_readonly("n_throttle_events", &Summary::n_throttle_events)
      .def_readonly("max_temp", &Summary::max_temp);
  m.def("summarize", [](const Trace& t, const std::string& suite) { return summarize(t, builtin_suite(suite).suite); },
        py::arg("trace"), py::arg("suite"));
  m.def("stable_iteration_accuracy",
        [](const Trace& t, const std::string& suite, int n) {
          return stable_iteration_accuracy(t, builtin_suite(suite).suite, n);
        },
        py::arg("trace"), py::arg("suite"), py::arg("n_iterations") = kAblationIterations);
  m.def("ablation_grid",
        [](const Scenario& s, const std::vector<double>& ts, const std::vector<double>& gs, double duration) {
          const AblationGrid g = ablation_grid(s, ts, gs, duration);
          // Rows by g_lim; None marks a cell without enough cycles.
          std::vector<std::vector<std::optional<double>>> out;
          for (const auto& row : g.cells) {
            auto& r = out.emplace_back();
            for (const auto& c : row) r.push_back(c.accuracy);
          }
          return out;
        },
        py::arg("scenario"), py::arg("t_lims"), py::arg("g_lims"), py::arg("duration") = kAblationDuration,
        py::call_guard<py::gil_scoped_release>());
  m.def("emit_plots",
        [](const std::vector<Trace>& traces, const std::vector<std::string>& labels, const std::string& prefix) {
          if (labels.size() != traces.size()) throw ConfigError("labels and traces differ in length");
          std::vector<PlotSeries> series;
          for (size_t i = 0; i < traces.size(); ++i) series.push_back({labels[i], &traces[i]});
          return emit_plots(series, prefix);
        },
        py::arg("traces"), py::arg("labels"), py::arg("prefix"));

  m.def("read_sysfs_temp", [](const std::filesystem::path& p) { return read_sysfs_temp(p); }, py::arg("path"));
  m.def("replay",
        [](const std::filesystem::path& csv, const ControllerConfig& cfg) {
          ReplaySource src = ReplaySource::from_csv(csv);
          LiveOptions o;
          o.realtime = false;
          o.duration = 1e12;
          return live_run(src, cfg, o);
        },
        py::arg("trace_csv"), py::arg("config"));
}
