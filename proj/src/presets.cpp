#include "coolshift/presets.hpp"

#include "coolshift/error.hpp"

namespace coolshift {
namespace {

ControllerConfig thresholds(double t_lim, double g_lim) {
  ControllerConfig c;
  c.t_lim = t_lim;
  c.g_lim = g_lim;
  return c;
}

// Base latencies at nominal frequency. The phone ResNet pair reproduces the
// measured large-model latency (0.205 s) and the small-model latency implied
// by the dynamic-shifting average (0.150 s at a 43.8 % large share). Shift-in
// overheads are the measured load times. Power figures, Pi latencies and the
// small DynaBERT accuracies are modelling choices.
std::vector<SuitePreset> make_suites() {
  std::vector<SuitePreset> s;
  s.push_back({"slimmable-resnet50-phone",
               {"slimmable-resnet50-phone",
                {"resnet50-1.0x", 0.205, 14.0, 0.768, {1.000, 0.252}},
                {"resnet50-0.25x", 0.107, 12.0, 0.638, {0.997, 0.321}}},
               {0.205, 1.0},
               Platform::Phone,
               thresholds(73.0, -0.07),
               "phone"});
  s.push_back({"dynabert-phone",
               {"dynabert-phone",
                {"bert-d0.5-w0.5", 0.155, 14.0, 0.900, {0.885, 0.066}},
                {"bert-d0.25-w0.5", 0.142, 9.0, 0.879, {0.826, 0.016}}},
               {0.217, 1.4},
               Platform::Phone,
               thresholds(65.0, -0.008),
               "phone-dynabert"});
  s.push_back({"slimmable-resnet50-pi",
               {"slimmable-resnet50-pi",
                {"resnet50-1.0x", 0.46, 6.0, 0.768, {0.887, 0.070}},
                {"resnet50-0.25x", 0.13, 4.5, 0.638, {0.143, 0.006}}},
               {0.46, 1.0},
               Platform::Pi,
               thresholds(77.0, -0.02),
               "pi"});
  s.push_back({"dynabert-pi",
               {"dynabert-pi",
                {"bert-d0.5-w1.0", 0.95, 6.0, 0.915, {1.527, 0.423}},
                {"bert-d0.5-w0.25", 0.30, 4.5, 0.880, {0.810, 0.218}}},
               {0.95, 1.0},
               Platform::Pi,
               thresholds(77.0, -0.012),
               "pi"});
  return s;
}

}  // namespace

const std::vector<SuitePreset>& builtin_suites() {
  static const std::vector<SuitePreset> suites = make_suites();
  return suites;
}

const SuitePreset& builtin_suite(std::string_view name) {
  for (const auto& p : builtin_suites()) {
    if (p.name == name) return p;
  }
  throw ConfigError("unknown built-in suite '" + std::string(name) + "'");
}

CalibrationTargets builtin_device(std::string_view name) {
  CalibrationTargets t;
  if (name == "phone") {
    t.t_throttle = 77.0;
    t.f_nominal = 2.86;
    t.f_throttled = 1.8;
    t.governor = GovernorKind::PhoneDrop;
    t.time_to_throttle = 300.0;
    t.large_equilibrium = 85.5;
    t.t_lim = 73.0;
  } else if (name == "phone-dynabert") {
    // The same handset trips earlier under the BERT workload.
    t.t_throttle = 70.0;
    t.f_nominal = 2.86;
    t.f_throttled = 1.8;
    t.governor = GovernorKind::PhoneDrop;
    t.time_to_throttle = 400.0;
    t.large_equilibrium = 78.0;
    t.t_lim = 65.0;
  } else if (name == "pi") {
    t.t_throttle = 78.0;
    t.f_nominal = 1.5;
    t.f_throttled = 0.6;
    t.governor = GovernorKind::PiPin;
    t.time_to_throttle = 600.0;
    t.latency_rise = 0.05;
    t.pin_tolerance = 0.5;
    t.t_lim = 77.0;
  } else {
    throw ConfigError("unknown built-in device '" + std::string(name) + "'");
  }
  return t;
}

std::vector<std::string> builtin_device_names() { return {"phone", "phone-dynabert", "pi"}; }

WorkloadShape workload_shape(const ModelSuite& suite, const PacingPolicy& pacing, Platform platform,
                             double idle_power, bool logging) {
  return {suite, pacing, idle_power, logging ? logging_overhead_dist(platform).mean : 0.0};
}

Scenario builtin_scenario(std::string_view suite_name, bool with_controller, double duration, std::uint64_t seed) {
  const SuitePreset& preset = builtin_suite(suite_name);
  Scenario s;
  s.suite = preset.suite;
  s.pacing = preset.pacing;
  s.platform = preset.platform;
  s.duration = duration;
  s.seed = seed;
  if (with_controller) s.controller = preset.controller;
  s.profile = calibrate_profile(builtin_device(preset.device), workload_shape(s.suite, s.pacing, s.platform)).profile;
  return s;
}

}  // namespace coolshift
