#pragma once

#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

#include "coolshift/calibrate.hpp"
#include "coolshift/controller.hpp"
#include "coolshift/harness.hpp"
#include "coolshift/workload.hpp"

namespace coolshift {

/// A built-in experiment: model pair, pacing, platform, default thresholds,
/// and the device calibration targets it runs against.
struct SuitePreset {
  std::string name;
  ModelSuite suite;
  PacingPolicy pacing;
  Platform platform = Platform::Phone;
  ControllerConfig controller;
  std::string device;  // key into builtin_device()
};

const std::vector<SuitePreset>& builtin_suites();
/// Throws ConfigError for unknown names.
const SuitePreset& builtin_suite(std::string_view name);

/// Calibration targets of a built-in device ("phone", "phone-dynabert", "pi").
/// Throws ConfigError for unknown names.
CalibrationTargets builtin_device(std::string_view name);
std::vector<std::string> builtin_device_names();

WorkloadShape workload_shape(const ModelSuite& suite, const PacingPolicy& pacing, Platform platform,
                             double idle_power = kDefaultIdlePower, bool logging = true);

/// Calibrated scenario for a built-in suite. The controller is omitted for a
/// baseline run.
Scenario builtin_scenario(std::string_view suite_name, bool with_controller = true, double duration = 3600.0,
                          std::uint64_t seed = 1);

}  // namespace coolshift
