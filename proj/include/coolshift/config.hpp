#pragma once

#include <filesystem>
#include <optional>
#include <string>

#include "coolshift/analysis.hpp"
#include "coolshift/calibrate.hpp"
#include "coolshift/harness.hpp"

namespace coolshift {

/// A parsed configuration document, ready to run.
struct LoadedConfig {
  Scenario scenario;
  std::string suite_name;
  std::optional<CalibrationResult> calibration;  // set when the device was calibrated
};

/// Parses a JSON configuration document.
///
/// Top-level keys: device, suite, controller, pacing, duration, seed,
/// platform, idle_power, logging, true_weight_sharing. `suite` is a built-in
/// name or an object {name, large, small}; a built-in suite supplies defaults
/// for device, pacing, platform and controller. `device` is a built-in device
/// name, {"profile": {...}} or {"calibrate": {...}}. A null or absent
/// controller means a large-only baseline unless the suite supplies one.
/// Unknown keys are rejected; every problem is reported in one ConfigError.
LoadedConfig parse_config(const std::string& json_text);
LoadedConfig load_config(const std::filesystem::path& path);

/// The suite part of a configuration (built-in name or inline object).
ModelSuite parse_suite_json(const std::string& json_text);

std::string summary_to_json(const Summary& summary, const LoadedConfig* config = nullptr);

}  // namespace coolshift
