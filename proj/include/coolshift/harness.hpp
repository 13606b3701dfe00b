#pragma once

#include <cstdint>
#include <optional>

#include "coolshift/controller.hpp"
#include "coolshift/thermal.hpp"
#include "coolshift/trace.hpp"
#include "coolshift/workload.hpp"

namespace coolshift {

struct Scenario {
  DeviceProfile profile;
  ModelSuite suite;
  std::optional<ControllerConfig> controller;  // absent: large-only baseline
  PacingPolicy pacing;
  double duration = 3600.0;  // s
  std::uint64_t seed = 1;
  Platform platform = Platform::Phone;
  double idle_power = kDefaultIdlePower;
  bool true_weight_sharing = false;
  bool logging = true;

  /// Throws ScenarioError describing every inconsistency.
  void validate() const;
};

/// Runs the closed loop until sim_time >= duration. Each iteration pays any
/// pending shift-in overhead, runs one inference at the current frequency,
/// idles to the pacing period, logs, then reads the temperature and consults
/// the controller. Deterministic for a given scenario and seed.
Trace run_scenario(const Scenario& scenario);

}  // namespace coolshift
