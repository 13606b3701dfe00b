#include "coolshift/harness.hpp"

#include <algorithm>
#include <string>
#include <vector>

#include "coolshift/error.hpp"

namespace coolshift {

void Scenario::validate() const {
  std::vector<std::string> issues;
  auto collect = [&issues](auto&& check) {
    try {
      check();
    } catch (const ConfigError& e) {
      issues.insert(issues.end(), e.issues().begin(), e.issues().end());
    }
  };
  if (!(duration > 0.0)) issues.push_back("duration must be > 0");
  collect([&] { profile.validate(); });
  collect([&] { coolshift::validate(suite.large, "suite.large"); });
  collect([&] { coolshift::validate(suite.small, "suite.small"); });
  collect([&] { coolshift::validate(pacing, suite, profile); });
  if (controller) collect([&] { controller->validate(); });
  if (suite.large.base_latency < suite.small.base_latency) {
    issues.push_back("suite.large.base_latency must be >= suite.small.base_latency");
  }
  if (!(idle_power >= 0.0)) issues.push_back("idle_power must be >= 0");
  if (!issues.empty()) {
    std::string msg = "invalid scenario";
    for (size_t i = 0; i < issues.size(); ++i) msg += (i == 0 ? ": " : "; ") + issues[i];
    throw ScenarioError(msg);
  }
}

Trace run_scenario(const Scenario& scenario) {
  scenario.validate();

  const DeviceProfile& profile = scenario.profile;
  DeviceState device = initial_state(profile);
  std::optional<Controller> controller;
  if (scenario.controller) controller.emplace(*scenario.controller);
  OverheadSampler sampler(scenario.seed, scenario.true_weight_sharing, scenario.logging);

  Mode mode = Mode::Large;
  double pending_shift = 0.0;
  Trace trace;

  EventSet events;
  auto on_transition = [&events](ThrottleTransition t, const DeviceState&) {
    events.add(t == ThrottleTransition::On ? EventSet::kThrottleOn : EventSet::kThrottleOff);
  };
  const PowerFn idle_power = [p = scenario.idle_power](double) { return p; };

  while (device.sim_time < scenario.duration) {
    events = {};
    const ModelVariant& variant = mode == Mode::Large ? scenario.suite.large : scenario.suite.small;
    const PowerFn active = [&](double f) { return power_draw(variant, f, profile); };

    // Loading the incoming model is compute work.
    const double shift = pending_shift;
    pending_shift = 0.0;
    device = advance(device, profile, active, shift, on_transition);

    const IterationTime it = iteration_time(variant, device.freq, profile, scenario.pacing);
    device = advance(device, profile, active, it.compute, on_transition);
    device = advance(device, profile, idle_power, it.idle, on_transition);
    const double logging = sampler.logging_overhead(scenario.platform);
    device = advance(device, profile, idle_power, logging, on_transition);

    TraceRecord row;
    row.sim_time = device.sim_time;
    row.cpu_temp = device.temp;
    row.freq = device.freq;
    row.inference_latency = it.compute;
    row.idle = it.idle;
    row.overhead = shift + logging;

    if (controller) {
      const Decision d = controller->observe({device.sim_time, device.temp});
      row.avg_temp = controller->last_avg_temp();
      row.grad = controller->last_grad();
      if (d == Decision::ShiftToSmall) {
        events.add(EventSet::kShiftToSmall);
        pending_shift = sampler.shift_overhead(scenario.suite.small);
      } else if (d == Decision::ShiftToLarge) {
        events.add(EventSet::kShiftToLarge);
        pending_shift = sampler.shift_overhead(scenario.suite.large);
      }
      mode = controller->mode();
    }
    row.mode = mode;
    row.event = events;
    trace.push_back(row);
  }
  return trace;
}

}  // namespace coolshift
