#include "coolshift/thermal.hpp"

#include <algorithm>
#include <cmath>
#include <string>
#include <vector>

#include "coolshift/error.hpp"

namespace coolshift {
namespace {

int substep_count(double dt) {
  return std::max(1, static_cast<int>(std::ceil(dt / kMaxSubstep - 1e-9)));
}

}  // namespace

std::string_view to_string(GovernorKind g) { return g == GovernorKind::PhoneDrop ? "phone_drop" : "pi_pin"; }

void DeviceProfile::validate() const {
  std::vector<std::string> issues;
  if (!(heat_capacity > 0.0)) issues.push_back("heat_capacity must be > 0");
  if (!(dissipation > 0.0)) issues.push_back("dissipation must be > 0");
  if (!std::isfinite(ambient)) issues.push_back("ambient must be finite");
  if (!(f_throttled > 0.0 && f_throttled < f_nominal)) {
    issues.push_back("frequencies must satisfy 0 < f_throttled < f_nominal");
  }
  if (!(t_resume < t_throttle)) issues.push_back("t_resume must be below t_throttle");
  if (governor == GovernorKind::PiPin && !(pin_gain > 0.0)) issues.push_back("pin_gain must be > 0");
  // Explicit Euler is stable for h < 2C/k; keep a 10x margin on the sub-step.
  if (heat_capacity > 0.0 && dissipation > 0.0 && 2.0 * heat_capacity / dissipation < 10.0 * kMaxSubstep) {
    issues.push_back("time constant C/k too small for the integration sub-step");
  }
  if (!issues.empty()) throw ConfigError(std::move(issues));
}

DeviceState initial_state(const DeviceProfile& profile) {
  return DeviceState{profile.ambient, profile.f_nominal, false, 0.0};
}

DeviceState thermal_step(DeviceState state, const DeviceProfile& profile, double power, double dt) {
  if (dt <= 0.0) return state;
  const int n = substep_count(dt);
  const double h = dt / n;
  for (int i = 0; i < n; ++i) {
    state.temp += h * (power - profile.dissipation * (state.temp - profile.ambient)) / profile.heat_capacity;
  }
  state.sim_time += dt;
  return state;
}

DeviceState governor_step(DeviceState state, const DeviceProfile& profile) {
  switch (profile.governor) {
    case GovernorKind::PhoneDrop:
      if (!state.throttled && state.temp >= profile.t_throttle) {
        state.throttled = true;
        state.freq = profile.f_throttled;
      } else if (state.throttled && state.temp <= profile.t_resume) {
        state.throttled = false;
        state.freq = profile.f_nominal;
      }
      break;
    case GovernorKind::PiPin: {
      const double excess = std::max(0.0, state.temp - profile.t_throttle);
      state.freq = std::clamp(profile.f_nominal - profile.pin_gain * excess, profile.f_throttled, profile.f_nominal);
      state.throttled = state.freq < profile.f_nominal;
      break;
    }
  }
  return state;
}

DeviceState advance(DeviceState state, const DeviceProfile& profile, const PowerFn& power, double dt,
                    const std::function<void(ThrottleTransition, const DeviceState&)>& on_transition) {
  if (dt <= 0.0) return state;
  const int n = substep_count(dt);
  const double h = dt / n;
  const double start = state.sim_time;
  for (int i = 0; i < n; ++i) {
    const double p = power(state.freq);
    state.temp += h * (p - profile.dissipation * (state.temp - profile.ambient)) / profile.heat_capacity;
    state.sim_time = start + h * (i + 1);
    const bool was = state.throttled;
    state = governor_step(state, profile);
    if (on_transition && was != state.throttled) {
      on_transition(state.throttled ? ThrottleTransition::On : ThrottleTransition::Off, state);
    }
  }
  state.sim_time = start + dt;
  return state;
}

}  // namespace coolshift
