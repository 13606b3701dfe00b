#pragma once

#include <functional>
#include <string_view>

namespace coolshift {

enum class GovernorKind {
  PhoneDrop,  // two-level frequency drop with hysteresis release
  PiPin,      // proportional frequency cap that pins the trip temperature
};

std::string_view to_string(GovernorKind g);

/// Largest explicit-Euler step used when integrating the thermal model.
inline constexpr double kMaxSubstep = 0.1;  // s

/// Lumped single-node thermal parameters plus the throttling governor.
struct DeviceProfile {
  double heat_capacity = 30.0;  // J/°C
  double dissipation = 0.2;     // W/°C
  double ambient = 22.0;        // °C
  double f_nominal = 2.86;      // GHz
  double f_throttled = 1.8;     // GHz
  double t_throttle = 77.0;     // °C, governor trip point
  double t_resume = 72.0;       // °C, PhoneDrop release point
  GovernorKind governor = GovernorKind::PhoneDrop;
  double pin_gain = 0.5;        // GHz per °C above t_throttle (PiPin)

  /// Equilibrium temperature under constant power with no throttling.
  double equilibrium(double power) const { return ambient + power / dissipation; }
  /// Thermal time constant C/k in seconds.
  double time_constant() const { return heat_capacity / dissipation; }

  /// Throws ConfigError listing every violated invariant.
  void validate() const;
};

struct DeviceState {
  double temp = 22.0;  // °C
  double freq = 2.86;  // GHz
  bool throttled = false;
  double sim_time = 0.0;  // s
};

/// Device at ambient temperature, nominal frequency, time zero.
DeviceState initial_state(const DeviceProfile& profile);

/// Integrates dT/dt = (P - k (T - T_amb)) / C over dt seconds with explicit
/// Euler sub-steps no longer than kMaxSubstep. Frequency is not touched.
DeviceState thermal_step(DeviceState state, const DeviceProfile& profile, double power, double dt);

/// Applies the governor to the current temperature.
DeviceState governor_step(DeviceState state, const DeviceProfile& profile);

enum class ThrottleTransition { None, On, Off };

/// Power as a function of the instantaneous CPU frequency (GHz -> W).
using PowerFn = std::function<double(double freq)>;

/// Advances the coupled thermal/governor system by dt seconds: each sub-step
/// evaluates power at the current frequency, integrates the temperature, then
/// runs the governor. on_transition fires for every throttle on/off edge.
DeviceState advance(DeviceState state, const DeviceProfile& profile, const PowerFn& power, double dt,
                    const std::function<void(ThrottleTransition, const DeviceState&)>& on_transition = {});

}  // namespace coolshift
