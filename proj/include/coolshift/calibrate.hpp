#pragma once

#include "coolshift/thermal.hpp"
#include "coolshift/workload.hpp"

namespace coolshift {

/// The iteration structure the profile is calibrated against.
struct WorkloadShape {
  ModelSuite suite;
  PacingPolicy pacing;
  double idle_power = kDefaultIdlePower;
  double logging_time = 0.0;  // mean logging time per iteration, s
};

struct CalibrationTargets {
  double ambient = 22.0;
  double t_throttle = 77.0;
  double f_nominal = 2.86;
  double f_throttled = 1.8;
  GovernorKind governor = GovernorKind::PhoneDrop;
  double time_to_throttle = 600.0;  // s, large model alone, from ambient
  // PhoneDrop: unthrottled large-only equilibrium temperature.
  double large_equilibrium = 85.0;
  // PhoneDrop: place the release point below the throttled equilibrium so a
  // throttled device stays throttled; otherwise t_throttle - 5.
  bool sustain_throttle = true;
  // PiPin: latency rise at the pinned equilibrium, e.g. 0.05 for +5 %.
  double latency_rise = 0.05;
  double pin_tolerance = 0.5;  // °C, allowed equilibrium offset above t_throttle
  // Controller threshold the small model must stay clear of.
  double t_lim = 73.0;
  double small_margin = 2.0;  // °C
};

struct CalibrationResult {
  DeviceProfile profile;
  double time_to_throttle = 0.0;       // achieved, s
  double large_equilibrium = 0.0;      // unthrottled, °C
  double small_equilibrium = 0.0;      // °C
  double throttled_equilibrium = 0.0;  // °C (PhoneDrop: at f_throttled; PiPin: pinned)
  double latency_rise = 0.0;           // fractional, at throttled equilibrium
};

/// Cycle-averaged power of a paced loop running `variant` at `freq`.
double mean_iteration_power(const ModelVariant& variant, double freq, const DeviceProfile& profile,
                            const WorkloadShape& shape);

/// Fits k, C (and t_resume or pin_gain) so the large model throttles within
/// the requested time while the small model settles clear of t_lim. Throws
/// CalibrationError for infeasible targets.
CalibrationResult calibrate_profile(const CalibrationTargets& targets, const WorkloadShape& shape);

/// Time for the large-only paced loop to first engage the governor, found by
/// forward simulation. Returns a negative value if it never does within limit.
double simulate_time_to_throttle(const DeviceProfile& profile, const WorkloadShape& shape, double limit);

}  // namespace coolshift
