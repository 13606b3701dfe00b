#include "coolshift/calibrate.hpp"

#include <cmath>
#include <functional>
#include <sstream>

#include "coolshift/error.hpp"

namespace coolshift {
namespace {

// Monotone bisection for f(x) = target on [lo, hi]; f increasing.
double bisect(const std::function<double(double)>& f, double target, double lo, double hi, int iterations = 80) {
  for (int i = 0; i < iterations; ++i) {
    const double mid = 0.5 * (lo + hi);
    if (f(mid) < target) {
      lo = mid;
    } else {
      hi = mid;
    }
  }
  return 0.5 * (lo + hi);
}

std::string fmt(double v) {
  std::ostringstream ss;
  ss << v;
  return ss.str();
}

// Frequency at which the cycle-averaged power balances dissipation at the
// temperature the PiPin governor implies for that frequency.
double pinned_frequency(const DeviceProfile& p, const WorkloadShape& shape) {
  auto imbalance = [&](double f) {
    const double temp = p.t_throttle + (p.f_nominal - f) / p.pin_gain;
    return mean_iteration_power(shape.suite.large, f, p, shape) - p.dissipation * (temp - p.ambient);
  };
  // imbalance increases with f.
  return bisect(imbalance, 0.0, p.f_throttled, p.f_nominal);
}

}  // namespace

double mean_iteration_power(const ModelVariant& variant, double freq, const DeviceProfile& profile,
                            const WorkloadShape& shape) {
  const IterationTime it = iteration_time(variant, freq, profile, shape.pacing);
  const double active = it.compute * power_draw(variant, freq, profile);
  const double passive = (it.idle + shape.logging_time) * shape.idle_power;
  return (active + passive) / (it.compute + it.idle + shape.logging_time);
}

double simulate_time_to_throttle(const DeviceProfile& profile, const WorkloadShape& shape, double limit) {
  DeviceState s = initial_state(profile);
  const ModelVariant& v = shape.suite.large;
  const PowerFn active = [&](double f) { return power_draw(v, f, profile); };
  const PowerFn idle = [&](double) { return shape.idle_power; };
  double crossed = -1.0;
  auto on_transition = [&](ThrottleTransition t, const DeviceState& st) {
    if (t == ThrottleTransition::On && crossed < 0.0) crossed = st.sim_time;
  };
  while (s.sim_time < limit && crossed < 0.0) {
    const IterationTime it = iteration_time(v, s.freq, profile, shape.pacing);
    s = advance(s, profile, active, it.compute, on_transition);
    s = advance(s, profile, idle, it.idle + shape.logging_time, on_transition);
  }
  return crossed;
}

CalibrationResult calibrate_profile(const CalibrationTargets& t, const WorkloadShape& shape) {
  const ModelVariant& large = shape.suite.large;
  const ModelVariant& small = shape.suite.small;
  if (small.power_nominal > large.power_nominal) {
    throw CalibrationError("small-model power " + fmt(small.power_nominal) + " W exceeds large-model power " +
                           fmt(large.power_nominal) + " W");
  }
  if (!(t.time_to_throttle > 0.0)) throw CalibrationError("time_to_throttle must be > 0");
  if (!(t.f_throttled > 0.0 && t.f_throttled < t.f_nominal)) {
    throw CalibrationError("need 0 < f_throttled < f_nominal");
  }

  DeviceProfile p;
  p.ambient = t.ambient;
  p.t_throttle = t.t_throttle;
  p.t_resume = t.t_throttle - 5.0;
  p.f_nominal = t.f_nominal;
  p.f_throttled = t.f_throttled;
  p.governor = t.governor;

  CalibrationResult r;
  const double p_large = mean_iteration_power(large, p.f_nominal, p, shape);

  if (t.governor == GovernorKind::PhoneDrop) {
    if (!(t.large_equilibrium > t.t_throttle)) {
      throw CalibrationError("large_equilibrium " + fmt(t.large_equilibrium) + " must exceed the trip point " +
                             fmt(t.t_throttle));
    }
    p.dissipation = p_large / (t.large_equilibrium - t.ambient);
    const double p_throttled = mean_iteration_power(large, p.f_throttled, p, shape);
    r.throttled_equilibrium = p.equilibrium(p_throttled);
    if (t.sustain_throttle) p.t_resume = std::min(p.t_resume, r.throttled_equilibrium - 2.0);
    r.latency_rise = p.f_nominal / p.f_throttled - 1.0;
  } else {
    if (!(t.latency_rise > 0.0)) throw CalibrationError("latency_rise must be > 0");
    const double f_pin = p.f_nominal / (1.0 + t.latency_rise);
    if (f_pin <= p.f_throttled) {
      throw CalibrationError("latency_rise " + fmt(t.latency_rise) + " needs a frequency below f_throttled");
    }
    // Dissipation that balances the pinned frequency exactly at the trip point.
    p.dissipation = mean_iteration_power(large, f_pin, p, shape) / (t.t_throttle - t.ambient);
    // Smallest gain whose equilibrium offset above the trip point is within tolerance.
    auto offset = [&](double gain) {
      DeviceProfile q = p;
      q.pin_gain = gain;
      return (q.f_nominal - pinned_frequency(q, shape)) / gain;
    };
    double lo = 1e-4, hi = 1e3;
    if (offset(hi) > t.pin_tolerance) throw CalibrationError("pin tolerance unreachable");
    for (int i = 0; i < 80; ++i) {
      const double mid = std::sqrt(lo * hi);
      (offset(mid) > t.pin_tolerance ? lo : hi) = mid;
    }
    p.pin_gain = hi;
    const double f_eq = pinned_frequency(p, shape);
    r.throttled_equilibrium = p.t_throttle + (p.f_nominal - f_eq) / p.pin_gain;
    r.latency_rise = p.f_nominal / f_eq - 1.0;
  }

  r.large_equilibrium = p.equilibrium(p_large);
  r.small_equilibrium = p.equilibrium(mean_iteration_power(small, p.f_nominal, p, shape));
  if (r.small_equilibrium > t.t_lim - t.small_margin) {
    throw CalibrationError("small-model equilibrium " + fmt(r.small_equilibrium) + " °C is not " +
                           fmt(t.small_margin) + " °C below t_lim " + fmt(t.t_lim));
  }
  if (r.small_equilibrium >= t.t_throttle) {
    throw CalibrationError("small-model equilibrium reaches the trip point");
  }

  // Time to throttle grows monotonically with heat capacity.
  const double limit = 20.0 * t.time_to_throttle;
  auto time_for = [&](double c) {
    DeviceProfile q = p;
    q.heat_capacity = c;
    const double tt = simulate_time_to_throttle(q, shape, limit);
    return tt < 0.0 ? limit : tt;
  };
  // Smallest heat capacity the integrator accepts.
  const double c_min = p.dissipation * kMaxSubstep * 5.0;
  double c_hi = std::max(1.0, c_min * 2.0);
  while (time_for(c_hi) < t.time_to_throttle) {
    c_hi *= 2.0;
    if (c_hi > 1e9) throw CalibrationError("time_to_throttle unreachable");
  }
  if (time_for(c_min) > t.time_to_throttle) {
    throw CalibrationError("time_to_throttle " + fmt(t.time_to_throttle) + " s is shorter than the fastest "
                           "stable profile allows");
  }
  p.heat_capacity = bisect(time_for, t.time_to_throttle, c_min, c_hi, 60);
  r.time_to_throttle = simulate_time_to_throttle(p, shape, limit);
  p.validate();
  r.profile = p;
  return r;
}

}  // namespace coolshift
