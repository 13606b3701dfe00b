#include "coolshift/controller.hpp"

#include <cmath>
#include <string>
#include <vector>

#include "coolshift/error.hpp"

namespace coolshift {
namespace {

constexpr double kAbsoluteZeroC = -273.15;

}  // namespace

std::string_view to_string(Mode m) { return m == Mode::Large ? "LARGE" : "SMALL"; }

std::string_view to_string(Decision d) {
  switch (d) {
    case Decision::Stay:
      return "stay";
    case Decision::ShiftToSmall:
      return "shift_to_small";
    case Decision::ShiftToLarge:
      return "shift_to_large";
  }
  return "stay";
}

void ControllerConfig::validate() const {
  std::vector<std::string> issues;
  if (!(alpha > 0.0 && alpha < 1.0)) issues.push_back("alpha must be in (0,1), got " + std::to_string(alpha));
  if (!(beta > 0.0 && beta < 1.0)) issues.push_back("beta must be in (0,1), got " + std::to_string(beta));
  if (!std::isfinite(t_lim)) issues.push_back("t_lim must be finite");
  if (!std::isfinite(g_lim)) issues.push_back("g_lim must be finite");
  if (warmup_samples < 2) issues.push_back("warmup_samples must be >= 2, got " + std::to_string(warmup_samples));
  if (!issues.empty()) throw ConfigError(std::move(issues));
}

Controller::Controller(ControllerConfig config) : config_(config) {
  config_.validate();
  reset_filters();
}

void Controller::reset_filters() {
  if (config_.literal_init) {
    state_.avg_temp = 0.0;
    state_.prev_avg_temp = 0.0;
  } else {
    state_.avg_temp.reset();
    state_.prev_avg_temp.reset();
  }
  state_.grad = 0.0;
  state_.samples_since_reset = 0;
  state_.cooling_seen = false;
  prev_sample_time_.reset();
}

double Controller::estimate_derivative(double new_avg, std::optional<double> time_s) {
  double raw = 0.0;
  if (state_.prev_avg_temp) {
    raw = new_avg - *state_.prev_avg_temp;
    if (config_.unit == DerivativeUnit::PerSecond) {
      // Without a previous timestamp there is no rate to compute.
      if (time_s && prev_sample_time_ && *time_s > *prev_sample_time_) {
        raw /= (*time_s - *prev_sample_time_);
      } else {
        raw = 0.0;
      }
    }
  }
  if (raw < 0.0) state_.cooling_seen = true;
  state_.grad = ema_update(state_.grad, raw, config_.beta);
  state_.prev_avg_temp = new_avg;
  if (time_s) prev_sample_time_ = time_s;
  return state_.grad;
}

void Controller::check_sample(const TemperatureSample& sample) const {
  if (!std::isfinite(sample.celsius)) throw SampleError("non-finite temperature sample");
  if (sample.celsius < kAbsoluteZeroC) {
    throw SampleError("temperature below absolute zero: " + std::to_string(sample.celsius));
  }
  if (config_.unit == DerivativeUnit::PerSecond) {
    if (!std::isfinite(sample.time_s)) throw SampleError("non-finite sample time");
    if (last_time_ && sample.time_s <= *last_time_) {
      throw SampleError("sample time " + std::to_string(sample.time_s) +
                        " does not advance past " + std::to_string(*last_time_));
    }
  }
}

bool Controller::shift_to_large_allowed() const {
  if (config_.literal_init) return true;
  return state_.samples_since_reset >= config_.warmup_samples && state_.cooling_seen;
}

Decision Controller::observe(const TemperatureSample& sample) {
  check_sample(sample);
  last_time_ = sample.time_s;

  // The first sample after a reset seeds the average; the literal variant
  // instead starts the average from zero.
  const double new_avg = state_.avg_temp ? ema_update(*state_.avg_temp, sample.celsius, config_.alpha)
                                         : sample.celsius;
  state_.avg_temp = new_avg;
  estimate_derivative(new_avg, sample.time_s);
  ++state_.samples_since_reset;
  last_avg_ = state_.avg_temp;
  last_grad_ = state_.grad;

  if (state_.mode == Mode::Large && sample.celsius > config_.t_lim) {
    state_.mode = Mode::Small;
    reset_filters();
    return Decision::ShiftToSmall;
  }
  if (state_.mode == Mode::Small && state_.grad > config_.g_lim && shift_to_large_allowed()) {
    state_.mode = Mode::Large;
    reset_filters();
    return Decision::ShiftToLarge;
  }
  return Decision::Stay;
}

}  // namespace coolshift
