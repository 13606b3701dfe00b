#pragma once

#include <optional>
#include <string_view>

namespace coolshift {

enum class Mode { Large, Small };
enum class Decision { Stay, ShiftToSmall, ShiftToLarge };

/// Time base of the smoothed derivative.
enum class DerivativeUnit { PerSecond, PerSample };

std::string_view to_string(Mode m);
std::string_view to_string(Decision d);

/// One timestamped CPU temperature reading.
struct TemperatureSample {
  double time_s = 0.0;
  double celsius = 0.0;
};

struct ControllerConfig {
  double alpha = 0.995;  // temperature EMA coefficient
  double beta = 0.99;    // derivative EMA coefficient
  double t_lim = 73.0;   // °C, raw-temperature trigger for LARGE -> SMALL
  double g_lim = -0.07;  // °C per unit, smoothed-derivative trigger for SMALL -> LARGE
  DerivativeUnit unit = DerivativeUnit::PerSecond;
  // Samples that must be observed after a reset before SMALL -> LARGE is
  // allowed. The default is the derivative filter's time constant 1/(1-beta).
  int warmup_samples = 100;
  // Follow the textbook loop verbatim: filters restart from zero and no
  // warm-up guard is applied.
  bool literal_init = false;

  /// Throws ConfigError listing every invalid field.
  void validate() const;
};

/// Plain snapshot of the controller's filter and mode state.
struct ControllerState {
  Mode mode = Mode::Large;
  std::optional<double> avg_temp;       // unseeded after a reset
  std::optional<double> prev_avg_temp;  // unseeded after a reset
  double grad = 0.0;
  int samples_since_reset = 0;
  bool cooling_seen = false;  // a negative raw derivative since the last reset
};

/// y <- coeff * prev + (1 - coeff) * x, written in increment form so that
/// a constant input is an exact fixed point.
constexpr double ema_update(double prev, double x, double coeff) {
  return prev + (1.0 - coeff) * (x - prev);
}

/// Temperature-driven switch between a large and a small model.
///
/// Each observed sample updates the smoothed temperature, then the smoothed
/// derivative. In LARGE mode a raw reading above t_lim selects SMALL; in SMALL
/// mode a smoothed derivative above g_lim (after the warm-up guard) selects
/// LARGE. Every shift clears the filters. Single-owner, not thread-safe.
class Controller {
 public:
  explicit Controller(ControllerConfig config);

  /// Feeds one sample. Throws SampleError for non-finite temperatures, values
  /// below absolute zero, or (per-second mode) non-increasing timestamps; the
  /// state is unchanged in that case.
  Decision observe(const TemperatureSample& sample);

  /// Clears the smoothing filters; the mode is preserved.
  void reset_filters();

  /// Feeds a new smoothed temperature to the derivative filter and returns
  /// the updated smoothed derivative. Advances prev_avg_temp.
  double estimate_derivative(double new_avg, std::optional<double> time_s = std::nullopt);

  const ControllerConfig& config() const noexcept { return config_; }
  const ControllerState& state() const noexcept { return state_; }
  Mode mode() const noexcept { return state_.mode; }

  /// Smoothed temperature and derivative computed for the most recent sample,
  /// before any shift cleared the filters.
  std::optional<double> last_avg_temp() const noexcept { return last_avg_; }
  std::optional<double> last_grad() const noexcept { return last_grad_; }

 private:
  void check_sample(const TemperatureSample& sample) const;
  bool shift_to_large_allowed() const;

  ControllerConfig config_;
  ControllerState state_;
  std::optional<double> prev_sample_time_;  // cleared with the filters
  std::optional<double> last_time_;         // never cleared; ordering check
  std::optional<double> last_avg_;
  std::optional<double> last_grad_;
};

}  // namespace coolshift
