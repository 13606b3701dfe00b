#pragma once

#include <cstdint>
#include <optional>
#include <random>
#include <string>
#include <string_view>

#include "coolshift/thermal.hpp"

namespace coolshift {

enum class Platform { Phone, Pi };

std::string_view to_string(Platform p);

/// Mean and standard deviation of a non-negative duration, in seconds.
struct OverheadDist {
  double mean = 0.0;
  double stddev = 0.0;
};

/// One member of a weight-shared model suite.
struct ModelVariant {
  std::string name;
  double base_latency = 0.0;   // s at f_nominal
  double power_nominal = 0.0;  // W at f_nominal
  double accuracy = 0.0;       // [0, 1]
  OverheadDist shift_in;       // extra latency paid when this variant is loaded
};

struct ModelSuite {
  std::string name;
  ModelVariant large;
  ModelVariant small;
};

struct PacingPolicy {
  std::optional<double> target_period;  // s; idle time pads each iteration up to this
  double latency_multiplier = 1.0;
};

/// Fixed-cycle latency: base * (f_nominal / freq) * multiplier.
double inference_latency(const ModelVariant& variant, double freq, const DeviceProfile& profile,
                         double latency_multiplier = 1.0);

struct IterationTime {
  double compute = 0.0;
  double idle = 0.0;
};

IterationTime iteration_time(const ModelVariant& variant, double freq, const DeviceProfile& profile,
                             const PacingPolicy& pacing);

/// Active power, linear in frequency: power_nominal * freq / f_nominal.
double power_draw(const ModelVariant& variant, double freq, const DeviceProfile& profile);

/// Default power drawn while the CPU idles between inferences.
inline constexpr double kDefaultIdlePower = 1.0;  // W

/// Logging time per iteration, per platform.
OverheadDist logging_overhead_dist(Platform platform);

/// Deterministic source of overhead samples. Draws come from a normal
/// distribution truncated at zero (rejection), generated with a portable
/// Box-Muller transform over mt19937_64 so streams match across toolchains.
class OverheadSampler {
 public:
  explicit OverheadSampler(std::uint64_t seed, bool true_weight_sharing = false, bool logging_enabled = true);

  double shift_overhead(const ModelVariant& to_variant);
  double logging_overhead(Platform platform);
  double sample(const OverheadDist& dist);

 private:
  double standard_normal();

  std::mt19937_64 rng_;
  std::optional<double> spare_;
  bool true_weight_sharing_;
  bool logging_enabled_;
};

void validate(const ModelVariant& v, std::string_view where);
void validate(const PacingPolicy& p, const ModelSuite& suite, const DeviceProfile& profile);

}  // namespace coolshift
