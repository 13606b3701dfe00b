#include "coolshift/workload.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <vector>

#include "coolshift/error.hpp"

namespace coolshift {

std::string_view to_string(Platform p) { return p == Platform::Phone ? "phone" : "pi"; }

double inference_latency(const ModelVariant& variant, double freq, const DeviceProfile& profile,
                         double latency_multiplier) {
  return variant.base_latency * (profile.f_nominal / freq) * latency_multiplier;
}

IterationTime iteration_time(const ModelVariant& variant, double freq, const DeviceProfile& profile,
                             const PacingPolicy& pacing) {
  IterationTime t;
  t.compute = inference_latency(variant, freq, profile, pacing.latency_multiplier);
  if (pacing.target_period) t.idle = std::max(0.0, *pacing.target_period - t.compute);
  return t;
}

double power_draw(const ModelVariant& variant, double freq, const DeviceProfile& profile) {
  return variant.power_nominal * (freq / profile.f_nominal);
}

OverheadDist logging_overhead_dist(Platform platform) {
  // Measured per-iteration logging gaps.
  return platform == Platform::Phone ? OverheadDist{0.023, 0.004} : OverheadDist{0.080, 0.014};
}

OverheadSampler::OverheadSampler(std::uint64_t seed, bool true_weight_sharing, bool logging_enabled)
    : rng_(seed), true_weight_sharing_(true_weight_sharing), logging_enabled_(logging_enabled) {}

double OverheadSampler::standard_normal() {
  if (spare_) {
    const double z = *spare_;
    spare_.reset();
    return z;
  }
  auto uniform = [this] { return static_cast<double>(rng_() >> 11) * 0x1.0p-53; };
  double u1 = uniform();
  while (u1 <= 0.0) u1 = uniform();
  const double u2 = uniform();
  const double r = std::sqrt(-2.0 * std::log(u1));
  const double theta = 2.0 * std::numbers::pi * u2;
  spare_ = r * std::sin(theta);
  return r * std::cos(theta);
}

double OverheadSampler::sample(const OverheadDist& dist) {
  if (dist.stddev <= 0.0) return std::max(0.0, dist.mean);
  if (dist.mean <= -6.0 * dist.stddev) return 0.0;
  for (;;) {
    const double x = dist.mean + dist.stddev * standard_normal();
    if (x >= 0.0) return x;
  }
}

double OverheadSampler::shift_overhead(const ModelVariant& to_variant) {
  if (true_weight_sharing_) return 0.0;
  return sample(to_variant.shift_in);
}

double OverheadSampler::logging_overhead(Platform platform) {
  if (!logging_enabled_) return 0.0;
  return sample(logging_overhead_dist(platform));
}

void validate(const ModelVariant& v, std::string_view where) {
  std::vector<std::string> issues;
  const std::string at(where);
  if (!(v.base_latency > 0.0)) issues.push_back(at + ".base_latency must be > 0");
  if (!(v.power_nominal >= 0.0)) issues.push_back(at + ".power_nominal must be >= 0");
  if (!(v.accuracy >= 0.0 && v.accuracy <= 1.0)) issues.push_back(at + ".accuracy must be in [0,1]");
  if (!(v.shift_in.mean >= 0.0 && v.shift_in.stddev >= 0.0)) issues.push_back(at + ".shift_in must be >= 0");
  if (!issues.empty()) throw ConfigError(std::move(issues));
}

void validate(const PacingPolicy& p, const ModelSuite& suite, const DeviceProfile& profile) {
  std::vector<std::string> issues;
  if (!(p.latency_multiplier >= 1.0)) issues.push_back("pacing.latency_multiplier must be >= 1");
  if (p.target_period) {
    const double longest = std::max(inference_latency(suite.large, profile.f_nominal, profile, p.latency_multiplier),
                                    inference_latency(suite.small, profile.f_nominal, profile, p.latency_multiplier));
    if (!(*p.target_period >= longest - 1e-12)) {
      issues.push_back("pacing.target_period must cover the longest nominal compute latency");
    }
  }
  if (!issues.empty()) throw ConfigError(std::move(issues));
}

}  // namespace coolshift
