// Hand-rolled generators for the property tests. Every case is derived from
// a printed seed so failures can be replayed.
#pragma once

#include <cstdint>
#include <random>
#include <vector>

#include "coolshift/controller.hpp"

namespace gen {

inline constexpr int kCases = 1000;

class Rng {
 public:
  explicit Rng(std::uint64_t seed) : eng_(seed) {}
  double uniform(double lo, double hi) { return std::uniform_real_distribution<double>(lo, hi)(eng_); }
  int integer(int lo, int hi) { return std::uniform_int_distribution<int>(lo, hi)(eng_); }
  bool coin(double p = 0.5) { return uniform(0.0, 1.0) < p; }
  double normal(double sd) { return std::normal_distribution<double>(0.0, sd)(eng_); }

 private:
  std::mt19937_64 eng_;
};

inline coolshift::ControllerConfig controller_config(Rng& r) {
  coolshift::ControllerConfig c;
  c.alpha = r.uniform(0.5, 0.999);
  c.beta = r.uniform(0.5, 0.999);
  c.t_lim = r.uniform(55.0, 80.0);
  c.g_lim = r.uniform(-0.2, 0.0);
  c.warmup_samples = r.integer(2, 150);
  c.unit = r.coin(0.8) ? coolshift::DerivativeUnit::PerSecond : coolshift::DerivativeUnit::PerSample;
  return c;
}

// Piecewise heating/cooling phases with sensor noise, strictly increasing
// timestamps. Temperatures wander across typical trip points.
inline std::vector<coolshift::TemperatureSample> temperature_walk(Rng& r, int min_len = 300, int max_len = 3000) {
  const int n = r.integer(min_len, max_len);
  std::vector<coolshift::TemperatureSample> out;
  out.reserve(n);
  double t = r.uniform(0.0, 10.0);
  double temp = r.uniform(30.0, 80.0);
  double slope = 0.0;
  int phase_left = 0;
  for (int i = 0; i < n; ++i) {
    if (phase_left-- <= 0) {
      slope = r.uniform(-0.3, 0.3);
      phase_left = r.integer(20, 400);
    }
    const double dt = r.uniform(0.05, 0.5);
    t += dt;
    temp += slope * dt + r.normal(0.05);
    if (temp < 25.0 || temp > 95.0) slope = -slope;
    out.push_back({t, temp});
  }
  return out;
}

}  // namespace gen
