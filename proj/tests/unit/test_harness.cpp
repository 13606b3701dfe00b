#include <cmath>
#include <sstream>

#include "coolshift/analysis.hpp"
#include "coolshift/error.hpp"
#include "coolshift/harness.hpp"
#include "coolshift/presets.hpp"
#include "doctest.h"

using namespace coolshift;

namespace {

double mean_latency(const Trace& t, size_t from, size_t to) {
  double sum = 0.0;
  for (size_t i = from; i < to; ++i) sum += *t[i].inference_latency;
  return sum / double(to - from);
}

std::string csv(const Trace& t) {
  std::ostringstream out;
  write_trace_csv(out, t);
  return out.str();
}

}  // namespace

TEST_CASE("baseline on the phone profile throttles and slows down") {
  const Scenario s = builtin_scenario("slimmable-resnet50-phone", false);
  const Trace t = run_scenario(s);
  size_t first_on = t.size();
  for (size_t i = 0; i < t.size(); ++i)
    if (t[i].event.has(EventSet::kThrottleOn)) {
      first_on = i;
      break;
    }
  REQUIRE(first_on < t.size());
  CHECK(mean_latency(t, first_on + 1, t.size()) > mean_latency(t, 0, first_on));
  for (const auto& r : t) CHECK(r.mode == Mode::Large);
}

TEST_CASE("dynamic shifting on the phone profile avoids throttling") {
  const Scenario s = builtin_scenario("slimmable-resnet50-phone", true);
  const Summary sum = summarize(run_scenario(s), s.suite);
  CHECK(sum.n_throttle_events == 0);
  CHECK(sum.n_shifts > 0);
  CHECK(sum.max_temp < s.profile.t_throttle);
}

TEST_CASE("scenario validation happens before the loop") {
  Scenario s = builtin_scenario("slimmable-resnet50-phone", true, 60.0);
  s.duration = 0.0;
  CHECK_THROWS_AS(run_scenario(s), ScenarioError);
  s.duration = 60.0;
  s.profile.t_resume = s.profile.t_throttle + 1.0;
  CHECK_THROWS_AS(run_scenario(s), ScenarioError);
  s = builtin_scenario("slimmable-resnet50-phone", true, 60.0);
  s.pacing.target_period = 0.01;
  CHECK_THROWS_AS(run_scenario(s), ScenarioError);
}

TEST_CASE("wall time is conserved row by row") {
  for (const char* name : {"slimmable-resnet50-phone", "dynabert-phone", "slimmable-resnet50-pi", "dynabert-pi"}) {
    const Scenario s = builtin_scenario(name, true, 1800.0, 3);
    const Trace t = run_scenario(s);
    double prev = 0.0;
    for (const auto& r : t) {
      const double spent = *r.overhead + *r.inference_latency + *r.idle;
      CAPTURE(name);
      REQUIRE(std::abs((r.sim_time - prev) - spent) < 1e-9);
      prev = r.sim_time;
    }
    CHECK(t.back().sim_time >= s.duration);
    CHECK(t[t.size() - 2].sim_time < s.duration);
  }
}

TEST_CASE("same scenario and seed give identical traces; seeds matter") {
  const Scenario s = builtin_scenario("dynabert-pi", true, 900.0, 11);
  CHECK(csv(run_scenario(s)) == csv(run_scenario(s)));
  Scenario other = s;
  other.seed = 12;
  CHECK(csv(run_scenario(other)) != csv(run_scenario(s)));
}

TEST_CASE("shift overhead is paid on the row after the decision") {
  Scenario s = builtin_scenario("slimmable-resnet50-phone", true, 1200.0);
  s.logging = false;
  const Trace t = run_scenario(s);
  int seen = 0;
  for (size_t i = 0; i + 1 < t.size(); ++i) {
    if (!(t[i].event.has(EventSet::kShiftToSmall) || t[i].event.has(EventSet::kShiftToLarge))) continue;
    CHECK(*t[i + 1].overhead > 0.0);
    ++seen;
  }
  CHECK(seen > 0);
  CHECK(*t.front().overhead == 0.0);
}

TEST_CASE("true weight sharing removes shift cost") {
  Scenario s = builtin_scenario("slimmable-resnet50-phone", true, 1200.0);
  s.logging = false;
  s.true_weight_sharing = true;
  for (const auto& r : run_scenario(s)) CHECK(*r.overhead == 0.0);
}

TEST_CASE("mode column reflects the decision on that row") {
  const Scenario s = builtin_scenario("slimmable-resnet50-phone", true, 1500.0);
  const Trace t = run_scenario(s);
  Mode m = Mode::Large;
  for (const auto& r : t) {
    if (r.event.has(EventSet::kShiftToSmall)) m = Mode::Small;
    if (r.event.has(EventSet::kShiftToLarge)) m = Mode::Large;
    REQUIRE(r.mode == m);
  }
}
