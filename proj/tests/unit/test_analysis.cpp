#include <sstream>

#include "coolshift/analysis.hpp"
#include "coolshift/error.hpp"
#include "coolshift/presets.hpp"
#include "doctest.h"
#include "synthetic.hpp"

using namespace coolshift;

namespace {

const ModelSuite& resnet() { return builtin_suite("slimmable-resnet50-phone").suite; }

}  // namespace

TEST_CASE("summarize: all-large trace") {
  Trace t;
  synth::append_phase(t, Mode::Large, 500, 0.205, false);
  const Summary s = summarize(t, resnet());
  CHECK(s.est_accuracy == doctest::Approx(0.768));
  CHECK(*s.avg_latency == doctest::Approx(0.205));
  CHECK(s.n_large == 500);
  CHECK(s.n_small == 0);
  CHECK(s.n_shifts == 0);
}

TEST_CASE("summarize: convex combination of accuracy and latency") {
  Trace t;
  synth::append_phase(t, Mode::Large, 438, 0.205, false);
  synth::append_phase(t, Mode::Small, 562, 0.107, false);
  const Summary s = summarize(t, resnet());
  CHECK(s.est_accuracy == doctest::Approx(0.695).epsilon(0.001 / 0.695));
  CHECK(*s.avg_latency == doctest::Approx(0.150).epsilon(0.001 / 0.150));
}

TEST_CASE("summarize counts the inference on a shift row as the outgoing model") {
  Trace t;
  synth::append_phase(t, Mode::Large, 3, 0.205, true);  // last row: shift, mode SMALL
  const Summary s = summarize(t, resnet());
  CHECK(s.n_large == 3);
  CHECK(s.n_shifts == 1);
  CHECK(inference_mode(t.back()) == Mode::Large);
}

TEST_CASE("summarize rejects an empty trace") { CHECK_THROWS_AS(summarize({}, resnet()), AnalysisError); }

TEST_CASE("summarize counts throttle edges and max temperature") {
  Trace t;
  synth::append_phase(t, Mode::Large, 4, 0.205, false);
  t[1].event.add(EventSet::kThrottleOn);
  t[2].event.add(EventSet::kThrottleOff);
  t[3].event.add(EventSet::kThrottleOn);
  t[2].cpu_temp = 77.5;
  const Summary s = summarize(t, resnet());
  CHECK(s.n_throttle_events == 2);
  CHECK(s.max_temp == 77.5);
}

TEST_CASE("stable iteration accuracy over complete cycles") {
  const Trace t = synth::cycles(2, 600, 400);
  CHECK(stable_iteration_accuracy(t, resnet(), 2) == doctest::Approx(0.4 * 0.768 + 0.6 * 0.638));
  // Uneven cycles: only the first n count.
  Trace mixed = synth::cycles(1, 600, 400);
  synth::append_phase(mixed, Mode::Small, 100, 0.107, true);
  synth::append_phase(mixed, Mode::Large, 900, 0.205, true);
  CHECK(stable_iteration_accuracy(mixed, resnet(), 1) == doctest::Approx(0.690));
  CHECK(stable_iteration_accuracy(mixed, resnet(), 2) == doctest::Approx((1300 * 0.768 + 700 * 0.638) / 2000));
}

TEST_CASE("stable iteration accuracy names the cycles found") {
  const Trace t = synth::cycles(1, 600, 400);
  CHECK_THROWS_WITH_AS(stable_iteration_accuracy(t, resnet(), 2), doctest::Contains("found 1"),
                       InsufficientCyclesError);
  CHECK_THROWS_AS(stable_iteration_accuracy(Trace{}, resnet(), 1), InsufficientCyclesError);
}

TEST_CASE("single-cell grid equals the direct measurement") {
  Scenario s = builtin_scenario("slimmable-resnet50-phone", true, kAblationDuration);
  const AblationGrid g = ablation_grid(s, {73.0}, {-0.07});
  REQUIRE(g.cells.size() == 1);
  REQUIRE(g.cells[0].size() == 1);
  REQUIRE(g.at(0, 0).accuracy.has_value());
  CHECK(*g.at(0, 0).accuracy == stable_iteration_accuracy(run_scenario(s), s.suite, kAblationIterations));
}

TEST_CASE("4x4 grid: row trend and corner ordering") {
  const Scenario s = builtin_scenario("slimmable-resnet50-phone", true);
  const std::vector<double> ts{75, 73, 70, 65};
  const std::vector<double> gs{-0.005, -0.01, -0.07, -0.10};
  const AblationGrid g = ablation_grid(s, ts, gs);
  REQUIRE(g.cells.size() == 4);
  for (size_t gi = 0; gi < 4; ++gi) {
    REQUIRE(g.cells[gi].size() == 4);
    for (size_t ti = 0; ti < 4; ++ti) REQUIRE(g.at(gi, ti).accuracy.has_value());
    for (size_t ti = 1; ti < 4; ++ti) CHECK(*g.at(gi, ti).accuracy <= *g.at(gi, ti - 1).accuracy);
  }
  CHECK(*g.at(3, 0).accuracy > *g.at(0, 3).accuracy);
  // Threads do not change results.
  const AblationGrid serial = ablation_grid(s, ts, gs, kAblationDuration, 1);
  for (size_t gi = 0; gi < 4; ++gi)
    for (size_t ti = 0; ti < 4; ++ti) CHECK(*serial.at(gi, ti).accuracy == *g.at(gi, ti).accuracy);
}

TEST_CASE("short cells record insufficient cycles without aborting") {
  const Scenario s = builtin_scenario("slimmable-resnet50-phone", true);
  const AblationGrid g = ablation_grid(s, {75.0, 73.0}, {-0.07}, 60.0);
  for (const auto& cell : g.cells[0]) {
    CHECK_FALSE(cell.accuracy.has_value());
    CHECK(cell.error == "insufficient-cycles");
  }
  std::ostringstream out;
  write_ablation_csv(out, g);
  CHECK(out.str() == "g_lim\\t_lim,75,73\n-0.07,insufficient-cycles,insufficient-cycles\n");
  CHECK(render_ablation_table(g).find("insufficient-cycles") != std::string::npos);
}
