#include <atomic>

#include "coolshift/error.hpp"
#include "coolshift/harness.hpp"
#include "coolshift/presets.hpp"
#include "coolshift/sensor.hpp"
#include "doctest.h"
#include "tmpdir.hpp"

using namespace coolshift;

namespace {

class FailingSource : public TemperatureSource {
 public:
  int reads = 0;
  TemperatureSample read_now() override {
    ++reads;
    throw ReadError(ReadError::Kind::Unreadable, "sensor gone");
  }
};

class ConstantSource : public TemperatureSource {
 public:
  explicit ConstantSource(double c) : c_(c) {}
  TemperatureSample read_now() override { return {t_ += 0.25, c_}; }

 private:
  double c_;
  double t_ = 0.0;
};

LiveOptions offline(double duration) {
  LiveOptions o;
  o.realtime = false;
  o.duration = duration;
  return o;
}

std::vector<Decision> decisions(const Trace& t) {
  std::vector<Decision> out;
  for (const auto& r : t) {
    if (r.event.has(EventSet::kShiftToSmall))
      out.push_back(Decision::ShiftToSmall);
    else if (r.event.has(EventSet::kShiftToLarge))
      out.push_back(Decision::ShiftToLarge);
    else
      out.push_back(Decision::Stay);
  }
  return out;
}

}  // namespace

TEST_CASE("sysfs millidegree parsing") {
  TempDir dir;
  CHECK(read_sysfs_temp(dir.write("a", "73000\n")) == 73.0);
  CHECK(read_sysfs_temp(dir.write("b", "45500")) == 45.5);
  CHECK(read_sysfs_temp(dir.write("c", "-1500\n")) == -1.5);
  try {
    read_sysfs_temp(dir.write("d", "abc"));
    FAIL("expected ReadError");
  } catch (const ReadError& e) {
    CHECK(e.kind() == ReadError::Kind::Parse);
  }
  try {
    read_sysfs_temp(dir / "missing");
    FAIL("expected ReadError");
  } catch (const ReadError& e) {
    CHECK(e.kind() == ReadError::Kind::Unreadable);
  }
  CHECK_THROWS_AS(read_sysfs_temp(dir.write("e", "")), ReadError);
}

TEST_CASE("sysfs source reads through the file") {
  TempDir dir;
  SysfsSource src(dir.write("zone", "61250\n"));
  const TemperatureSample a = src.read_now();
  const TemperatureSample b = src.read_now();
  CHECK(a.celsius == 61.25);
  CHECK(b.time_s >= a.time_s);
}

TEST_CASE("persistent read errors abort the run") {
  FailingSource src;
  ControllerConfig cfg;
  CHECK_THROWS_WITH_AS(live_run(src, cfg, offline(100.0)), doctest::Contains("sensor gone"), Error);
  CHECK(src.reads == 5);
}

TEST_CASE("steady readings below t_lim never shift") {
  ConstantSource src(60.0);
  ControllerConfig cfg;
  int shifts = 0;
  LiveOptions o = offline(30.0);
  o.on_shift = [&](Decision, const TraceRecord&) { ++shifts; };
  const Trace t = live_run(src, cfg, o);
  CHECK(t.size() == 120);
  CHECK(shifts == 0);
}

TEST_CASE("stop flag ends the run") {
  ConstantSource src(60.0);
  std::atomic<bool> stop{true};
  LiveOptions o = offline(30.0);
  o.stop = &stop;
  CHECK(live_run(src, ControllerConfig{}, o).empty());
}

TEST_CASE("simulated source heats toward equilibrium") {
  DeviceProfile p;
  SimulatedSource src(p, 10.0, 1.0);
  double last = p.ambient;
  for (int i = 0; i < 50; ++i) {
    const TemperatureSample s = src.read_now();
    CHECK(s.celsius > last);
    last = s.celsius;
  }
  CHECK(src.device().sim_time == doctest::Approx(50.0));
}

TEST_CASE("replay of a recorded run reproduces direct feeding") {
  TempDir dir;
  const Scenario s = builtin_scenario("slimmable-resnet50-phone", false, 1800.0);
  const auto path = dir / "baseline.csv";
  emit_trace(run_scenario(s), path);
  const Trace recorded = load_trace(path);

  ControllerConfig cfg;
  cfg.t_lim = 73.0;
  Controller direct(cfg);
  std::vector<Decision> want;
  for (const auto& r : recorded) want.push_back(direct.observe({r.sim_time, r.cpu_temp}));

  ReplaySource replay = ReplaySource::from_csv(path);
  const Trace live = live_run(replay, cfg, offline(1e9));
  REQUIRE(live.size() == recorded.size());
  CHECK(decisions(live) == want);
}
