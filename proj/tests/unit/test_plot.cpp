#include <string>

#include "coolshift/error.hpp"
#include "coolshift/plot.hpp"
#include "doctest.h"
#include "synthetic.hpp"
#include "tmpdir.hpp"

using namespace coolshift;

namespace {

int count(const std::string& hay, const std::string& needle) {
  int n = 0;
  for (size_t at = hay.find(needle); at != std::string::npos; at = hay.find(needle, at + 1)) ++n;
  return n;
}

}  // namespace

TEST_CASE("axis ranges pad the data by 5%") {
  AxisRange r = padded_range(20.0, 80.0);
  CHECK(r.lo == doctest::Approx(17.0));
  CHECK(r.hi == doctest::Approx(83.0));
  AxisRange flat = padded_range(5.0, 5.0);
  CHECK(flat.lo < 5.0);
  CHECK(flat.hi > 5.0);
}

TEST_CASE("overlay writes one chart set with both series") {
  TempDir dir;
  Trace a = synth::cycles(2, 50, 30);
  Trace b;
  synth::append_phase(b, Mode::Large, 120, 0.3, false);
  for (auto& r : b) r.freq = 1.8;
  for (auto& r : a) r.freq = 2.86;
  const auto files = emit_plots({{"ds", &a}, {"baseline", &b}}, (dir / "run").string(), {73.0, 77.0});
  REQUIRE(files.size() == 3);
  for (const char* kind : {"temperature", "frequency", "latency"}) {
    const std::string svg = slurp(dir / (std::string("run_") + kind + ".svg"));
    CAPTURE(kind);
    CHECK(svg.rfind("<svg", 0) == 0);
    CHECK(count(svg, "class=\"series\"") == 2);
    CHECK(svg.find("baseline") != std::string::npos);
  }
  const std::string temp = slurp(dir / "run_temperature.svg");
  CHECK(temp.find("stroke-dasharray") != std::string::npos);
}

TEST_CASE("plots are deterministic") {
  TempDir dir;
  Trace a = synth::cycles(1, 20, 20);
  emit_plots({{"a", &a}}, (dir / "x").string());
  emit_plots({{"a", &a}}, (dir / "y").string());
  CHECK(slurp(dir / "x_latency.svg") == slurp(dir / "y_latency.svg"));
}

TEST_CASE("empty traces cannot be plotted") {
  TempDir dir;
  Trace empty;
  CHECK_THROWS_AS(emit_plots({{"e", &empty}}, (dir / "e").string()), AnalysisError);
  Trace a = synth::cycles(1, 5, 5);
  CHECK_THROWS_AS(emit_plots({{"a", &a}}, (dir / "missing" / "p").string()), IoError);
}
