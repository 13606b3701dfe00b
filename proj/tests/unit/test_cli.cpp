// Drives the built command-line tool end to end.
#include <algorithm>
#include <cstdlib>
#include <string>
#include <sys/wait.h>

#include "doctest.h"
#include "tmpdir.hpp"

namespace {

const std::string kData = COOLSHIFT_DATA_DIR;

struct Result {
  int code = -1;
  std::string out;
};

Result cli(const std::string& args, const TempDir& dir) {
  const auto log = dir / "cli.log";
  const std::string cmd = std::string(COOLSHIFT_CLI) + " " + args + " > " + log.string() + " 2>&1";
  const int status = std::system(cmd.c_str());
  return {WIFEXITED(status) ? WEXITSTATUS(status) : -1, slurp(log)};
}

}  // namespace

TEST_CASE("run: shifting prevents throttling, baseline throttles") {
  TempDir dir;
  const std::string cfg = kData + "/configs/phone_resnet.json";
  Result ds = cli("run --config " + cfg + " --out " + (dir / "ds.csv").string(), dir);
  REQUIRE(ds.code == 0);
  CHECK(slurp(dir / "ds.csv.summary.json").find("\"n_throttle_events\": 0") != std::string::npos);

  Result bl = cli("run --config " + cfg + " --out " + (dir / "bl.csv").string() + " --baseline", dir);
  REQUIRE(bl.code == 0);
  CHECK(slurp(dir / "bl.csv.summary.json").find("\"n_throttle_events\": 0") == std::string::npos);
  CHECK(slurp(dir / "bl.csv.summary.json").find("\"n_shifts\": 0") != std::string::npos);
}

TEST_CASE("run is byte-for-byte reproducible") {
  TempDir dir;
  const std::string cfg = kData + "/configs/pi_dynabert.json";
  REQUIRE(cli("run --config " + cfg + " --out " + (dir / "a.csv").string(), dir).code == 0);
  REQUIRE(cli("run --config " + cfg + " --out " + (dir / "b.csv").string(), dir).code == 0);
  CHECK(slurp(dir / "a.csv") == slurp(dir / "b.csv"));
  CHECK(slurp(dir / "a.csv.summary.json") == slurp(dir / "b.csv.summary.json"));
}

TEST_CASE("run: flags reach the scenario") {
  TempDir dir;
  const std::string cfg = kData + "/configs/phone_resnet.json";
  REQUIRE(cli("run --config " + cfg + " --out " + (dir / "t.csv").string() + " --true-weight-sharing --literal-init",
              dir)
              .code == 0);
  CHECK(slurp(dir / "t.csv").find("sim_time,cpu_temp") == 0);
}

TEST_CASE("run: a config without duration fails naming the key") {
  TempDir dir;
  const auto cfg = dir.write("c.json", R"({"suite": "dynabert-pi", "bogus": 1})");
  Result r = cli("run --config " + cfg.string() + " --out " + (dir / "x.csv").string(), dir);
  CHECK(r.code != 0);
  CHECK(r.out.find("duration") != std::string::npos);
  CHECK(r.out.find("bogus") != std::string::npos);
}

TEST_CASE("unknown flags and missing subcommands are rejected") {
  TempDir dir;
  const std::string cfg = kData + "/configs/phone_resnet.json";
  CHECK(cli("run --config " + cfg + " --out " + (dir / "x.csv").string() + " --fast", dir).code != 0);
  CHECK(cli("", dir).code != 0);
  Result help = cli("run --help", dir);
  CHECK(help.code == 0);
  for (const char* flag : {"--config", "--out", "--baseline", "--true-weight-sharing", "--literal-init"})
    CHECK(help.out.find(flag) != std::string::npos);
}

TEST_CASE("ablate: grid shape and insufficient cycles") {
  TempDir dir;
  const std::string cfg = kData + "/configs/phone_resnet.json";
  REQUIRE(cli("ablate --config " + cfg + " --tlims 75,73,70,65 --glims -0.005,-0.01,-0.07,-0.10 --out " +
                  (dir / "g.csv").string(),
              dir)
              .code == 0);
  const std::string grid = slurp(dir / "g.csv");
  CHECK(grid.rfind("g_lim\\t_lim,75,73,70,65\n", 0) == 0);
  CHECK(std::count(grid.begin(), grid.end(), '\n') == 5);
  CHECK_FALSE(slurp(dir / "g.csv.txt").empty());

  REQUIRE(cli("ablate --config " + cfg + " --tlims 73 --glims -0.07 --out " + (dir / "one.csv").string(), dir).code ==
          0);
  const std::string one = slurp(dir / "one.csv");
  CHECK(std::count(one.begin(), one.end(), '\n') == 2);

  REQUIRE(cli("ablate --config " + cfg + " --tlims 73 --glims -0.07 --duration 60 --out " +
                  (dir / "short.csv").string(),
              dir)
              .code == 0);
  CHECK(slurp(dir / "short.csv").find("insufficient-cycles") != std::string::npos);
  CHECK(cli("ablate --config " + cfg + " --tlims 73,x --glims -0.07 --out " + (dir / "bad.csv").string(), dir).code !=
        0);
}

TEST_CASE("summarize and plot on recorded traces") {
  TempDir dir;
  const auto trace = dir.write("large.csv",
                               "sim_time,cpu_temp,avg_temp,grad,freq,mode,inference_latency,idle,event,overhead\n"
                               "0.2,40,,,2.86,LARGE,0.205,0,none,0\n"
                               "0.4,41,,,2.86,LARGE,0.205,0,none,0\n");
  Result s = cli("summarize --trace " + trace.string() + " --suite slimmable-resnet50-phone", dir);
  REQUIRE(s.code == 0);
  CHECK(s.out.find("\"est_accuracy\": 0.768") != std::string::npos);

  const auto other = dir.write("other.csv", slurp(trace));
  Result p = cli("plot --trace " + trace.string() + " --overlay " + other.string() + " --out " +
                     (dir / "fig").string(),
                 dir);
  REQUIRE(p.code == 0);
  const std::string svg = slurp(dir / "fig_temperature.svg");
  size_t n = 0;
  for (size_t at = svg.find("class=\"series\""); at != std::string::npos; at = svg.find("class=\"series\"", at + 1))
    ++n;
  CHECK(n == 2);

  const auto broken = dir.write("broken.csv", "nope\n");
  Result e = cli("summarize --trace " + broken.string() + " --suite dynabert-pi", dir);
  CHECK(e.code != 0);
  CHECK(e.out.find("broken.csv:1") != std::string::npos);
}

TEST_CASE("live: missing zone fails immediately, a real file is polled") {
  TempDir dir;
  Result r = cli("live --zone " + (dir / "thermal_zone9" / "temp").string() + " --duration 5", dir);
  CHECK(r.code != 0);
  CHECK(r.out.find("thermal_zone9") != std::string::npos);

  const auto zone = dir.write("temp", "60000\n");
  Result ok = cli("live --zone " + zone.string() + " --period 0.05 --duration 0.3 --out " +
                      (dir / "live.csv").string(),
                  dir);
  CHECK(ok.code == 0);
  CHECK(slurp(dir / "live.csv").find(",60,") != std::string::npos);
}
