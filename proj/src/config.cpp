#include "coolshift/config.hpp"

#include <cmath>
#include <fstream>
#include <initializer_list>
#include <set>
#include <sstream>

#include "json.hpp"

#include "coolshift/error.hpp"
#include "coolshift/presets.hpp"

namespace coolshift {
namespace {

using json = nlohmann::json;

// Collects every problem instead of stopping at the first one.
class Reader {
 public:
  std::vector<std::string> issues;

  void issue(const std::string& where, const std::string& what) { issues.push_back(where + ": " + what); }

  bool object(const json& j, const std::string& where) {
    if (j.is_object()) return true;
    issue(where, "expected an object");
    return false;
  }

  void known_keys(const json& j, const std::string& where, std::initializer_list<const char*> keys) {
    std::set<std::string> allowed(keys.begin(), keys.end());
    for (const auto& [k, _] : j.items())
      if (!allowed.count(k)) issue(where.empty() ? k : where + "." + k, "unknown key");
  }

  void number(const json& j, const char* key, const std::string& where, double& out) {
    if (!j.contains(key)) return;
    const json& v = j.at(key);
    if (!v.is_number() || !std::isfinite(v.get<double>())) {
      issue(path(where, key), "expected a finite number");
      return;
    }
    out = v.get<double>();
  }

  void number(const json& j, const char* key, const std::string& where, std::optional<double>& out) {
    if (!j.contains(key)) return;
    if (j.at(key).is_null()) {
      out.reset();
      return;
    }
    double v = 0.0;
    std::size_t before = issues.size();
    number(j, key, where, v);
    if (issues.size() == before) out = v;
  }

  void boolean(const json& j, const char* key, const std::string& where, bool& out) {
    if (!j.contains(key)) return;
    if (!j.at(key).is_boolean()) {
      issue(path(where, key), "expected true or false");
      return;
    }
    out = j.at(key).get<bool>();
  }

  static std::string path(const std::string& where, const char* key) {
    return where.empty() ? std::string(key) : where + "." + key;
  }
};

void read_overhead(Reader& r, const json& j, const std::string& where, OverheadDist& d) {
  if (!r.object(j, where)) return;
  r.known_keys(j, where, {"mean", "stddev"});
  r.number(j, "mean", where, d.mean);
  r.number(j, "stddev", where, d.stddev);
}

void read_variant(Reader& r, const json& j, const std::string& where, ModelVariant& v) {
  if (!r.object(j, where)) return;
  r.known_keys(j, where, {"name", "base_latency", "power", "accuracy", "shift_in"});
  if (j.contains("name")) {
    if (j["name"].is_string())
      v.name = j["name"].get<std::string>();
    else
      r.issue(where + ".name", "expected a string");
  }
  for (const char* req : {"base_latency", "power", "accuracy"})
    if (!j.contains(req)) r.issue(Reader::path(where, req), "missing");
  r.number(j, "base_latency", where, v.base_latency);
  r.number(j, "power", where, v.power_nominal);
  r.number(j, "accuracy", where, v.accuracy);
  if (j.contains("shift_in")) read_overhead(r, j["shift_in"], where + ".shift_in", v.shift_in);
}

std::optional<GovernorKind> parse_governor(Reader& r, const json& j, const std::string& where) {
  if (j.is_string()) {
    auto s = j.get<std::string>();
    if (s == "phone-drop") return GovernorKind::PhoneDrop;
    if (s == "pi-pin") return GovernorKind::PiPin;
  }
  r.issue(where, "expected \"phone-drop\" or \"pi-pin\"");
  return std::nullopt;
}

std::optional<Platform> parse_platform(Reader& r, const json& j, const std::string& where) {
  if (j.is_string()) {
    auto s = j.get<std::string>();
    if (s == "phone") return Platform::Phone;
    if (s == "pi") return Platform::Pi;
  }
  r.issue(where, "expected \"phone\" or \"pi\"");
  return std::nullopt;
}

void read_profile(Reader& r, const json& j, DeviceProfile& p) {
  const std::string where = "device.profile";
  if (!r.object(j, where)) return;
  r.known_keys(j, where,
               {"heat_capacity", "dissipation", "ambient", "f_nominal", "f_throttled", "t_throttle", "t_resume",
                "governor", "pin_gain"});
  r.number(j, "heat_capacity", where, p.heat_capacity);
  r.number(j, "dissipation", where, p.dissipation);
  r.number(j, "ambient", where, p.ambient);
  r.number(j, "f_nominal", where, p.f_nominal);
  r.number(j, "f_throttled", where, p.f_throttled);
  r.number(j, "t_throttle", where, p.t_throttle);
  r.number(j, "t_resume", where, p.t_resume);
  r.number(j, "pin_gain", where, p.pin_gain);
  if (j.contains("governor"))
    if (auto g = parse_governor(r, j["governor"], where + ".governor")) p.governor = *g;
}

void read_targets(Reader& r, const json& j, CalibrationTargets& t) {
  const std::string where = "device.calibrate";
  if (!r.object(j, where)) return;
  r.known_keys(j, where,
               {"base", "ambient", "t_throttle", "f_nominal", "f_throttled", "governor", "time_to_throttle",
                "large_equilibrium", "sustain_throttle", "latency_rise", "pin_tolerance", "t_lim", "small_margin"});
  if (j.contains("base")) {
    if (!j["base"].is_string()) {
      r.issue(where + ".base", "expected a built-in device name");
    } else {
      try {
        t = builtin_device(j["base"].get<std::string>());
      } catch (const ConfigError& e) {
        r.issue(where + ".base", e.what());
      }
    }
  }
  r.number(j, "ambient", where, t.ambient);
  r.number(j, "t_throttle", where, t.t_throttle);
  r.number(j, "f_nominal", where, t.f_nominal);
  r.number(j, "f_throttled", where, t.f_throttled);
  r.number(j, "time_to_throttle", where, t.time_to_throttle);
  r.number(j, "large_equilibrium", where, t.large_equilibrium);
  r.boolean(j, "sustain_throttle", where, t.sustain_throttle);
  r.number(j, "latency_rise", where, t.latency_rise);
  r.number(j, "pin_tolerance", where, t.pin_tolerance);
  r.number(j, "t_lim", where, t.t_lim);
  r.number(j, "small_margin", where, t.small_margin);
  if (j.contains("governor"))
    if (auto g = parse_governor(r, j["governor"], where + ".governor")) t.governor = *g;
}

void read_controller(Reader& r, const json& j, ControllerConfig& c) {
  const std::string where = "controller";
  if (!r.object(j, where)) return;
  r.known_keys(j, where, {"alpha", "beta", "t_lim", "g_lim", "derivative", "warmup_samples", "literal_init"});
  r.number(j, "alpha", where, c.alpha);
  r.number(j, "beta", where, c.beta);
  r.number(j, "t_lim", where, c.t_lim);
  r.number(j, "g_lim", where, c.g_lim);
  r.boolean(j, "literal_init", where, c.literal_init);
  if (j.contains("derivative")) {
    const json& d = j["derivative"];
    if (d == "per-second")
      c.unit = DerivativeUnit::PerSecond;
    else if (d == "per-sample")
      c.unit = DerivativeUnit::PerSample;
    else
      r.issue("controller.derivative", "expected \"per-second\" or \"per-sample\"");
  }
  if (j.contains("warmup_samples")) {
    const json& w = j["warmup_samples"];
    if (w.is_number_integer() && w.get<long long>() >= 0)
      c.warmup_samples = w.get<int>();
    else
      r.issue("controller.warmup_samples", "expected a non-negative integer");
  }
}

void read_pacing(Reader& r, const json& j, PacingPolicy& p) {
  if (!r.object(j, "pacing")) return;
  r.known_keys(j, "pacing", {"target_period", "latency_multiplier"});
  r.number(j, "target_period", "pacing", p.target_period);
  r.number(j, "latency_multiplier", "pacing", p.latency_multiplier);
}

// Inline suite object, optionally layered over a built-in via "base".
void read_suite_object(Reader& r, const json& j, ModelSuite& s, const SuitePreset** preset) {
  if (!r.object(j, "suite")) return;
  r.known_keys(j, "suite", {"name", "base", "large", "small"});
  if (j.contains("base")) {
    if (!j["base"].is_string()) {
      r.issue("suite.base", "expected a built-in suite name");
    } else {
      try {
        *preset = &builtin_suite(j["base"].get<std::string>());
        s = (*preset)->suite;
      } catch (const ConfigError& e) {
        r.issue("suite.base", e.what());
      }
    }
  }
  if (j.contains("name")) {
    if (j["name"].is_string())
      s.name = j["name"].get<std::string>();
    else
      r.issue("suite.name", "expected a string");
  }
  if (!*preset)
    for (const char* req : {"large", "small"})
      if (!j.contains(req)) r.issue(std::string("suite.") + req, "missing");
  if (j.contains("large")) read_variant(r, j["large"], "suite.large", s.large);
  if (j.contains("small")) read_variant(r, j["small"], "suite.small", s.small);
}

json parse_json(const std::string& text) {
  try {
    return json::parse(text);
  } catch (const json::parse_error& e) {
    throw ConfigError(std::string("invalid JSON: ") + e.what());
  }
}

}  // namespace

ModelSuite parse_suite_json(const std::string& json_text) {
  json j = parse_json(json_text);
  if (j.is_string()) return builtin_suite(j.get<std::string>()).suite;
  Reader r;
  ModelSuite s;
  const SuitePreset* preset = nullptr;
  read_suite_object(r, j, s, &preset);
  if (!r.issues.empty()) throw ConfigError(r.issues);
  return s;
}

LoadedConfig parse_config(const std::string& json_text) {
  json j = parse_json(json_text);
  Reader r;
  LoadedConfig out;
  Scenario& sc = out.scenario;
  if (!r.object(j, "config")) throw ConfigError(r.issues);
  r.known_keys(j, "",
               {"device", "suite", "controller", "pacing", "duration", "seed", "platform", "idle_power", "logging",
                "true_weight_sharing"});

  const SuitePreset* preset = nullptr;
  if (!j.contains("suite")) {
    r.issue("suite", "missing");
  } else if (j["suite"].is_string()) {
    try {
      preset = &builtin_suite(j["suite"].get<std::string>());
      sc.suite = preset->suite;
    } catch (const ConfigError& e) {
      r.issue("suite", e.what());
    }
  } else {
    read_suite_object(r, j["suite"], sc.suite, &preset);
  }
  out.suite_name = sc.suite.name;

  if (preset) {
    sc.pacing = preset->pacing;
    sc.platform = preset->platform;
    sc.controller = preset->controller;
  }

  if (!j.contains("duration")) r.issue("duration", "missing (simulated seconds)");
  r.number(j, "duration", "", sc.duration);
  if (j.contains("seed")) {
    if (j["seed"].is_number_unsigned())
      sc.seed = j["seed"].get<std::uint64_t>();
    else
      r.issue("seed", "expected a non-negative integer");
  }
  if (j.contains("platform"))
    if (auto p = parse_platform(r, j["platform"], "platform")) sc.platform = *p;
  r.number(j, "idle_power", "", sc.idle_power);
  r.boolean(j, "logging", "", sc.logging);
  r.boolean(j, "true_weight_sharing", "", sc.true_weight_sharing);
  if (j.contains("pacing")) read_pacing(r, j["pacing"], sc.pacing);

  if (j.contains("controller")) {
    if (j["controller"].is_null()) {
      sc.controller.reset();
    } else {
      ControllerConfig c = sc.controller.value_or(ControllerConfig{});
      read_controller(r, j["controller"], c);
      sc.controller = c;
    }
  }

  // Device last: calibration needs the final workload.
  std::optional<CalibrationTargets> targets;
  if (!j.contains("device")) {
    if (preset)
      targets = builtin_device(preset->device);
    else
      r.issue("device", "missing (no built-in suite to supply one)");
  } else if (const json& d = j["device"]; d.is_string()) {
    try {
      targets = builtin_device(d.get<std::string>());
    } catch (const ConfigError& e) {
      r.issue("device", e.what());
    }
  } else if (r.object(d, "device")) {
    r.known_keys(d, "device", {"profile", "calibrate"});
    if (d.contains("profile") == d.contains("calibrate")) {
      r.issue("device", "give exactly one of \"profile\" or \"calibrate\"");
    } else if (d.contains("profile")) {
      read_profile(r, d["profile"], sc.profile);
    } else {
      CalibrationTargets t;
      read_targets(r, d["calibrate"], t);
      targets = t;
    }
  }

  if (!r.issues.empty()) throw ConfigError(r.issues);

  if (targets) {
    try {
      out.calibration = calibrate_profile(
          *targets, workload_shape(sc.suite, sc.pacing, sc.platform, sc.idle_power, sc.logging));
    } catch (const CalibrationError& e) {
      throw ConfigError(std::string("device: ") + e.what());
    }
    sc.profile = out.calibration->profile;
  }
  try {
    sc.validate();
  } catch (const ScenarioError& e) {
    throw ConfigError(e.what());
  }
  return out;
}

LoadedConfig load_config(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw IoError(path.string(), "cannot open");
  std::ostringstream ss;
  ss << in.rdbuf();
  return parse_config(ss.str());
}

std::string summary_to_json(const Summary& s, const LoadedConfig* config) {
  json j;
  j["avg_latency"] = s.avg_latency ? json(*s.avg_latency) : json(nullptr);
  j["est_accuracy"] = s.est_accuracy;
  j["n_large"] = s.n_large;
  j["n_small"] = s.n_small;
  j["n_shifts"] = s.n_shifts;
  j["n_throttle_events"] = s.n_throttle_events;
  j["max_temp"] = s.max_temp;
  if (config) {
    const Scenario& sc = config->scenario;
    j["suite"] = config->suite_name;
    j["seed"] = sc.seed;
    j["duration"] = sc.duration;
    j["controller"] = sc.controller ? json{{"t_lim", sc.controller->t_lim}, {"g_lim", sc.controller->g_lim}}
                                    : json(nullptr);
    const DeviceProfile& p = sc.profile;
    j["profile"] = {{"heat_capacity", p.heat_capacity}, {"dissipation", p.dissipation}, {"ambient", p.ambient},
                    {"f_nominal", p.f_nominal},         {"f_throttled", p.f_throttled}, {"t_throttle", p.t_throttle},
                    {"t_resume", p.t_resume},           {"pin_gain", p.pin_gain},
                    {"governor", p.governor == GovernorKind::PhoneDrop ? "phone-drop" : "pi-pin"}};
  }
  return j.dump(2) + "\n";
}

}  // namespace coolshift
