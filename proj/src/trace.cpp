#include "coolshift/trace.hpp"

#include <cerrno>
#include <cstdio>
#include <cstdlib>
#include <cstring>
#include <fstream>
#include <istream>
#include <ostream>
#include <sstream>

#include "coolshift/error.hpp"

namespace coolshift {
namespace {

constexpr std::pair<EventSet::Bit, const char*> kEventNames[] = {
    {EventSet::kShiftToSmall, "shift_to_small"},
    {EventSet::kShiftToLarge, "shift_to_large"},
    {EventSet::kThrottleOn, "throttle_on"},
    {EventSet::kThrottleOff, "throttle_off"},
};

void put_float(std::ostream& out, double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.6g", v);
  out << buf;
}

void put_opt(std::ostream& out, const std::optional<double>& v) {
  if (v) put_float(out, *v);
}

std::vector<std::string> split_csv_line(const std::string& line) {
  std::vector<std::string> cells;
  std::string cell;
  std::istringstream ss(line);
  while (std::getline(ss, cell, ',')) cells.push_back(cell);
  if (!line.empty() && line.back() == ',') cells.emplace_back();
  return cells;
}

double parse_double(const std::string& text, const std::string& where) {
  if (text.empty()) throw Error(where + ": empty numeric field");
  errno = 0;
  char* end = nullptr;
  const double v = std::strtod(text.c_str(), &end);
  if (errno != 0 || end != text.c_str() + text.size()) throw Error(where + ": not a number: '" + text + "'");
  return v;
}

std::optional<double> parse_opt(const std::string& text, const std::string& where) {
  if (text.empty()) return std::nullopt;
  return parse_double(text, where);
}

}  // namespace

std::string EventSet::str() const {
  if (bits == 0) return "none";
  std::string out;
  for (const auto& [bit, name] : kEventNames) {
    if (has(bit)) {
      if (!out.empty()) out += '+';
      out += name;
    }
  }
  return out;
}

EventSet EventSet::parse(const std::string& text) {
  EventSet e;
  if (text == "none" || text.empty()) return e;
  std::istringstream ss(text);
  std::string token;
  while (std::getline(ss, token, '+')) {
    bool found = false;
    for (const auto& [bit, name] : kEventNames) {
      if (token == name) {
        e.add(bit);
        found = true;
      }
    }
    if (!found) throw Error("unknown trace event '" + token + "'");
  }
  return e;
}

void write_trace_csv(std::ostream& out, const Trace& trace) {
  out << kTraceHeader << '\n';
  for (const auto& r : trace) {
    put_float(out, r.sim_time);
    out << ',';
    put_float(out, r.cpu_temp);
    out << ',';
    put_opt(out, r.avg_temp);
    out << ',';
    put_opt(out, r.grad);
    out << ',';
    put_opt(out, r.freq);
    out << ',' << to_string(r.mode) << ',';
    put_opt(out, r.inference_latency);
    out << ',';
    put_opt(out, r.idle);
    out << ',' << r.event.str() << ',';
    put_opt(out, r.overhead);
    out << '\n';
  }
}

Trace read_trace_csv(std::istream& in, const std::string& source_name) {
  std::string line;
  if (!std::getline(in, line)) throw Error(source_name + ": empty trace file");
  if (!line.empty() && line.back() == '\r') line.pop_back();
  if (line != kTraceHeader) throw Error(source_name + ":1: unexpected trace header");
  Trace trace;
  int lineno = 1;
  while (std::getline(in, line)) {
    ++lineno;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty()) continue;
    const std::string where = source_name + ":" + std::to_string(lineno);
    const auto c = split_csv_line(line);
    if (c.size() != 10) throw Error(where + ": expected 10 columns, got " + std::to_string(c.size()));
    TraceRecord r;
    r.sim_time = parse_double(c[0], where);
    r.cpu_temp = parse_double(c[1], where);
    r.avg_temp = parse_opt(c[2], where);
    r.grad = parse_opt(c[3], where);
    r.freq = parse_opt(c[4], where);
    if (c[5] == "LARGE") {
      r.mode = Mode::Large;
    } else if (c[5] == "SMALL") {
      r.mode = Mode::Small;
    } else {
      throw Error(where + ": unknown mode '" + c[5] + "'");
    }
    r.inference_latency = parse_opt(c[6], where);
    r.idle = parse_opt(c[7], where);
    try {
      r.event = EventSet::parse(c[8]);
    } catch (const Error& e) {
      throw Error(where + ": " + e.what());
    }
    r.overhead = parse_opt(c[9], where);
    trace.push_back(r);
  }
  return trace;
}

void emit_trace(const Trace& trace, const std::filesystem::path& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw IoError(path.string(), std::string("cannot open for writing: ") + std::strerror(errno));
  write_trace_csv(out, trace);
  out.flush();
  if (!out) throw IoError(path.string(), "write failed");
}

Trace load_trace(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError(path.string(), std::string("cannot open for reading: ") + std::strerror(errno));
  return read_trace_csv(in, path.string());
}

}  // namespace coolshift
