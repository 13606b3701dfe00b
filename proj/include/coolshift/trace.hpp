#pragma once

#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "coolshift/controller.hpp"

namespace coolshift {

/// Bit set of per-row events. Rendered in CSV as '+'-joined names, or "none".
struct EventSet {
  enum Bit : std::uint8_t {
    kShiftToSmall = 1u << 0,
    kShiftToLarge = 1u << 1,
    kThrottleOn = 1u << 2,
    kThrottleOff = 1u << 3,
  };
  std::uint8_t bits = 0;

  bool has(Bit b) const { return (bits & b) != 0; }
  void add(Bit b) { bits = static_cast<std::uint8_t>(bits | b); }
  bool empty() const { return bits == 0; }
  bool operator==(const EventSet&) const = default;

  std::string str() const;
  /// Throws Error on an unknown event name.
  static EventSet parse(const std::string& text);
};

/// One row per inference (or per poll in live mode).
struct TraceRecord {
  double sim_time = 0.0;
  double cpu_temp = 0.0;
  std::optional<double> avg_temp;
  std::optional<double> grad;
  std::optional<double> freq;
  Mode mode = Mode::Large;
  std::optional<double> inference_latency;
  std::optional<double> idle;
  EventSet event;
  std::optional<double> overhead;  // shift-in + logging time of this iteration
};

using Trace = std::vector<TraceRecord>;

inline constexpr const char* kTraceHeader =
    "sim_time,cpu_temp,avg_temp,grad,freq,mode,inference_latency,idle,event,overhead";

/// Floats use 6 significant digits; absent values are blank.
void write_trace_csv(std::ostream& out, const Trace& trace);
Trace read_trace_csv(std::istream& in, const std::string& source_name = "<stream>");

/// Throws IoError with the path on failure.
void emit_trace(const Trace& trace, const std::filesystem::path& path);
Trace load_trace(const std::filesystem::path& path);

}  // namespace coolshift
