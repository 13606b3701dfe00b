#pragma once

#include <atomic>
#include <chrono>
#include <filesystem>
#include <functional>
#include <memory>
#include <string>

#include "coolshift/controller.hpp"
#include "coolshift/error.hpp"
#include "coolshift/thermal.hpp"
#include "coolshift/trace.hpp"

namespace coolshift {

/// Typed failure of TemperatureSource::read_now.
class ReadError : public Error {
 public:
  enum class Kind { Unreadable, Parse, Timeout, EndOfStream };

  ReadError(Kind kind, const std::string& what) : Error(what), kind_(kind) {}
  Kind kind() const noexcept { return kind_; }

 private:
  Kind kind_;
};

/// Something that can be asked for the current CPU temperature. read_now
/// either returns a sample or throws ReadError; it never blocks without bound.
class TemperatureSource {
 public:
  virtual ~TemperatureSource() = default;
  virtual TemperatureSample read_now() = 0;
};

inline constexpr std::chrono::milliseconds kDefaultReadTimeout{1000};

/// Parses a Linux thermal-zone file (ASCII millidegrees Celsius).
double read_sysfs_temp(const std::filesystem::path& path,
                       std::chrono::milliseconds timeout = kDefaultReadTimeout);

/// Polls a thermal-zone file; timestamps are seconds since construction on
/// the steady clock.
class SysfsSource : public TemperatureSource {
 public:
  explicit SysfsSource(std::filesystem::path path, std::chrono::milliseconds timeout = kDefaultReadTimeout);
  TemperatureSample read_now() override;

 private:
  std::filesystem::path path_;
  std::chrono::milliseconds timeout_;
  std::chrono::steady_clock::time_point start_;
};

/// Replays (sim_time, cpu_temp) pairs of a recorded trace, then reports
/// EndOfStream.
class ReplaySource : public TemperatureSource {
 public:
  explicit ReplaySource(Trace trace);
  static ReplaySource from_csv(const std::filesystem::path& path);
  TemperatureSample read_now() override;

 private:
  Trace trace_;
  size_t next_ = 0;
};

/// Thermal model under a constant power draw, advanced by `period` per read.
class SimulatedSource : public TemperatureSource {
 public:
  SimulatedSource(DeviceProfile profile, double power, double period);
  TemperatureSample read_now() override;

  const DeviceState& device() const noexcept { return state_; }

 private:
  DeviceProfile profile_;
  double power_;
  double period_;
  DeviceState state_;
};

struct LiveOptions {
  double period = 0.25;     // s between polls
  double duration = 60.0;   // s; polling stops once this much (virtual or wall) time has elapsed
  int max_consecutive_errors = 5;
  // Sleep between polls on the steady clock. When false the loop runs as fast
  // as the source answers and time advances by `period` per poll.
  bool realtime = true;
  // Invoked on the polling thread for every shift; must not block.
  std::function<void(Decision, const TraceRecord&)> on_shift;
  const std::atomic<bool>* stop = nullptr;  // interrupt flag, polled once per period
};

/// Drives a Controller from a live temperature source. Failed reads (and
/// samples the controller rejects) are skipped without touching controller
/// state; more than max_consecutive_errors in a row aborts with an Error.
/// Frequency, latency, idle and overhead columns are left blank.
Trace live_run(TemperatureSource& source, const ControllerConfig& config, const LiveOptions& options);

}  // namespace coolshift
