#include "coolshift/sensor.hpp"

#include <fcntl.h>
#include <poll.h>
#include <unistd.h>

#include <cerrno>
#include <charconv>
#include <cstring>
#include <thread>

namespace coolshift {
namespace {

class FdGuard {
 public:
  explicit FdGuard(int fd) : fd_(fd) {}
  ~FdGuard() {
    if (fd_ >= 0) ::close(fd_);
  }
  FdGuard(const FdGuard&) = delete;
  FdGuard& operator=(const FdGuard&) = delete;
  int get() const { return fd_; }

 private:
  int fd_;
};

}  // namespace

double read_sysfs_temp(const std::filesystem::path& path, std::chrono::milliseconds timeout) {
  FdGuard fd(::open(path.c_str(), O_RDONLY | O_NONBLOCK | O_CLOEXEC));
  if (fd.get() < 0) {
    throw ReadError(ReadError::Kind::Unreadable, path.string() + ": " + std::strerror(errno));
  }
  pollfd pfd{fd.get(), POLLIN, 0};
  const int ready = ::poll(&pfd, 1, static_cast<int>(timeout.count()));
  if (ready == 0) throw ReadError(ReadError::Kind::Timeout, path.string() + ": read timed out");
  if (ready < 0) throw ReadError(ReadError::Kind::Unreadable, path.string() + ": " + std::strerror(errno));

  char buf[64];
  const ssize_t n = ::read(fd.get(), buf, sizeof buf - 1);
  if (n < 0) throw ReadError(ReadError::Kind::Unreadable, path.string() + ": " + std::strerror(errno));
  std::string_view text(buf, static_cast<size_t>(n));
  while (!text.empty() && (text.back() == '\n' || text.back() == ' ' || text.back() == '\r')) text.remove_suffix(1);
  while (!text.empty() && text.front() == ' ') text.remove_prefix(1);

  long long millideg = 0;
  const auto [end, ec] = std::from_chars(text.data(), text.data() + text.size(), millideg);
  if (text.empty() || ec != std::errc{} || end != text.data() + text.size()) {
    throw ReadError(ReadError::Kind::Parse, path.string() + ": not a millidegree integer: '" + std::string(text) + "'");
  }
  return static_cast<double>(millideg) / 1000.0;
}

SysfsSource::SysfsSource(std::filesystem::path path, std::chrono::milliseconds timeout)
    : path_(std::move(path)), timeout_(timeout), start_(std::chrono::steady_clock::now()) {}

TemperatureSample SysfsSource::read_now() {
  const double celsius = read_sysfs_temp(path_, timeout_);
  const std::chrono::duration<double> elapsed = std::chrono::steady_clock::now() - start_;
  return {elapsed.count(), celsius};
}

ReplaySource::ReplaySource(Trace trace) : trace_(std::move(trace)) {}

ReplaySource ReplaySource::from_csv(const std::filesystem::path& path) { return ReplaySource(load_trace(path)); }

TemperatureSample ReplaySource::read_now() {
  if (next_ >= trace_.size()) throw ReadError(ReadError::Kind::EndOfStream, "replay exhausted");
  const auto& r = trace_[next_++];
  return {r.sim_time, r.cpu_temp};
}

SimulatedSource::SimulatedSource(DeviceProfile profile, double power, double period)
    : profile_(profile), power_(power), period_(period), state_(initial_state(profile_)) {
  profile_.validate();
}

TemperatureSample SimulatedSource::read_now() {
  const PowerFn p = [this](double) { return power_; };
  state_ = advance(state_, profile_, p, period_);
  return {state_.sim_time, state_.temp};
}

Trace live_run(TemperatureSource& source, const ControllerConfig& config, const LiveOptions& options) {
  if (!(options.period > 0.0)) throw ConfigError("live period must be > 0");
  Controller controller(config);
  Trace trace;
  int consecutive_errors = 0;
  std::string last_error;

  const auto start = std::chrono::steady_clock::now();
  const auto period = std::chrono::duration_cast<std::chrono::steady_clock::duration>(
      std::chrono::duration<double>(options.period));
  for (long poll = 0;; ++poll) {
    if (options.stop && options.stop->load()) break;
    const double elapsed = options.realtime
                               ? std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count()
                               : poll * options.period;
    if (elapsed >= options.duration) break;

    try {
      const TemperatureSample sample = source.read_now();
      const Decision d = controller.observe(sample);
      consecutive_errors = 0;

      TraceRecord row;
      row.sim_time = sample.time_s;
      row.cpu_temp = sample.celsius;
      row.avg_temp = controller.last_avg_temp();
      row.grad = controller.last_grad();
      row.mode = controller.mode();
      if (d == Decision::ShiftToSmall) row.event.add(EventSet::kShiftToSmall);
      if (d == Decision::ShiftToLarge) row.event.add(EventSet::kShiftToLarge);
      trace.push_back(row);
      if (d != Decision::Stay && options.on_shift) options.on_shift(d, row);
    } catch (const ReadError& e) {
      if (e.kind() == ReadError::Kind::EndOfStream) break;
      last_error = e.what();
      ++consecutive_errors;
    } catch (const SampleError& e) {
      last_error = e.what();
      ++consecutive_errors;
    }
    if (consecutive_errors >= options.max_consecutive_errors) {
      throw Error("live run aborted after " + std::to_string(consecutive_errors) +
                  " consecutive read errors; last: " + last_error);
    }
    if (options.realtime) std::this_thread::sleep_until(start + (poll + 1) * period);
  }
  return trace;
}

}  // namespace coolshift
