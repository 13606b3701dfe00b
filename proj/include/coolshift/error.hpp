#pragma once

#include <stdexcept>
#include <string>
#include <vector>

namespace coolshift {

/// Base class for every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Invalid configuration. Carries one entry per offending key so callers can
/// report all of them at once.
class ConfigError : public Error {
 public:
  explicit ConfigError(std::vector<std::string> issues);
  explicit ConfigError(const std::string& issue) : ConfigError(std::vector<std::string>{issue}) {}

  const std::vector<std::string>& issues() const noexcept { return issues_; }

 private:
  std::vector<std::string> issues_;
};

/// A temperature sample the controller refuses (non-finite, below absolute
/// zero, or out of time order). The controller state is left untouched.
class SampleError : public Error {
 public:
  using Error::Error;
};

class CalibrationError : public Error {
 public:
  using Error::Error;
};

class ScenarioError : public Error {
 public:
  using Error::Error;
};

class AnalysisError : public Error {
 public:
  using Error::Error;
};

/// Raised when a trace holds fewer complete shift cycles than requested.
class InsufficientCyclesError : public AnalysisError {
 public:
  InsufficientCyclesError(int found, int required);

  int found() const noexcept { return found_; }
  int required() const noexcept { return required_; }

 private:
  int found_;
  int required_;
};

class IoError : public Error {
 public:
  IoError(const std::string& path, const std::string& what);

  const std::string& path() const noexcept { return path_; }

 private:
  std::string path_;
};

}  // namespace coolshift
