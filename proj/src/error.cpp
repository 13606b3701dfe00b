#include "coolshift/error.hpp"

namespace coolshift {
namespace {

std::string join_issues(const std::vector<std::string>& issues) {
  std::string out = "invalid configuration";
  for (size_t i = 0; i < issues.size(); ++i) {
    out += (i == 0 ? ": " : "; ");
    out += issues[i];
  }
  return out;
}

}  // namespace

ConfigError::ConfigError(std::vector<std::string> issues)
    : Error(join_issues(issues)), issues_(std::move(issues)) {}

InsufficientCyclesError::InsufficientCyclesError(int found, int required)
    : AnalysisError("insufficient-cycles: found " + std::to_string(found) +
                    " complete shift cycles, need " + std::to_string(required)),
      found_(found),
      required_(required) {}

IoError::IoError(const std::string& path, const std::string& what)
    : Error(path + ": " + what), path_(path) {}

}  // namespace coolshift
