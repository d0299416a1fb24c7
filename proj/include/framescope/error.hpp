#pragma once

#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace framescope {

/// Pipeline failure raised by any module. Carries the module name so the CLI
/// can report where a run stopped, plus an optional remedy hint.
class Error : public std::runtime_error {
 public:
  Error(std::string module, const std::string& message, std::string hint = {})
      : std::runtime_error(message), module_(std::move(module)), hint_(std::move(hint)) {}

  const std::string& module() const noexcept { return module_; }
  const std::string& hint() const noexcept { return hint_; }

 private:
  std::string module_;
  std::string hint_;
};

// Non-fatal diagnostics collected by operations that proceed after a problem.
using Warnings = std::vector<std::string>;

inline void warn(Warnings* sink, std::string message) {
  if (sink) sink->push_back(std::move(message));
}

}  // namespace framescope
