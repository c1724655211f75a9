#pragma once

#include <stdexcept>
#include <string>

namespace nctopo {

// Bad user input: malformed config/scenario files, infeasible parameters.
struct ConfigError : std::runtime_error {
  explicit ConfigError(const std::string& msg) : std::runtime_error(msg) {}
};

// An exhaustive routine refused to run because the instance exceeds its
// enumeration guard.
struct SizeGuardError : std::runtime_error {
  explicit SizeGuardError(const std::string& msg) : std::runtime_error(msg) {}
};

}  // namespace nctopo
