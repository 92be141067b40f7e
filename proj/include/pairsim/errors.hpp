#pragma once

#include <stdexcept>
#include <string>

namespace pairsim {

// Error taxonomy maps onto the CLI exit codes: config 2, data 3, empty sample 4.
struct ConfigError : std::runtime_error {
  explicit ConfigError(const std::string& msg) : std::runtime_error(msg) {}
};

struct DataError : std::runtime_error {
  explicit DataError(const std::string& msg) : std::runtime_error(msg) {}
};

struct EmptySampleError : std::runtime_error {
  explicit EmptySampleError(const std::string& msg) : std::runtime_error(msg) {}
};

enum ExitCode : int {
  kExitOk = 0,
  kExitConfigError = 2,
  kExitDataError = 3,
  kExitEmptySample = 4,
};

}  // namespace pairsim
