#pragma once

#include <stdexcept>
#include <string>

namespace qwalk {

// Error taxonomy mirrored by the CLI exit codes:
// ConfigError -> 2, IoError -> 3, NumericalError -> 4.
struct ConfigError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct IoError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct NumericalError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

}  // namespace qwalk
