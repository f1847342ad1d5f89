#pragma once

#include <stdexcept>

namespace mixedsde {

// Invalid parameters or malformed input. The CLI maps this to exit code 2.
struct ConfigError : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

// Runtime numerical failure (state overflow, factorization breakdown).
// The CLI maps this to exit code 1.
struct NumericError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

}  // namespace mixedsde
