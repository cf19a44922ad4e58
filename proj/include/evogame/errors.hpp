#pragma once

#include <stdexcept>

namespace evogame {

/// Invalid parameters, configs, or CLI inputs. The CLI maps this to exit code 2.
class ValidationError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Numerical failure during integration (boundary overshoot beyond the
/// tolerated round-off budget). The CLI maps this to exit code 3.
class NumericsError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace evogame
