#pragma once

#include <stdexcept>
#include <string>

namespace mhscale {

struct ConfigError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct DivergentIntegralError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct NonFiniteValueError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct UnsupportedTargetError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct DimensionError : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

struct TruncationError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct ObservableError : std::runtime_error {
  ObservableError(std::size_t index, const std::string& what)
      : std::runtime_error(what), observable_index(index) {}
  std::size_t observable_index;
};

}  // namespace mhscale
