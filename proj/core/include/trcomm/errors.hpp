#pragma once
#include <stdexcept>
#include <string>

namespace trcomm {

struct DimensionError : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

struct ConfigError : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

struct LayoutError : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

struct SamplingError : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

struct SizeError : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

// Mid-run numerical failure (non-finite values), names the first bad step.
struct NumericalError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Fixed-step iteration diverging; advises a smaller step size.
struct StepSizeError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

}  // namespace trcomm
