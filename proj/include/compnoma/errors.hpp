#pragma once

#include <stdexcept>

namespace compnoma {

// invalid cell layout: wrong counts, coincident nodes, bad radius/height
struct LayoutError : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

// sigma2_eps >= d^-v on some link, so the estimated-channel variance would be <= 0
struct VarianceExhaustedError : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

// two exponential rates closer than the distinctness tolerance
struct RateCollisionError : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

// system parameters violate an invariant (alpha+beta != 1, rho <= 0, ...)
struct ParamError : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

// malformed configuration file or unusable key/value
struct ConfigError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

}  // namespace compnoma
