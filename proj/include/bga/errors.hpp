#pragma once

#include <stdexcept>

namespace bga {

/// A generator parameter, configuration value or bound argument is outside
/// its admissible domain.
struct InvalidParameter : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

/// The requested quantity is only defined for symmetric graphs.
struct UnsupportedGraph : std::runtime_error {
  using std::runtime_error::runtime_error;
};

}  // namespace bga
