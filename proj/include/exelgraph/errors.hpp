#pragma once

#include <stdexcept>

namespace exelgraph {

/// Raised when a subset enumeration would exceed the configured vertex bound.
class BoundExceeded : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Two independent computations of the same fact disagreed, or an asserted
/// structural property failed. Always an implementation bug.
class PropertyViolation : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

}  // namespace exelgraph
