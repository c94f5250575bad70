#pragma once

#include <stdexcept>
#include <string>

namespace iqpc {

// Invalid parameters to a builder or operation (bad dimensions, bad enum, ...).
struct ParameterError : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

// Instance does not fit on the target hardware.
struct CapacityError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// A two-qubit gate cannot be routed (operands in different components).
struct RoutingError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Request exceeds a simulation size guard.
struct ResourceError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Malformed input file.
struct ParseError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Argument outside a function's mathematical domain.
struct DomainError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Component partition inconsistent with the instance's term structure.
struct PartitionError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// File cannot be opened or written.
struct IoError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

}  // namespace iqpc
