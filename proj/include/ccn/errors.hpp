#pragma once

#include <stdexcept>
#include <string>

namespace ccn {

/// Malformed input document (JSON syntax, undeclared references, bad schema).
struct ParseError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// Exhaustive enumeration refused because the cell count exceeds the cap.
struct CapExceeded : std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// A pipeline method was requested on a network it does not apply to.
struct MethodInapplicable : std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// Two lattice documents do not share the same cell universe.
struct UniverseMismatch : std::runtime_error {
  using std::runtime_error::runtime_error;
};

}  // namespace ccn
