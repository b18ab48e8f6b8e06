#pragma once

#include <stdexcept>
#include <string>

namespace ncd {

// Malformed labels, tuples, or arguments supplied by the caller.
struct InputError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// A computation needed data (a table entry, a lower-rank polynomial) that
// was not supplied.
struct DependencyError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Refusal to build an object whose estimated size exceeds a hard limit.
struct ResourceGuardError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// An internal invariant failed.
struct ConsistencyError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

}  // namespace ncd
