#pragma once

#include <stdexcept>
#include <string>

namespace asrpower {

// Problems in user-supplied input: malformed documents, schema violations,
// unsatisfiable requests. The CLI reports these and exits with code 2.
class ConfigError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Broken internal contracts (mismatched placements, impossible modes).
// The CLI reports these and exits with code 3.
class InvariantError : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

}  // namespace asrpower
