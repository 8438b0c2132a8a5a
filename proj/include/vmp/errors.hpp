#pragma once

#include <stdexcept>
#include <string>

namespace vmp {

// Precondition or parse failure. The CLI maps this to exit code 2.
class InputError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

// Analytic infeasibility (empty polytope, saturated chain). Exit code 1.
class InfeasibleError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace vmp
