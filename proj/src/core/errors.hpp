#pragma once

#include <stdexcept>
#include <string>

namespace levyspec {

// Violated operation precondition (bad argument, incompatible mode/alpha).
class PreconditionError : public std::invalid_argument {
 public:
  explicit PreconditionError(const std::string& what) : std::invalid_argument(what) {}
};

// Numerical routine failed to reach its tolerance (quadrature, bracketing,
// linear solve). The message carries the achieved error estimate.
class NumericError : public std::runtime_error {
 public:
  explicit NumericError(const std::string& what) : std::runtime_error(what) {}
};

inline void require(bool ok, const std::string& what) {
  if (!ok) throw PreconditionError(what);
}

}  // namespace levyspec
