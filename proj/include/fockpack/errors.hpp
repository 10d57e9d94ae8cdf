#pragma once

#include <stdexcept>
#include <string>

namespace fockpack {

/// Raised when an input violates a documented precondition (bad numbers,
/// duplicate points, too-small windows). The CLI maps it to exit code 2.
class InvalidInput : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// Raised when a well-formed input leads to a failed computation
/// ("not a covering", kernel overflow, ill-posed interpolation). Exit code 3.
class ComputationError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace fockpack
