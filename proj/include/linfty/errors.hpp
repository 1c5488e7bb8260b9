#pragma once

#include <stdexcept>

namespace linfty {

/// Raised whenever a computation would need data beyond a truncation bound
/// (bracket arity or series order). Results are never silently inexact.
class TruncationError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Raised when a Delta specification produces something that cannot be a
/// bracket, e.g. a non-linear Koszul bracket output.
class ConsistencyError : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

}  // namespace linfty
