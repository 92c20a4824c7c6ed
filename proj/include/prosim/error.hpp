#pragma once

#include <stdexcept>
#include <string>

namespace prosim {

/// Raised when a value violates the invariants of its owning type.
class ValidationError : public std::invalid_argument {
 public:
  explicit ValidationError(const std::string& what) : std::invalid_argument(what) {}
};

}  // namespace prosim
