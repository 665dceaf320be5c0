#pragma once

#include <stdexcept>
#include <string>

namespace rsn {

// Invalid arguments or precondition violations. CLI maps this to exit code 2.
struct DomainError : std::invalid_argument {
  explicit DomainError(const std::string& what) : std::invalid_argument(what) {}
};

// Work refused because a configured cap would be exceeded. CLI exit code 2.
struct ResourceError : std::runtime_error {
  explicit ResourceError(const std::string& what) : std::runtime_error(what) {}
};

// Numeric failure (non-convergence, singularity, double pole). CLI exit code 3.
struct NumericError : std::runtime_error {
  explicit NumericError(const std::string& what) : std::runtime_error(what) {}
};

}  // namespace rsn
