#pragma once

#include <stdexcept>
#include <string>

namespace pitbound {

/// Input outside the mathematical domain of an operation.
class DomainError : public std::domain_error {
 public:
  explicit DomainError(const std::string& what) : std::domain_error(what) {}
};

/// A bound was requested below the point where it is asserted to hold.
class ThresholdError : public std::domain_error {
 public:
  explicit ThresholdError(const std::string& what) : std::domain_error(what) {}
};

/// A configured resource cap (enumeration size, modulus size) would be exceeded.
class ResourceError : public std::runtime_error {
 public:
  explicit ResourceError(const std::string& what) : std::runtime_error(what) {}
};

/// Iterative numerics failed to reach the requested accuracy.
class ConvergenceError : public std::runtime_error {
 public:
  explicit ConvergenceError(const std::string& what) : std::runtime_error(what) {}
};

/// The field is outside what the empirical machinery supports (class number > 1).
class UnsupportedFieldError : public std::invalid_argument {
 public:
  explicit UnsupportedFieldError(const std::string& what) : std::invalid_argument(what) {}
};

}  // namespace pitbound
