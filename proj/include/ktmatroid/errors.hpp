#pragma once

#include <stdexcept>
#include <string>

namespace ktm {

/// Operands live in different ambient dimensions.
class DimensionError : public std::invalid_argument {
 public:
  explicit DimensionError(const std::string& what) : std::invalid_argument(what) {}
};

/// Input outside the domain where a computation is defined (e.g. loops for h_M).
class DomainError : public std::domain_error {
 public:
  explicit DomainError(const std::string& what) : std::domain_error(what) {}
};

/// A size guard refused the computation; the message carries the size report.
class SizeGuardError : public DomainError {
 public:
  explicit SizeGuardError(const std::string& what) : DomainError(what) {}
};

/// A basis collection that is not a matroid, or structurally malformed.
class InvalidMatroidError : public std::invalid_argument {
 public:
  explicit InvalidMatroidError(const std::string& what) : std::invalid_argument(what) {}
};

/// Rational evaluation hit a pole (some 1 - t^ray vanished).
class PoleError : public std::domain_error {
 public:
  explicit PoleError(const std::string& what) : std::domain_error(what) {}
};

/// A proven identity failed numerically. Always an implementation bug.
class InternalConsistencyError : public std::logic_error {
 public:
  explicit InternalConsistencyError(const std::string& what) : std::logic_error(what) {}
};

}  // namespace ktm
