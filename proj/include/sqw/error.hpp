#pragma once

#include <stdexcept>
#include <string>

namespace sqw {

/// Input violates a structural or physical precondition (bad graph, invalid
/// tessellation, malformed file, unreachable operating point).
class DomainError : public std::invalid_argument {
  public:
    explicit DomainError(const std::string &what) : std::invalid_argument(what) {}
};

/// A numerical procedure failed to converge or produced a non-finite value.
class NumericError : public std::runtime_error {
  public:
    explicit NumericError(const std::string &what) : std::runtime_error(what) {}
};

} // namespace sqw
