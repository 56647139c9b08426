#pragma once

#include <stdexcept>
#include <string>

namespace toricfol {

/// Raised when an input violates a mathematical invariant of the library.
/// `invariant()` names the violated invariant as `module.invariant`, e.g.
/// `fan.smooth` or `coxcalc.homogeneous`.
class DomainError : public std::runtime_error {
 public:
  DomainError(std::string invariant, const std::string& what)
      : std::runtime_error(invariant + ": " + what), invariant_(std::move(invariant)) {}

  const std::string& invariant() const noexcept { return invariant_; }

 private:
  std::string invariant_;
};

/// Malformed textual input (polynomial/form syntax, file formats).
class ParseError : public std::runtime_error {
 public:
  ParseError(std::string location, const std::string& what)
      : std::runtime_error(location + ": " + what), location_(std::move(location)) {}

  const std::string& location() const noexcept { return location_; }

 private:
  std::string location_;
};

}  // namespace toricfol
