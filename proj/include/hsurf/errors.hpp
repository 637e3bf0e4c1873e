#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace hsurf {

// Malformed H expression or bad CLI usage.
class ParseError : public std::runtime_error {
public:
  ParseError(const std::string& msg, std::size_t offset)
      : std::runtime_error(msg + " at offset " + std::to_string(offset)), offset_(offset) {}
  std::size_t offset() const { return offset_; }

private:
  std::size_t offset_;
};

// Argument outside the natural domain of an operation.
class DomainError : public std::domain_error {
public:
  using std::domain_error::domain_error;
};

// Root finder could not separate or classify a zero.
class UnresolvedZero : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

// Integrator failure (step underflow, budget, gluing).
class NumericError : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

// H is outside the admissible class for the requested curvature.
class InadmissibleError : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

// Requested surface kind disagrees with the computed verdict.
class ClassificationMismatch : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

// A builder ran but the orbit did not produce the surface; what() names the obstruction.
class ConstructionError : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

}  // namespace hsurf
