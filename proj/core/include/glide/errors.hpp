#pragma once

#include <stdexcept>
#include <string>

namespace glide {

// Argument outside the region where an evaluator is certified.
class DomainError : public std::domain_error {
public:
  using std::domain_error::domain_error;
};

// Parameters that violate the physical or desk-scale gates.
class ValidationError : public std::invalid_argument {
public:
  using std::invalid_argument::invalid_argument;
};

// Grid or quadrature too coarse for the oscillation it has to resolve.
class ResolutionError : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

class QuadratureError : public std::runtime_error {
public:
  QuadratureError(const std::string& what, double estimate)
      : std::runtime_error(what + " (achieved error estimate " + std::to_string(estimate) + ")"),
        estimate_(estimate) {}
  double estimate() const noexcept { return estimate_; }

private:
  double estimate_;
};

// An iterative solve or adaptive refinement ran out of budget.
class ConvergenceError : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

}  // namespace glide
