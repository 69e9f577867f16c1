#pragma once

#include <stdexcept>
#include <string>

namespace sqc {

// Violated precondition on an argument (dimension mismatch, negative
// decoherence, |G| > 1, indivisible grids, ...).
class InvalidArgument : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

// A numerical routine could not reach its target accuracy.
class NumericalError : public std::runtime_error {
 public:
  NumericalError(const std::string& what, double achieved_tolerance = 0.0)
      : std::runtime_error(what), achieved_tolerance_(achieved_tolerance) {}

  double achieved_tolerance() const noexcept { return achieved_tolerance_; }

 private:
  double achieved_tolerance_;
};

}  // namespace sqc
