#pragma once

#include <stdexcept>
#include <string>

namespace cvqkd {

// Argument outside the documented domain of an operation.
class DomainError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

// A numerical routine failed (non-convergence, underflow of a normaliser).
class NumericalError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Post-selection kept nothing, so a BER would be 0/0.
class NoConclusiveEvents : public NumericalError {
 public:
  NoConclusiveEvents() : NumericalError("no conclusive events: BER is undefined") {}
};

// A statistical test was asked to run on too small a sample.
class InsufficientData : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace cvqkd
