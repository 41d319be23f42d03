#pragma once

#include <stdexcept>

namespace spreadnet {

// Base class for every error this library throws.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Bad or inconsistent inputs: configs, parameters, file contents.
class ValidationError : public Error {
 public:
  using Error::Error;
};

// Adaptive integration could not reach the requested tolerance within the
// subdivision budget.
class QuadratureError : public Error {
 public:
  using Error::Error;
};

// The optimization constraints cannot all be met.
class InfeasibleError : public Error {
 public:
  using Error::Error;
};

// The power-inversion denominator is nonpositive; the inputs are
// inconsistent with the requested coverage target.
class DegenerateDenominatorError : public Error {
 public:
  using Error::Error;
};

// A requested statistic is undefined because no trial produced the
// conditioning event.
class InsufficientDataError : public Error {
 public:
  using Error::Error;
};

}  // namespace spreadnet
