#pragma once

#include <stdexcept>

namespace tclplan {

// Base class for all library errors.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Malformed or inconsistent input: files, constructor arguments, grids.
class InputError : public Error {
 public:
  using Error::Error;
};

// Requested energy budget lies outside the feasible interval.
class InfeasibleBudgetError : public Error {
 public:
  using Error::Error;
};

// Holding a comfort boundary would need an effective control outside [0, 1],
// i.e. the zero-amplitude chattering assumption fails for the scenario.
class SlidingInfeasibleError : public Error {
 public:
  using Error::Error;
};

}  // namespace tclplan
