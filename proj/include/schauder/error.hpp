#pragma once

#include <stdexcept>
#include <string>

namespace schauder {

// Base of every exception thrown by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Sizes of vectors, functionals, operators or pair sequences disagree.
class DimensionMismatch : public Error {
 public:
  using Error::Error;
};

// A documented precondition on the inputs does not hold.
class PreconditionError : public Error {
 public:
  using Error::Error;
};

// A perturbation criterion was not satisfied and no override was given.
class CriterionUnsatisfied : public Error {
 public:
  using Error::Error;
};

// An iterative or direct numerical procedure could not produce a certified
// result (iteration cap, singular matrix, ...).
class NumericalFailure : public Error {
 public:
  using Error::Error;
};

}  // namespace schauder
