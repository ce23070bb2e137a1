#pragma once

#include <stdexcept>
#include <string>

namespace hrnr {

/// Base class of every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class DimensionError : public Error {
 public:
  using Error::Error;
};

class StructureError : public Error {
 public:
  StructureError(const std::string& what, double residual = 0.0)
      : Error(what), residual_(residual) {}
  double residual() const noexcept { return residual_; }

 private:
  double residual_;
};

class ConvergenceError : public Error {
 public:
  using Error::Error;
};

class ArgumentError : public Error {
 public:
  using Error::Error;
};

class UnboundedRegionError : public Error {
 public:
  using Error::Error;
};

class EmptyRegionError : public Error {
 public:
  using Error::Error;
};

class FitError : public Error {
 public:
  using Error::Error;
};

class CapacityError : public Error {
 public:
  using Error::Error;
};

/// A closed form was requested but its hypotheses do not hold.
class HypothesisError : public Error {
 public:
  HypothesisError(const std::string& what, double first_residual = 0.0,
                  double second_residual = 0.0)
      : Error(what), first_(first_residual), second_(second_residual) {}
  double first_residual() const noexcept { return first_; }
  double second_residual() const noexcept { return second_; }

 private:
  double first_;
  double second_;
};

class NoClosedFormError : public Error {
 public:
  using Error::Error;
};

class ParseError : public Error {
 public:
  using Error::Error;
};

}  // namespace hrnr
