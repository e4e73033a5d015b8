#pragma once

#include <stdexcept>
#include <string>
#include <vector>

namespace isogroup {

/// Base class of every error thrown by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Operand shapes do not agree (non-square input, mismatched sizes).
class DimensionError : public Error {
 public:
  using Error::Error;
};

/// An argument is outside its documented domain.
class ArgumentError : public Error {
 public:
  using Error::Error;
};

/// Malformed external input (matrix files, edge lists, flags).
class InputError : public Error {
 public:
  using Error::Error;
};

/// An iterative method failed or produced non-finite values.
class NumericalError : public Error {
 public:
  NumericalError(const std::string& what, double residual)
      : Error(what), residual_(residual) {}
  double residual() const { return residual_; }

 private:
  double residual_;
};

/// Block structures that must agree do not (multiplicity vectors).
class StructureError : public Error {
 public:
  StructureError(const std::string& what, std::vector<std::size_t> lhs,
                 std::vector<std::size_t> rhs)
      : Error(what), lhs_(std::move(lhs)), rhs_(std::move(rhs)) {}
  const std::vector<std::size_t>& lhs() const { return lhs_; }
  const std::vector<std::size_t>& rhs() const { return rhs_; }

 private:
  std::vector<std::size_t> lhs_;
  std::vector<std::size_t> rhs_;
};

/// Problem size exceeds a hard cap (2^n enumeration, n! search).
class SizeCapError : public Error {
 public:
  using Error::Error;
};

/// A search produced more results than the caller allowed.
class LimitError : public Error {
 public:
  using Error::Error;
};

/// A documented precondition does not hold for the given input.
class PreconditionError : public Error {
 public:
  using Error::Error;
};

/// A fourth-order probe vanished below the resolvable level.
class DegenerateProbeError : public Error {
 public:
  using Error::Error;
};

/// A scalar field returned a non-finite value.
class EvaluationError : public Error {
 public:
  EvaluationError(const std::string& what, std::vector<double> point)
      : Error(what), point_(std::move(point)) {}
  const std::vector<double>& point() const { return point_; }

 private:
  std::vector<double> point_;
};

/// A trajectory left the finite range.
class DivergenceError : public NumericalError {
 public:
  DivergenceError(const std::string& what, std::size_t step)
      : NumericalError(what, 0.0), step_(step) {}
  std::size_t step() const { return step_; }

 private:
  std::size_t step_;
};

}  // namespace isogroup
