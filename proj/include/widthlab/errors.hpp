#pragma once

#include <stdexcept>
#include <string>

namespace widthlab {

/// Bad user input: malformed files, violated preconditions. CLI exit code 1.
class InputError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// A computed object failed its own verification. CLI exit code 2.
class InvariantViolation : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

class ComplexError : public InputError {
 public:
  using InputError::InputError;
};

class MapError : public InputError {
 public:
  using InputError::InputError;
};

/// A closed-cell preimage failed the combinatorial fiberedness test.
class FiberednessError : public InputError {
 public:
  FiberednessError(std::string cell, const std::string& what)
      : InputError("fiberedness violation at target cell " + cell + ": " + what), cell_(std::move(cell)) {}
  const std::string& cell() const { return cell_; }

 private:
  std::string cell_;
};

class OrientationError : public InputError {
 public:
  using InputError::InputError;
};

class HypothesisUnmet : public InputError {
 public:
  using InputError::InputError;
};

/// Cycle-space gluing data that violates the face or boundary conditions.
class GluingError : public InputError {
 public:
  GluingError(const std::string& what, std::ptrdiff_t index, std::string residual = {})
      : InputError(what), index_(index), residual_(std::move(residual)) {}
  /// Offending face index, or -1 when the top chain is at fault.
  std::ptrdiff_t index() const { return index_; }
  const std::string& residual() const { return residual_; }

 private:
  std::ptrdiff_t index_;
  std::string residual_;
};

/// The requested coefficient ring cannot answer the question asked.
class UnsupportedCoefficients : public InputError {
 public:
  using InputError::InputError;
};

}  // namespace widthlab
