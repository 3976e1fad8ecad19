#pragma once

#include <stdexcept>
#include <string>

namespace halfwave {

/// Precondition violation on an argument (bad grid, speed out of range, ...).
class InvalidArgument : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// The fixed-point map hit an iterate whose nonlinear pairing vanished.
class DegenerateIterate : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Time stepping aborted because a conserved quantity drifted too far.
class EvolutionUnstable : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Numerical quadrature did not reach its requested accuracy.
class QuadratureError : public std::runtime_error {
 public:
  QuadratureError(const std::string& what, double achieved_error)
      : std::runtime_error(what), achieved_error_(achieved_error) {}
  double achieved_error() const noexcept { return achieved_error_; }

 private:
  double achieved_error_;
};

/// File could not be read, written or parsed.
class IoError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace halfwave
