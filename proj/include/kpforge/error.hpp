#pragma once

#include <stdexcept>
#include <string>

namespace kpforge {

/// Violated parameter window or precondition (r < s < t, s > 2n+1, ...).
class ParameterError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// Two fields that must share a grid do not.
class GridMismatch : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// Spectral content would be dropped or folded by an operation that
/// requires band-limited input.
class AliasingError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

/// A numerical estimate failed its own convergence check.
class ResolutionError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class IoError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace kpforge
