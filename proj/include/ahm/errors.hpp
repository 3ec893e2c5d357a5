#pragma once

#include <stdexcept>
#include <string>

namespace ahm {

/// Base class for every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// A lattice whose hopping connects two sites of the same sublattice,
/// or an odd ring.
class BipartitenessError : public Error {
 public:
  using Error::Error;
};

/// Graph is malformed (disconnected, bad indices, asymmetric hopping).
class LatticeError : public Error {
 public:
  using Error::Error;
};

/// Requested spatial symmetry does not exist on the graph.
class SymmetryError : public Error {
 public:
  using Error::Error;
};

/// Operators or vectors defined over incompatible bases.
class BasisMismatch : public Error {
 public:
  using Error::Error;
};

/// An operator leaves the chosen basis restriction.
class ClosureError : public Error {
 public:
  using Error::Error;
};

/// A computation exceeds a configured size guard.
class SizeGuardError : public Error {
 public:
  using Error::Error;
};

/// Iterative eigensolver failed to reach the requested residual.
class ConvergenceError : public Error {
 public:
  ConvergenceError(const std::string& what, double best_residual)
      : Error(what), best_residual_(best_residual) {}
  double best_residual() const { return best_residual_; }

 private:
  double best_residual_;
};

/// Invalid parameter or configuration value.
class ConfigError : public Error {
 public:
  using Error::Error;
};

}  // namespace ahm
