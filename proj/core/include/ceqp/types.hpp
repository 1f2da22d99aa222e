#pragma once

#include <Eigen/Core>

#include <functional>
#include <stdexcept>
#include <string>

namespace ceqp {

using Vector = Eigen::VectorXd;
using Matrix = Eigen::MatrixXd;

/// True when every entry is finite (no NaN/Inf).
bool is_finite(const Vector& v);

class SolverError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Inner proximal solve hit its iteration cap before reaching tolerance.
class ProxFailureError : public SolverError {
 public:
  ProxFailureError(const std::string& what, double best_residual, int iterations)
      : SolverError(what), best_residual(best_residual), iterations(iterations) {}

  double best_residual;
  int iterations;
};

/// The cut intersection handed to a projection was (numerically) empty.
class InconsistentCutsError : public SolverError {
 public:
  using SolverError::SolverError;
};

/// A runtime lemma check failed beyond tolerance (see diagnostics.hpp).
class InvariantViolationError : public SolverError {
 public:
  InvariantViolationError(const std::string& what, int iteration, double violation)
      : SolverError(what), iteration(iteration), violation(violation) {}

  int iteration;
  double violation;
};

/// Malformed instance file or instance data.
class ParseError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class ValidationError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Equilibrium bifunction oracle pair: `value(x, y)` evaluates f(x, y) and
/// `subgrad(x, y)` returns an element of the subdifferential of f(x, .) at y.
/// c1/c2 are the Lipschitz-type constants
///   f(x,y) + f(y,z) >= f(x,z) - c1 ||x-y||^2 - c2 ||y-z||^2.
/// When f(x, y) = <A(x), y - x> for an operator A, `linear_operator` holds A
/// and the proximal subproblems collapse to a single projection.
struct Bifunction {
  std::function<double(const Vector&, const Vector&)> value;
  std::function<Vector(const Vector&, const Vector&)> subgrad;
  double c1 = 0.0;
  double c2 = 0.0;
  std::function<Vector(const Vector&)> linear_operator;

  bool linearized() const { return static_cast<bool>(linear_operator); }
};

/// Step-size schedules and stopping controls shared by both solvers.
///
/// Schedules are evaluated as (iteration k, 1-based subproblem index i) and
/// must stay inside [lambda_lo, lambda_hi] resp. [epsilon, 1/2]; the envelope
/// itself must satisfy 0 < lambda_lo <= lambda_hi < min{1/(2 c1), 1/(2 c2)}
/// against the family-wide constants (validate_params checks all of this).
struct SolverParams {
  std::function<double(int, int)> lambda_schedule;
  std::function<double(int, int)> gamma_schedule;
  double lambda_lo = 0.0;
  double lambda_hi = 0.0;
  double epsilon = 0.5;
  Vector x0;
  int max_iter = 1000;
  double tol_stop = 1e-9;
  double tol_inner = 1e-10;

  /// Abort the run (InvariantViolationError) when a lemma diagnostic exceeds
  /// invariant_tol; diagnostics are recorded either way whenever the
  /// instance carries a known solution.
  bool check_invariants = true;
  double invariant_tol = 1e-8;

  /// Thread fan-out for the parallel solver's subproblem loop.
  /// 0 picks min(N, hardware threads). Results are reduced in index order,
  /// so traces do not depend on this value.
  int workers = 0;
};

}  // namespace ceqp
