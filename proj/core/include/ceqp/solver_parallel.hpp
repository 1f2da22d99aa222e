#pragma once

#include "ceqp/cuts.hpp"
#include "ceqp/instance.hpp"
#include "ceqp/trace.hpp"
#include "ceqp/types.hpp"

#include <optional>
#include <vector>

namespace ceqp {

/// State after `n` completed iterations: x is x_n; y, z and the cuts are the
/// artifacts of the step that produced it (empty at n = 0).
struct ParallelState {
  int n = 0;
  Vector x;
  std::vector<Vector> y;
  std::vector<Vector> z;
  std::vector<std::optional<Halfspace>> cuts;  ///< H^i, nullopt when vacuous
  std::optional<Halfspace> anchor_cut;         ///< W, nullopt when vacuous
  std::optional<StopReason> stopped;
};

ParallelState init_parallel(const CsepInstance& instance, const SolverParams& params);

/// One outer iteration: N independent extragradient pairs
///   y^i = prox(f_i, x_n, x_n), z^i = prox(f_i, y^i, x_n),
/// cut construction, and projection of x0 onto all non-vacuous cuts.
/// The subproblems may run on several threads; the result is identical to
/// sequential execution. Flags FixedPoint when the projection returns x_n
/// exactly.
ParallelState step_parallel(const ParallelState& state, const CsepInstance& instance,
                            const SolverParams& params);

/// Iterates step_parallel until ||x_{n+1} - x_n|| <= tol_stop and
/// max_i ||z^i - x_n|| <= tol_stop (or an exact fixed point, or max_iter).
/// Records one IterationRecord per iteration, including the Fejer and cut
/// containment diagnostics whenever the instance has a known solution;
/// with check_invariants set, a diagnostic beyond invariant_tol raises
/// InvariantViolationError. Throws std::invalid_argument when
/// validate_params rejects the configuration.
RunResult run_parallel(const CsepInstance& instance, const SolverParams& params);

}  // namespace ceqp
