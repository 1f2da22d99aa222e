#pragma once

#include "ceqp/cuts.hpp"
#include "ceqp/instance.hpp"
#include "ceqp/trace.hpp"
#include "ceqp/types.hpp"

#include <optional>

namespace ceqp {

/// n (mod N) + 1, the 1-based index visited at iteration n. Throws on N <= 0.
int cyclic_index(int n, int N);

/// State after `n` completed iterations; y, z, cut_pair belong to the step
/// that produced x. active_index is the index the NEXT step will solve.
struct CyclicState {
  int n = 0;
  Vector x;
  Vector y;
  Vector z;
  int active_index = 1;
  CutPair cut_pair;
  std::optional<StopReason> stopped;
};

CyclicState init_cyclic(const CsepInstance& instance, const SolverParams& params);

/// One iteration on the single subproblem [n]: extragradient pair, cut pair
/// (H_n, W_n), and the explicit two-halfspace projection of x0.
CyclicState step_cyclic(const CyclicState& state, const CsepInstance& instance,
                        const SolverParams& params);

/// Iterates step_cyclic; stops once ||z_n - x_n|| stayed <= tol_stop over a
/// full sweep of N consecutive iterations AND ||x_{n+1} - x_n|| <= tol_stop
/// (a single index being solved says nothing about the others), or at
/// max_iter. Diagnostics and failure modes as in run_parallel. There is no
/// single-index fixed-point exit.
RunResult run_cyclic(const CsepInstance& instance, const SolverParams& params);

}  // namespace ceqp
