#include "ceqp/solver_cyclic.hpp"

#include "ceqp/diagnostics.hpp"
#include "ceqp/prox.hpp"
#include "ceqp/validate.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <limits>
#include <string>

namespace ceqp {

int cyclic_index(int n, int N) {
  if (N <= 0) throw std::invalid_argument("cyclic index needs N >= 1");
  if (n < 0) throw std::invalid_argument("cyclic index needs n >= 0");
  return n % N + 1;
}

CyclicState init_cyclic(const CsepInstance& instance, const SolverParams& params) {
  CyclicState state;
  state.n = 0;
  state.x = params.x0;
  state.active_index = cyclic_index(0, instance.count());
  return state;
}

CyclicState step_cyclic(const CyclicState& state, const CsepInstance& instance,
                        const SolverParams& params) {
  const int N = instance.count();
  const int idx = cyclic_index(state.n, N);
  const auto& pair = instance.pairs[idx - 1];
  const double lam = params.lambda_schedule(state.n, idx);
  const double gam = params.gamma_schedule(state.n, idx);

  CyclicState next;
  next.n = state.n + 1;
  next.y = solve_prox(pair.f, state.x, state.x, lam, pair.set, params.tol_inner).minimizer;
  next.z = solve_prox(pair.f, next.y, state.x, lam, pair.set, params.tol_inner).minimizer;
  next.cut_pair = make_cut_pair(params.x0, state.x, next.z, gam);
  next.x = project_two_halfspaces(params.x0, next.cut_pair.h, next.cut_pair.w);
  next.active_index = cyclic_index(next.n, N);
  return next;
}

RunResult run_cyclic(const CsepInstance& instance, const SolverParams& params) {
  const auto report = validate_params(params, instance);
  if (!report.pass) throw std::invalid_argument(report.to_string());

  const double c1 = instance.max_c1();
  const double c2 = instance.max_c2();
  const Vector* x_star = instance.known_solution ? &*instance.known_solution : nullptr;
  const int N = instance.count();

  IterateTrace trace;
  CyclicState state = init_cyclic(instance, params);
  StopReason reason = StopReason::MaxIter;
  double prev_anchor = -std::numeric_limits<double>::infinity();

  // One residual slot per subproblem; a stop needs the whole sweep small.
  std::vector<double> sweep_z(N, std::numeric_limits<double>::infinity());

  for (int it = 0; it < params.max_iter; ++it) {
    const int executed = cyclic_index(state.n, N);
    const double lam = params.lambda_schedule(state.n, executed);

    const auto t0 = std::chrono::steady_clock::now();
    CyclicState next = step_cyclic(state, instance, params);
    const double wall_ms =
        std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - t0)
            .count();

    IterationRecord rec;
    rec.n = state.n;
    rec.active_index = executed;
    rec.x = state.x;
    rec.y_dist.push_back((next.y - state.x).norm());
    rec.z_dist.push_back((next.z - state.x).norm());
    rec.step_norm = (next.x - state.x).norm();
    rec.anchor_dist = (state.x - params.x0).norm();
    rec.wall_ms = wall_ms;

    bool ok = rec.anchor_dist >= prev_anchor - 1e-10;
    if (x_star) {
      const double fejer =
          diag::fejer_slack(state.x, next.y, next.z, *x_star, lam, c1, c2);
      const double containment =
          std::max(diag::cut_violation(next.cut_pair.h, *x_star),
                   diag::cut_violation(next.cut_pair.w, *x_star));
      rec.fejer_slack = fejer;
      rec.containment_violation = containment;
      ok = ok && fejer <= params.invariant_tol && containment <= params.invariant_tol;
      if (params.check_invariants &&
          (fejer > params.invariant_tol || containment > params.invariant_tol))
        throw InvariantViolationError(
            "lemma diagnostics violated at iteration " + std::to_string(rec.n) +
                " (Fejer slack " + std::to_string(fejer) + ", cut containment violation " +
                std::to_string(containment) + ")",
            rec.n, std::max(fejer, containment));
    }
    rec.invariants_ok = ok;
    prev_anchor = rec.anchor_dist;

    sweep_z[(executed - 1)] = rec.z_dist.front();
    const double step_norm = rec.step_norm;
    trace.records.push_back(std::move(rec));
    state = std::move(next);

    const bool sweep_small =
        it + 1 >= N &&
        std::all_of(sweep_z.begin(), sweep_z.end(),
                    [&](double d) { return d <= params.tol_stop; });
    if (sweep_small && step_norm <= params.tol_stop) {
      reason = StopReason::Converged;
      break;
    }
  }

  trace.stop = reason;
  return {state.x, std::move(trace)};
}

}  // namespace ceqp
