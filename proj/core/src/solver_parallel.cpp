#include "ceqp/solver_parallel.hpp"

#include "ceqp/diagnostics.hpp"
#include "ceqp/prox.hpp"
#include "ceqp/validate.hpp"
#include "parallel_util.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <limits>

namespace ceqp {

namespace {
constexpr double kProjectionTol = 1e-12;

bool exactly_equal(const Vector& a, const Vector& b) {
  return a.size() == b.size() && (a.array() == b.array()).all();
}
}  // namespace

ParallelState init_parallel(const CsepInstance& instance, const SolverParams& params) {
  ParallelState state;
  state.n = 0;
  state.x = params.x0;
  state.y.resize(instance.count());
  state.z.resize(instance.count());
  state.cuts.resize(instance.count());
  return state;
}

ParallelState step_parallel(const ParallelState& state, const CsepInstance& instance,
                            const SolverParams& params) {
  const int n_sub = instance.count();
  ParallelState next;
  next.n = state.n + 1;
  next.y.resize(n_sub);
  next.z.resize(n_sub);
  next.cuts.resize(n_sub);

  detail::parallel_for_indices(n_sub, params.workers, [&](int idx) {
    const auto& pair = instance.pairs[idx];
    const double lam = params.lambda_schedule(state.n, idx + 1);
    const double gam = params.gamma_schedule(state.n, idx + 1);
    Vector y =
        solve_prox(pair.f, state.x, state.x, lam, pair.set, params.tol_inner).minimizer;
    Vector z = solve_prox(pair.f, y, state.x, lam, pair.set, params.tol_inner).minimizer;
    next.cuts[idx] = build_cut(state.x, z, gam);
    next.y[idx] = std::move(y);
    next.z[idx] = std::move(z);
  });

  next.anchor_cut = build_anchor_cut(params.x0, state.x);

  std::vector<Halfspace> active;
  active.reserve(n_sub + 1);
  for (const auto& cut : next.cuts)
    if (cut) active.push_back(*cut);
  if (next.anchor_cut) active.push_back(*next.anchor_cut);

  next.x = active.empty()
               ? params.x0
               : project_halfspace_intersection(active, params.x0, kProjectionTol);
  if (exactly_equal(next.x, state.x)) next.stopped = StopReason::FixedPoint;
  return next;
}

RunResult run_parallel(const CsepInstance& instance, const SolverParams& params) {
  const auto report = validate_params(params, instance);
  if (!report.pass) throw std::invalid_argument(report.to_string());

  const double c1 = instance.max_c1();
  const double c2 = instance.max_c2();
  const Vector* x_star =
      instance.known_solution ? &*instance.known_solution : nullptr;
  const int n_sub = instance.count();

  IterateTrace trace;
  ParallelState state = init_parallel(instance, params);
  StopReason reason = StopReason::MaxIter;
  double prev_anchor = -std::numeric_limits<double>::infinity();

  for (int it = 0; it < params.max_iter; ++it) {
    const auto t0 = std::chrono::steady_clock::now();
    ParallelState next = step_parallel(state, instance, params);
    const double wall_ms =
        std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - t0)
            .count();

    IterationRecord rec;
    rec.n = state.n;
    rec.active_index = -1;
    rec.x = state.x;
    rec.step_norm = (next.x - state.x).norm();
    rec.anchor_dist = (state.x - params.x0).norm();
    rec.wall_ms = wall_ms;
    rec.y_dist.reserve(n_sub);
    rec.z_dist.reserve(n_sub);
    double max_z = 0.0;
    for (int i = 0; i < n_sub; ++i) {
      rec.y_dist.push_back((next.y[i] - state.x).norm());
      rec.z_dist.push_back((next.z[i] - state.x).norm());
      max_z = std::max(max_z, rec.z_dist.back());
    }

    bool ok = rec.anchor_dist >= prev_anchor - 1e-10;
    if (x_star) {
      double fejer = -std::numeric_limits<double>::infinity();
      double containment = 0.0;
      for (int i = 0; i < n_sub; ++i) {
        const double lam = params.lambda_schedule(state.n, i + 1);
        fejer = std::max(fejer, diag::fejer_slack(state.x, next.y[i], next.z[i], *x_star,
                                                  lam, c1, c2));
        containment = std::max(containment, diag::cut_violation(next.cuts[i], *x_star));
      }
      containment = std::max(containment, diag::cut_violation(next.anchor_cut, *x_star));
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
    const double step_norm = rec.step_norm;
    trace.records.push_back(std::move(rec));

    const bool fixed_point = next.stopped == StopReason::FixedPoint;
    state = std::move(next);
    if (fixed_point) {
      reason = StopReason::FixedPoint;
      break;
    }
    if (step_norm <= params.tol_stop && max_z <= params.tol_stop) {
      reason = StopReason::Converged;
      break;
    }
  }

  trace.stop = reason;
  return {state.x, std::move(trace)};
}

}  // namespace ceqp
