#pragma once

#include "ceqp/sets.hpp"
#include "ceqp/trace.hpp"
#include "ceqp/types.hpp"

#include <optional>

namespace ceqp::diag {

/// Shipped tolerance for the per-iteration lemma checks.
inline constexpr double kLemmaTol = 1e-8;

/// Slack of the per-iteration Fejer-type inequality at a solution x*,
///   ||z - x*||^2 <= ||x - x*||^2 - (1 - 2 lambda c1) ||y - x||^2
///                                - (1 - 2 lambda c2) ||z - y||^2.
/// Positive return = violated by that amount.
double fejer_slack(const Vector& x, const Vector& y, const Vector& z,
                   const Vector& x_star, double lambda, double c1, double c2);

/// Violation of <a, p> <= b; 0 for a vacuous cut.
double cut_violation(const std::optional<Halfspace>& cut, const Vector& p);

/// Largest decrease of ||x_n - x0|| along the trace; <= 1e-10 means the
/// anchor distance was non-decreasing up to roundoff.
double anchor_monotonicity_slack(const IterateTrace& trace);

/// True when the last `window` records keep the step norm and every
/// subproblem residual below tol (the vanishing-residual diagnostic).
bool residuals_vanish(const IterateTrace& trace, int window, double tol);

}  // namespace ceqp::diag
