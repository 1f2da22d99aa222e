#pragma once

#include "ceqp/sampling.hpp"
#include "ceqp/sets.hpp"
#include "ceqp/types.hpp"

namespace ceqp {

struct ProxResult {
  Vector minimizer;
  double residual = 0.0;  ///< fixed-point optimality certificate; 0 on the closed form
  int inner_iters = 0;
  bool used_closed_form = false;
};

/// argmin { lambda f(x, y) + 1/2 ||anchor - y||^2 : y in K }.
///
/// The linearization point x and the quadratic anchor are separate on
/// purpose: the extragradient step 2 evaluates f at y_n while keeping the
/// anchor at x_n. Linearized bifunctions take the exact closed form
/// P_K(anchor - lambda A(x)). Anything else runs a projected-gradient inner
/// loop (backtracking step, diminishing-step subgradient fallback) on the
/// 1-strongly-convex objective, stopped once the fixed-point residual
///   ||y - P_K(y - G(y))||,  G(y) = lambda subgrad(x, y) + (y - anchor),
/// drops to tol_inner; that residual is the exported certificate.
/// Throws ProxFailureError carrying the best residual if the iteration cap
/// (1e5) is hit, std::invalid_argument on lambda <= 0 or tol_inner <= 0.
ProxResult solve_prox(const Bifunction& f, const Vector& x, const Vector& anchor,
                      double lambda, const ConvexSet& K, double tol_inner);

namespace detail {
/// Iterative path of solve_prox, exposed so tests can pit it against the
/// closed form on linearized bifunctions.
ProxResult solve_prox_iterative(const Bifunction& f, const Vector& x, const Vector& anchor,
                                double lambda, const ConvexSet& K, double tol_inner);
}  // namespace detail

/// Sampled first-order optimality gap of a claimed minimizer y:
///   max over sampled y' in K of  <y - anchor, y - y'> - lambda (f(x, y') - f(x, y)).
/// <= 0 at the exact minimizer; a return <= tol certifies optimality on the
/// sample. Draws are projected onto K before use.
double prox_optimality_residual(const Bifunction& f, const Vector& x, const Vector& anchor,
                                double lambda, const ConvexSet& K, const Vector& y,
                                const PointSampler& sampler, int count);

}  // namespace ceqp
