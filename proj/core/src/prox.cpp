#include "ceqp/prox.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace ceqp {

namespace {

constexpr int kInnerCap = 100000;

void check_args(double lambda, double tol_inner) {
  if (!(lambda > 0.0)) throw std::invalid_argument("prox requires lambda > 0");
  if (!(tol_inner > 0.0)) throw std::invalid_argument("prox requires tol_inner > 0");
}

}  // namespace

namespace detail {

ProxResult solve_prox_iterative(const Bifunction& f, const Vector& x, const Vector& anchor,
                                double lambda, const ConvexSet& K, double tol_inner) {
  check_args(lambda, tol_inner);

  auto objective = [&](const Vector& p) {
    return lambda * f.value(x, p) + 0.5 * (anchor - p).squaredNorm();
  };
  auto gradient = [&](const Vector& p) -> Vector {
    return lambda * f.subgrad(x, p) + (p - anchor);
  };

  Vector y = project(K, anchor);
  double step = 1.0;
  double best_residual = std::numeric_limits<double>::infinity();

  for (int j = 0; j < kInnerCap; ++j) {
    const Vector g = gradient(y);
    const Vector fixed_point = project(K, y - g);
    const double residual = (y - fixed_point).norm();
    best_residual = std::min(best_residual, residual);
    if (residual <= tol_inner) return {std::move(y), residual, j, false};

    // Backtracking projected-gradient step. The quadratic-decrease test
    // enforces step <= 1/L on smooth bifunctions while objective
    // differences are above rounding noise; near the minimizer the test
    // saturates, so the step must never grow back, or a noise-approved
    // expansive step would push the iterate away again. Nonsmooth kinks
    // that reject every trial down to the diminishing floor fall back to a
    // plain subgradient step there, which keeps the loop convergent
    // regardless.
    const double floor_step = 1.0 / (j + 2);
    const double phi = objective(y);
    bool moved = false;
    for (double trial = step; trial >= floor_step; trial *= 0.5) {
      const Vector cand = (trial == 1.0) ? fixed_point : project(K, y - trial * g);
      const Vector d = cand - y;
      const double quad = phi + g.dot(d) + d.squaredNorm() / (2.0 * trial);
      if (objective(cand) <= quad + 1e-15 * (1.0 + std::abs(phi))) {
        y = cand;
        step = trial;
        moved = true;
        break;
      }
    }
    if (!moved) y = project(K, y - floor_step * g);
  }

  throw ProxFailureError("prox inner loop hit its iteration cap at residual " +
                             std::to_string(best_residual),
                         best_residual, kInnerCap);
}

}  // namespace detail

ProxResult solve_prox(const Bifunction& f, const Vector& x, const Vector& anchor,
                      double lambda, const ConvexSet& K, double tol_inner) {
  check_args(lambda, tol_inner);
  if (f.linearized()) {
    ProxResult result;
    result.minimizer = project(K, anchor - lambda * f.linear_operator(x));
    result.used_closed_form = true;
    return result;
  }
  return detail::solve_prox_iterative(f, x, anchor, lambda, K, tol_inner);
}

double prox_optimality_residual(const Bifunction& f, const Vector& x, const Vector& anchor,
                                double lambda, const ConvexSet& K, const Vector& y,
                                const PointSampler& sampler, int count) {
  const double f_at_y = f.value(x, y);
  double worst = -std::numeric_limits<double>::infinity();
  for (int s = 0; s < count; ++s) {
    const Vector candidate = project(K, sampler());
    const double gap =
        (y - anchor).dot(y - candidate) - lambda * (f.value(x, candidate) - f_at_y);
    worst = std::max(worst, gap);
  }
  return worst;
}

}  // namespace ceqp
