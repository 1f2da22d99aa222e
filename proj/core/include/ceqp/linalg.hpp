#pragma once

#include "ceqp/types.hpp"

#include <utility>

namespace ceqp {

/// Spectral norm (largest singular value) via power iteration on M^T M.
/// Deterministic start vector; iterates until the Rayleigh estimate is
/// stationary to near machine precision.
double operator_norm(const Matrix& m);

/// operator_norm together with the right singular direction the power
/// iteration converged to (unit norm; zero vector for a zero matrix).
std::pair<double, Vector> spectral_direction(const Matrix& m);

}  // namespace ceqp
