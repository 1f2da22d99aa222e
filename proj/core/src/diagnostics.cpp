#include "ceqp/diagnostics.hpp"

#include <algorithm>
#include <cmath>

namespace ceqp::diag {

double fejer_slack(const Vector& x, const Vector& y, const Vector& z,
                   const Vector& x_star, double lambda, double c1, double c2) {
  const double lhs = (z - x_star).squaredNorm();
  const double rhs = (x - x_star).squaredNorm() -
                     (1.0 - 2.0 * lambda * c1) * (y - x).squaredNorm() -
                     (1.0 - 2.0 * lambda * c2) * (z - y).squaredNorm();
  return lhs - rhs;
}

double cut_violation(const std::optional<Halfspace>& cut, const Vector& p) {
  if (!cut) return 0.0;
  return cut->a.dot(p) - cut->b;
}

double anchor_monotonicity_slack(const IterateTrace& trace) {
  double worst = 0.0;
  for (std::size_t k = 1; k < trace.records.size(); ++k)
    worst = std::max(worst,
                     trace.records[k - 1].anchor_dist - trace.records[k].anchor_dist);
  return worst;
}

bool residuals_vanish(const IterateTrace& trace, int window, double tol) {
  const int count = static_cast<int>(trace.records.size());
  if (count < window || window <= 0) return false;
  for (int k = count - window; k < count; ++k) {
    const auto& rec = trace.records[k];
    if (rec.step_norm > tol) return false;
    for (double d : rec.y_dist)
      if (d > tol) return false;
    for (double d : rec.z_dist)
      if (d > tol) return false;
  }
  return true;
}

}  // namespace ceqp::diag
