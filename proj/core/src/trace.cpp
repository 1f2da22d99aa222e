#include "ceqp/trace.hpp"

#include <algorithm>
#include <cmath>

namespace ceqp {

std::string to_string(StopReason reason) {
  switch (reason) {
    case StopReason::MaxIter: return "max_iter";
    case StopReason::FixedPoint: return "fixed_point";
    case StopReason::Converged: return "converged";
  }
  return "unknown";
}

namespace {
double nan_aware_max(const std::vector<IterationRecord>& records,
                     double IterationRecord::*field) {
  double worst = std::numeric_limits<double>::quiet_NaN();
  for (const auto& rec : records) {
    const double v = rec.*field;
    if (std::isnan(v)) continue;
    if (std::isnan(worst) || v > worst) worst = v;
  }
  return worst;
}
}  // namespace

double IterateTrace::max_fejer_slack() const {
  return nan_aware_max(records, &IterationRecord::fejer_slack);
}

double IterateTrace::max_containment_violation() const {
  return nan_aware_max(records, &IterationRecord::containment_violation);
}

}  // namespace ceqp
