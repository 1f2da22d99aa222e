#pragma once

#include "ceqp/types.hpp"

#include <limits>
#include <string>
#include <vector>

namespace ceqp {

enum class StopReason { MaxIter, FixedPoint, Converged };

std::string to_string(StopReason reason);

/// One outer iteration. Distances are Euclidean. fejer_slack and
/// containment_violation are NaN when the instance has no known solution
/// to check against.
struct IterationRecord {
  int n = 0;
  int active_index = -1;  ///< 1-based cyclic index; -1 for the parallel solver
  Vector x;               ///< x_n
  std::vector<double> y_dist;  ///< ||y_n^i - x_n|| for the indices solved at n, index order
  std::vector<double> z_dist;  ///< ||z_n^i - x_n||
  double step_norm = 0.0;      ///< ||x_{n+1} - x_n||
  double anchor_dist = 0.0;    ///< ||x_n - x0||
  double fejer_slack = std::numeric_limits<double>::quiet_NaN();
  double containment_violation = std::numeric_limits<double>::quiet_NaN();
  bool invariants_ok = true;
  double wall_ms = 0.0;
};

struct IterateTrace {
  std::vector<IterationRecord> records;
  StopReason stop = StopReason::MaxIter;

  // NaN entries are skipped; returns NaN when nothing was recorded.
  double max_fejer_slack() const;
  double max_containment_violation() const;
};

struct RunResult {
  Vector final;
  IterateTrace trace;
};

}  // namespace ceqp
