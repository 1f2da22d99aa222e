#pragma once

#include "ceqp/sets.hpp"
#include "ceqp/types.hpp"

#include <optional>
#include <vector>

namespace ceqp {

struct SubproblemPair {
  Bifunction f;
  ConvexSet set;
};

/// A family of N equilibrium subproblems over R^dimension whose common
/// solution is sought: find x* with f_i(x*, y) >= 0 for all y in K_i, all i.
/// Oracles are immutable after construction and safe to call concurrently.
struct CsepInstance {
  int dimension = 0;
  std::vector<SubproblemPair> pairs;
  std::optional<Vector> known_solution;
  bool feasible_region_is_polyhedral = false;

  int count() const { return static_cast<int>(pairs.size()); }
  double max_c1() const;
  double max_c2() const;
};

/// Validates N >= 1, per-set dimensions and known-solution finiteness, and
/// derives the polyhedral flag.
CsepInstance make_instance(int dimension, std::vector<SubproblemPair> pairs,
                           std::optional<Vector> known_solution = std::nullopt);

}  // namespace ceqp
