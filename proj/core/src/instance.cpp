#include "ceqp/instance.hpp"

#include <algorithm>
#include <string>

namespace ceqp {

double CsepInstance::max_c1() const {
  double c = 0.0;
  for (const auto& p : pairs) c = std::max(c, p.f.c1);
  return c;
}

double CsepInstance::max_c2() const {
  double c = 0.0;
  for (const auto& p : pairs) c = std::max(c, p.f.c2);
  return c;
}

CsepInstance make_instance(int dimension, std::vector<SubproblemPair> pairs,
                           std::optional<Vector> known_solution) {
  if (dimension <= 0) throw std::invalid_argument("instance dimension must be positive");
  if (pairs.empty()) throw std::invalid_argument("instance needs at least one subproblem");

  bool polyhedral = true;
  for (std::size_t i = 0; i < pairs.size(); ++i) {
    const auto& p = pairs[i];
    if (!p.f.value || !p.f.subgrad)
      throw std::invalid_argument("subproblem " + std::to_string(i) +
                                  " is missing a bifunction oracle");
    if (p.f.c1 < 0.0 || p.f.c2 < 0.0)
      throw std::invalid_argument("Lipschitz-type constants must be nonnegative");
    const auto d = set_dimension(p.set);
    if (d && *d != dimension)
      throw std::invalid_argument("subproblem " + std::to_string(i) +
                                  " set dimension differs from the instance dimension");
    if (std::holds_alternative<Ball>(p.set)) polyhedral = false;
  }

  if (known_solution) {
    if (known_solution->size() != dimension)
      throw std::invalid_argument("known solution dimension differs from the instance");
    if (!is_finite(*known_solution))
      throw std::invalid_argument("known solution must be finite");
  }

  CsepInstance inst;
  inst.dimension = dimension;
  inst.pairs = std::move(pairs);
  inst.known_solution = std::move(known_solution);
  inst.feasible_region_is_polyhedral = polyhedral;
  return inst;
}

}  // namespace ceqp
