#pragma once

#include "ceqp/instance.hpp"
#include "ceqp/sampling.hpp"

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

namespace ceqp {

struct ValidationReport {
  bool pass = true;
  std::vector<std::string> violations;

  std::string to_string() const;
};

/// Checks the schedule envelope against the family-wide constants,
///   0 < lambda_lo <= lambda_hi < min{1/(2 c1), 1/(2 c2)},  epsilon in (0, 1/2],
/// then enumerates lambda_schedule(k, i) and gamma_schedule(k, i) over
/// k < max_iter, i <= N (up to an evaluation budget) and reports every value
/// that leaves [lambda_lo, lambda_hi] resp. [epsilon, 1/2] with its (k, i).
ValidationReport validate_params(const SolverParams& params, const CsepInstance& instance);

/// Worst sampled violation of the Lipschitz-type inequality
///   f(x,y) + f(y,z) >= f(x,z) - c1 ||x-y||^2 - c2 ||y-z||^2,
/// i.e. max over `count` sampled triples of
///   f(x,z) - f(x,y) - f(y,z) - c1 ||x-y||^2 - c2 ||y-z||^2.
/// A positive return certifies that the declared (c1, c2) are invalid.
double check_lipschitz_type(const Bifunction& f, const TripleSampler& sampler, int count);

/// Equilibrium residual of the instance's known solution: the minimum of
/// f_i(x*, y) over sampled y in K_i across all i. Values >= -1e-8 certify
/// the recorded solution at the shipped tolerance. nullopt when the
/// instance records no solution.
std::optional<double> known_solution_worst_residual(const CsepInstance& instance,
                                                    std::uint64_t seed,
                                                    int samples_per_set = 200);

/// Constant schedules lambda(k,i) == lambda_value, gamma(k,i) == gamma_value
/// with envelope [lambda_value, lambda_value] and epsilon = gamma_value.
SolverParams make_constant_params(const CsepInstance& instance, Vector x0,
                                  double lambda_value, double gamma_value = 0.5);

/// Envelope-respecting defaults: [lambda_lo, lambda_hi] = [0.09, 0.9] * B
/// with B = min{1/(2 c1), 1/(2 c2)}, constant lambda == (lo + hi)/2 and
/// gamma == 1/2. Throws std::invalid_argument when both constants are zero:
/// no finite envelope is implied then, so lambda must be supplied by the
/// caller (use make_constant_params).
SolverParams make_default_params(const CsepInstance& instance, Vector x0);

}  // namespace ceqp
