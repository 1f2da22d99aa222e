#pragma once

#include <ceqp/sets.hpp>
#include <ceqp/types.hpp>

#include <optional>
#include <vector>

namespace ceqp_test {

// Brute-force nearest point of x0 in an intersection of halfspaces:
// enumerate every active subset, solve the equality KKT system by
// Gauss-Jordan elimination on hand-rolled dense containers (independent of
// the library's Eigen path), keep the feasible candidate closest to x0.
// Returns nullopt when no candidate is feasible (empty intersection).
std::optional<ceqp::Vector> qp_project(const std::vector<ceqp::Halfspace>& cuts,
                                       const ceqp::Vector& x0);

}  // namespace ceqp_test
