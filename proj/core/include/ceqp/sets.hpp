#pragma once

#include "ceqp/types.hpp"

#include <optional>
#include <span>
#include <variant>
#include <vector>

namespace ceqp {

struct WholeSpace {};

/// Axis-aligned box {z : lower <= z <= upper}.
struct Box {
  Vector lower;
  Vector upper;
};

struct Ball {
  Vector center;
  double radius = 0.0;
};

/// {z : <a, z> <= b} with a != 0. Normals are kept unnormalized.
struct Halfspace {
  Vector a;
  double b = 0.0;
};

struct Hyperplane {
  Vector a;
  double b = 0.0;
};

/// Finite intersection of halfspaces, certified nonempty by a stored
/// feasible witness.
struct Polyhedron {
  std::vector<Halfspace> faces;
  Vector witness;
};

using ConvexSet = std::variant<WholeSpace, Box, Ball, Halfspace, Hyperplane, Polyhedron>;

// Validating factories; throw std::invalid_argument on malformed data
// (inverted box bounds, zero normal, negative radius, infeasible witness).
Halfspace make_halfspace(Vector a, double b);
ConvexSet make_box(Vector lower, Vector upper);
ConvexSet make_ball(Vector center, double radius);
ConvexSet make_hyperplane(Vector a, double b);
ConvexSet make_polyhedron(std::vector<Halfspace> faces, Vector witness);

/// Intrinsic dimension, or nullopt for WholeSpace (any dimension fits).
std::optional<int> set_dimension(const ConvexSet& set);

/// Metric projection onto the set, exact per set kind; polyhedra route
/// through project_halfspace_intersection. Throws on dimension mismatch.
Vector project(const ConvexSet& set, const Vector& x);

/// True iff x violates each defining constraint of the set by at most tol.
bool contains(const ConvexSet& set, const Vector& x, double tol);

/// Nearest point to x0 in the intersection of `cuts`.
///
/// Up to 12 cuts: exact enumeration of active constraint subsets, with
/// feasibility classified relative to each cut's scale (`tol` plays no
/// role there). Beyond that: Dykstra's alternating projections, stopped
/// once the per-cycle increment change drops to tol. Throws
/// InconsistentCutsError when the intersection is detected to be empty
/// (no feasible candidate / increment divergence).
Vector project_halfspace_intersection(std::span<const Halfspace> cuts,
                                      const Vector& x0, double tol);

}  // namespace ceqp
