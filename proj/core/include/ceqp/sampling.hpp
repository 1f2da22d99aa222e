#pragma once

#include "ceqp/sets.hpp"
#include "ceqp/types.hpp"

#include <array>
#include <cstdint>
#include <functional>

namespace ceqp {

using PointSampler = std::function<Vector()>;
using TripleSampler = std::function<std::array<Vector, 3>()>;

/// Independent N(0, scale^2) coordinates.
PointSampler gaussian_point_sampler(int dim, std::uint64_t seed, double scale = 1.0);

TripleSampler gaussian_triple_sampler(int dim, std::uint64_t seed, double scale = 1.0);

/// Feasible points of `set`, drawn by projecting Gaussian clouds around
/// `center` at a few mixed radii.
PointSampler set_point_sampler(const ConvexSet& set, const Vector& center,
                               std::uint64_t seed, double scale = 1.0);

}  // namespace ceqp
