#include "ceqp/sampling.hpp"

#include <memory>
#include <random>

namespace ceqp {

namespace {

Vector gaussian(int dim, std::mt19937_64& rng, double scale) {
  std::normal_distribution<double> normal(0.0, 1.0);
  Vector v(dim);
  for (int i = 0; i < dim; ++i) v(i) = scale * normal(rng);
  return v;
}

}  // namespace

PointSampler gaussian_point_sampler(int dim, std::uint64_t seed, double scale) {
  auto rng = std::make_shared<std::mt19937_64>(seed);
  return [dim, rng, scale]() { return gaussian(dim, *rng, scale); };
}

TripleSampler gaussian_triple_sampler(int dim, std::uint64_t seed, double scale) {
  auto rng = std::make_shared<std::mt19937_64>(seed);
  return [dim, rng, scale]() {
    return std::array<Vector, 3>{gaussian(dim, *rng, scale), gaussian(dim, *rng, scale),
                                 gaussian(dim, *rng, scale)};
  };
}

PointSampler set_point_sampler(const ConvexSet& set, const Vector& center,
                               std::uint64_t seed, double scale) {
  auto rng = std::make_shared<std::mt19937_64>(seed);
  auto counter = std::make_shared<int>(0);
  const int dim = static_cast<int>(center.size());
  return [set, center, rng, counter, dim, scale]() -> Vector {
    static constexpr double kRadii[] = {0.3, 1.0, 3.0};
    const double r = kRadii[(*counter)++ % 3] * scale;
    return project(set, center + gaussian(dim, *rng, r));
  };
}

}  // namespace ceqp
