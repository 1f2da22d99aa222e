#include <benchmark/benchmark.h>

#include <ceqp/cuts.hpp>
#include <ceqp/sets.hpp>

#include <random>
#include <vector>

namespace {

using ceqp::Halfspace;
using ceqp::Vector;

Vector random_vector(int dim, std::mt19937_64& rng, double scale = 1.0) {
  std::normal_distribution<double> normal(0.0, 1.0);
  Vector v(dim);
  for (int i = 0; i < dim; ++i) v(i) = scale * normal(rng);
  return v;
}

std::vector<Halfspace> feasible_system(int dim, int count, std::mt19937_64& rng) {
  std::uniform_real_distribution<double> margin(0.0, 2.0);
  const Vector witness = random_vector(dim, rng);
  std::vector<Halfspace> cuts;
  for (int i = 0; i < count; ++i) {
    const Vector a = random_vector(dim, rng);
    cuts.push_back(Halfspace{a, a.dot(witness) + margin(rng)});
  }
  return cuts;
}

void bm_halfspace_intersection(benchmark::State& state) {
  const int dim = 8;
  const int count = static_cast<int>(state.range(0));
  std::mt19937_64 rng(1);
  const auto cuts = feasible_system(dim, count, rng);
  const Vector x0 = random_vector(dim, rng, 2.0);
  for (auto _ : state)
    benchmark::DoNotOptimize(ceqp::project_halfspace_intersection(cuts, x0, 1e-12));
}
BENCHMARK(bm_halfspace_intersection)->Arg(2)->Arg(4)->Arg(8)->Arg(12);

void bm_dykstra_intersection(benchmark::State& state) {
  const int dim = 8;
  std::mt19937_64 rng(2);
  const auto cuts = feasible_system(dim, static_cast<int>(state.range(0)), rng);
  const Vector x0 = random_vector(dim, rng, 2.0);
  for (auto _ : state)
    benchmark::DoNotOptimize(ceqp::project_halfspace_intersection(cuts, x0, 1e-9));
}
BENCHMARK(bm_dykstra_intersection)->Arg(16)->Arg(24);

void bm_two_halfspace_formula(benchmark::State& state) {
  const int dim = 8;
  std::mt19937_64 rng(3);
  const auto cuts = feasible_system(dim, 2, rng);
  const Vector x0 = random_vector(dim, rng, 2.0);
  for (auto _ : state)
    benchmark::DoNotOptimize(ceqp::project_two_halfspaces(x0, cuts[0], cuts[1]));
}
BENCHMARK(bm_two_halfspace_formula);

void bm_ball_projection(benchmark::State& state) {
  const int dim = static_cast<int>(state.range(0));
  std::mt19937_64 rng(4);
  const ceqp::ConvexSet ball = ceqp::make_ball(Vector::Zero(dim), 1.0);
  const Vector x = random_vector(dim, rng, 3.0);
  for (auto _ : state) benchmark::DoNotOptimize(ceqp::project(ball, x));
}
BENCHMARK(bm_ball_projection)->Arg(8)->Arg(64);

}  // namespace

BENCHMARK_MAIN();
