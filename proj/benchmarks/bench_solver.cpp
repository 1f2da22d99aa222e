#include <benchmark/benchmark.h>

#include <ceqp/instances.hpp>
#include <ceqp/prox.hpp>
#include <ceqp/solver_cyclic.hpp>
#include <ceqp/solver_parallel.hpp>
#include <ceqp/validate.hpp>

#include <random>

namespace {

using namespace ceqp;

CsepInstance vi_family(int dim, int count, std::mt19937_64& rng) {
  std::normal_distribution<double> normal(0.0, 1.0);
  std::vector<LinearOp> ops;
  for (int i = 0; i < count; ++i) {
    Matrix skew(dim, dim);
    for (int r = 0; r < dim; ++r)
      for (int c = 0; c < dim; ++c) skew(r, c) = 0.3 * normal(rng);
    skew = Matrix(0.5 * (skew - skew.transpose()));
    ops.push_back(LinearOp{Matrix(Matrix::Identity(dim, dim) + skew), Vector::Zero(dim),
                           make_box(Vector::Constant(dim, -1.0), Vector::Constant(dim, 1.0))});
  }
  return make_linear_vi(std::move(ops));
}

void bm_parallel_step(benchmark::State& state) {
  std::mt19937_64 rng(1);
  const int n_sub = static_cast<int>(state.range(0));
  const CsepInstance inst = vi_family(16, n_sub, rng);
  Vector x0(16);
  std::normal_distribution<double> normal(0.0, 1.0);
  for (int i = 0; i < 16; ++i) x0(i) = 0.5 * normal(rng);
  SolverParams params = make_default_params(inst, x0);
  params.workers = 1;
  const ParallelState s0 = init_parallel(inst, params);
  for (auto _ : state) benchmark::DoNotOptimize(step_parallel(s0, inst, params));
}
BENCHMARK(bm_parallel_step)->Arg(1)->Arg(4)->Arg(11);

void bm_cyclic_step(benchmark::State& state) {
  std::mt19937_64 rng(2);
  const CsepInstance inst = vi_family(16, static_cast<int>(state.range(0)), rng);
  Vector x0(16);
  std::normal_distribution<double> normal(0.0, 1.0);
  for (int i = 0; i < 16; ++i) x0(i) = 0.5 * normal(rng);
  SolverParams params = make_default_params(inst, x0);
  const CyclicState s0 = init_cyclic(inst, params);
  for (auto _ : state) benchmark::DoNotOptimize(step_cyclic(s0, inst, params));
}
BENCHMARK(bm_cyclic_step)->Arg(1)->Arg(4)->Arg(11);

void bm_nash_cournot_prox(benchmark::State& state) {
  Matrix p(2, 2), q(2, 2);
  p << 1.5, 0.3, 0.3, 1.2;
  q << 1.0, 0.2, 0.2, 0.8;
  Vector qv(2);
  qv << 0.4, -0.3;
  const Bifunction f = nash_cournot_bifunction(p, q, qv);
  const ConvexSet box = make_box(Vector::Constant(2, -2.0), Vector::Constant(2, 2.0));
  const Vector x = (Vector(2) << 1.5, 1.0).finished();
  for (auto _ : state)
    benchmark::DoNotOptimize(solve_prox(f, x, x, 0.5, box, 1e-10));
}
BENCHMARK(bm_nash_cournot_prox);

}  // namespace

BENCHMARK_MAIN();
