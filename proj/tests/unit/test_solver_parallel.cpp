#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <ceqp/diagnostics.hpp>
#include <ceqp/instances.hpp>
#include <ceqp/solver_parallel.hpp>
#include <ceqp/validate.hpp>

#include "qp_oracle.hpp"
#include "test_support.hpp"

#include <array>
#include <random>

using namespace ceqp;

namespace {

Vector vec2(double a, double b) {
  Vector v(2);
  v << a, b;
  return v;
}

CsepInstance two_halfspace_cfp() {
  return make_cfp({make_halfspace(vec2(1, 0), 0.0), make_halfspace(vec2(0, 1), 0.0)},
                  vec2(-0.5, -0.5));
}

// N = 3 strongly monotone linear operators on boxes around the origin;
// each VI has the unique solution 0, so the common solution set is {0}.
CsepInstance monotone_vi_instance(int dim) {
  Matrix d3 = Matrix::Zero(dim, dim);
  for (int d = 0; d < dim; ++d) d3(d, d) = 1.3 + 0.2 * d / std::max(1, dim - 1);
  std::vector<LinearOp> ops;
  const Matrix ident = Matrix::Identity(dim, dim);
  const std::array<Matrix, 3> mats{Matrix(1.0 * ident), Matrix(1.25 * ident), d3};
  for (int i = 0; i < 3; ++i) {
    const double extent = 1.0 + 0.5 * i;
    ops.push_back(LinearOp{mats[i], Vector::Zero(dim),
                           make_box(Vector::Constant(dim, -extent),
                                    Vector::Constant(dim, extent))});
  }
  return make_linear_vi(std::move(ops));
}

}  // namespace

TEST_CASE("hand-checkable single step on a ball instance") {
  // f(x,y) = <x, y-x> on the unit ball, x0 = (2, 0), lambda = 1/4, gamma = 1/2.
  const CsepInstance inst = make_linear_vi(
      {LinearOp{Matrix::Identity(2, 2), Vector::Zero(2), make_ball(vec2(0, 0), 1.0)}});
  SolverParams params = make_constant_params(inst, vec2(2, 0), 0.25, 0.5);

  const ParallelState s0 = init_parallel(inst, params);
  const ParallelState s1 = step_parallel(s0, inst, params);

  CHECK(s1.y[0].isApprox(vec2(1, 0), 1e-15));  // P_K(1.5, 0)
  CHECK(s1.z[0].isApprox(vec2(1, 0), 1e-15));  // P_K(1.75, 0)
  REQUIRE(s1.cuts[0].has_value());
  // cut {z1 <= 1.5}: a = x - z = (1, 0), v = (1.5, 0)
  CHECK(s1.cuts[0]->a.isApprox(vec2(1, 0), 1e-15));
  CHECK(s1.cuts[0]->b == doctest::Approx(1.5));
  CHECK_FALSE(s1.anchor_cut.has_value());  // W vacuous at n = 0
  CHECK(s1.x.isApprox(vec2(1.5, 0), 1e-15));
}

TEST_CASE("zero bifunctions reduce the extragradient pair to projections") {
  const CsepInstance inst = make_cfp(
      {make_box(vec2(-1, -1), vec2(1, 1)), make_ball(vec2(0, 0), 2.0)}, vec2(0, 0));
  SolverParams params = make_constant_params(inst, vec2(3, 2), 1.0, 0.5);
  const ParallelState s1 = step_parallel(init_parallel(inst, params), inst, params);
  CHECK(s1.y[0].isApprox(project(inst.pairs[0].set, vec2(3, 2)), 1e-15));
  CHECK(s1.z[0] == s1.y[0]);
  CHECK(s1.y[1].isApprox(project(inst.pairs[1].set, vec2(3, 2)), 1e-15));
}

TEST_CASE("a start inside the solution set stops as a fixed point immediately") {
  const CsepInstance inst = two_halfspace_cfp();
  SolverParams params = make_constant_params(inst, vec2(-0.5, -0.25), 1.0, 0.5);
  params.max_iter = 50;
  const RunResult result = run_parallel(inst, params);
  CHECK(result.trace.stop == StopReason::FixedPoint);
  CHECK(result.trace.records.size() == 1);
  CHECK(result.final.isApprox(vec2(-0.5, -0.25), 1e-15));
}

TEST_CASE("CFP run converges to the oracle projection of x0") {
  const CsepInstance inst = two_halfspace_cfp();
  SolverParams params = make_constant_params(inst, vec2(1, 1), 1.0, 0.5);
  params.max_iter = 5000;
  params.tol_stop = 1e-10;
  const RunResult result = run_parallel(inst, params);

  std::vector<Halfspace> faces{std::get<Halfspace>(inst.pairs[0].set),
                               std::get<Halfspace>(inst.pairs[1].set)};
  const auto oracle = ceqp_test::qp_project(faces, vec2(1, 1));
  REQUIRE(oracle.has_value());
  CHECK((result.final - *oracle).norm() <= 1e-6);
  CHECK(result.trace.stop != StopReason::MaxIter);

  // vanishing residuals on the convergent tail
  CHECK(diag::residuals_vanish(result.trace, 1, 1e-6));
  CHECK_FALSE(diag::residuals_vanish(result.trace, static_cast<int>(result.trace.records.size()), 1e-6));
}

TEST_CASE("monotone VI family converges to the common solution 0") {
  const CsepInstance inst = monotone_vi_instance(3);
  SolverParams params = make_default_params(inst, (Vector(3) << 0.9, -0.7, 0.8).finished());
  params.max_iter = 5000;
  params.tol_stop = 1e-7;
  const RunResult result = run_parallel(inst, params);
  CHECK(result.final.norm() <= 1e-3);
}

TEST_CASE("per-iteration lemma diagnostics hold along a run") {
  const CsepInstance inst = monotone_vi_instance(3);
  REQUIRE(inst.known_solution.has_value());
  SolverParams params = make_default_params(inst, (Vector(3) << 1.0, 0.5, -0.8).finished());
  params.max_iter = 3000;
  const RunResult result = run_parallel(inst, params);

  CHECK(result.trace.max_fejer_slack() <= 1e-8);
  CHECK(result.trace.max_containment_violation() <= 1e-8);
  CHECK(diag::anchor_monotonicity_slack(result.trace) <= 1e-10);

  // bounded by the solution distance (x* = 0 here)
  const double solution_dist = (params.x0 - *inst.known_solution).norm();
  for (const auto& rec : result.trace.records)
    CHECK(rec.anchor_dist <= solution_dist + 1e-8);
}

TEST_CASE("reduction equivalence with the explicit projection recursion") {
  const CsepInstance inst = monotone_vi_instance(4);
  const Vector x0 = (Vector(4) << 0.8, -0.5, 0.3, 0.9).finished();
  SolverParams params = make_default_params(inst, x0);

  ParallelState state = init_parallel(inst, params);
  Vector x_explicit = x0;
  const double lam = params.lambda_schedule(0, 1);
  for (int n = 0; n < 30; ++n) {
    const ParallelState next = step_parallel(state, inst, params);

    // Explicit projection recursion: y = P_K(x - lam A(x)), z = P_K(x - lam A(y)).
    std::vector<Halfspace> cuts;
    for (int i = 0; i < inst.count(); ++i) {
      const auto& pair = inst.pairs[i];
      const Vector y = project(pair.set, x_explicit - lam * pair.f.linear_operator(x_explicit));
      const Vector z = project(pair.set, x_explicit - lam * pair.f.linear_operator(y));
      CHECK((next.y[i] - y).norm() <= 1e-10);
      CHECK((next.z[i] - z).norm() <= 1e-10);
      const auto cut = build_cut(x_explicit, z, 0.5);
      if (cut) cuts.push_back(*cut);
    }
    const auto anchor = build_anchor_cut(x0, x_explicit);
    if (anchor) cuts.push_back(*anchor);
    x_explicit = cuts.empty() ? x0 : project_halfspace_intersection(cuts, x0, 1e-12);
    CHECK((next.x - x_explicit).norm() <= 1e-10);

    state = next;
    if (state.stopped) break;
  }
}

TEST_CASE("traces are identical across worker counts") {
  const CsepInstance inst = monotone_vi_instance(3);
  SolverParams params = make_default_params(inst, (Vector(3) << 0.3, 0.9, -0.2).finished());
  params.max_iter = 200;
  params.tol_stop = 1e-12;

  params.workers = 1;
  const RunResult serial = run_parallel(inst, params);
  params.workers = 4;
  const RunResult threaded = run_parallel(inst, params);

  REQUIRE(serial.trace.records.size() == threaded.trace.records.size());
  for (std::size_t k = 0; k < serial.trace.records.size(); ++k) {
    const auto& a = serial.trace.records[k];
    const auto& b = threaded.trace.records[k];
    CHECK(a.x == b.x);  // bitwise
    CHECK(a.step_norm == b.step_norm);
    CHECK(a.y_dist == b.y_dist);
    CHECK(a.z_dist == b.z_dist);
  }
}

TEST_CASE("a bogus known solution trips the invariant abort") {
  // Containment of the anchor cut fails for a point outside the solution
  // set; construct the instance directly to bypass load-time certification.
  CsepInstance inst = two_halfspace_cfp();
  inst.known_solution = vec2(2.0, 2.0);
  SolverParams params = make_constant_params(inst, vec2(1, 1), 1.0, 0.5);
  params.max_iter = 100;
  CHECK_THROWS_AS(run_parallel(inst, params), InvariantViolationError);

  params.check_invariants = false;  // diagnostics still recorded, no abort
  const RunResult result = run_parallel(inst, params);
  CHECK(result.trace.max_containment_violation() > 1e-8);
}

TEST_CASE("rejected parameters fail fast") {
  const CsepInstance inst = make_linear_vi(
      {LinearOp{Matrix::Identity(2, 2), Vector::Zero(2), make_ball(vec2(0, 0), 1.0)}});
  SolverParams params = make_constant_params(inst, vec2(1, 1), 5.0, 0.5);  // lambda too big
  CHECK_THROWS_AS(run_parallel(inst, params), std::invalid_argument);
}
