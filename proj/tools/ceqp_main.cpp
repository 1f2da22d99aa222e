// Command-line front end: load an instance file, run one of the two
// solvers, write the iteration trace and print a one-line JSON summary.

#include "ceqp/runner.hpp"

#include <CLI11.hpp>

#include <iostream>
#include <map>
#include <string>
#include <vector>

int main(int argc, char** argv) {
  CLI::App app{"common-solution equilibrium problem solver"};
  app.require_subcommand(1);

  ceqp::RunConfig config;
  double lambda_value = 0.0;
  bool no_invariant_checks = false;
  std::vector<double> x0_values;

  auto* solve = app.add_subcommand("solve", "run one solver on an instance file");
  solve->add_option("--instance", config.instance_path, "instance file (JSON)")
      ->required()
      ->envname("CEQP_INSTANCE");
  solve
      ->add_option("--algo", config.algo, "solver variant")
      ->transform(CLI::CheckedTransformer(
          std::map<std::string, ceqp::Algo>{{"parallel", ceqp::Algo::Parallel},
                                            {"cyclic", ceqp::Algo::Cyclic}}))
      ->envname("CEQP_ALGO");
  auto* lambda_opt =
      solve->add_option("--lambda", lambda_value, "constant extragradient step")
          ->envname("CEQP_LAMBDA");
  solve->add_option("--gamma", config.gamma, "constant cut depth in (0, 1/2]")
      ->envname("CEQP_GAMMA");
  solve->add_option("--max-iter", config.max_iter, "outer iteration cap")
      ->envname("CEQP_MAX_ITER");
  solve->add_option("--tol", config.tol, "stopping tolerance")->envname("CEQP_TOL");
  solve->add_option("--tol-inner", config.tol_inner, "inner proximal-solve tolerance")
      ->envname("CEQP_TOL_INNER");
  solve->add_option("--x0", x0_values, "start point (overrides the instance file)")
      ->delimiter(',')
      ->envname("CEQP_X0");
  solve->add_option("--trace", config.trace_path, "trace output path")
      ->envname("CEQP_TRACE");
  solve
      ->add_option("--format", config.trace_format, "trace format")
      ->transform(CLI::CheckedTransformer(
          std::map<std::string, ceqp::TraceFormat>{{"csv", ceqp::TraceFormat::Csv},
                                                   {"json", ceqp::TraceFormat::Json}}))
      ->envname("CEQP_FORMAT");
  solve
      ->add_flag("--no-invariant-checks", no_invariant_checks,
                 "record lemma diagnostics without aborting on them")
      ->envname("CEQP_NO_INVARIANT_CHECKS");
  solve->add_option("--seed", config.seed, "seed for sampling diagnostics")
      ->envname("CEQP_SEED");
  solve->add_option("--workers", config.workers, "thread fan-out for the parallel solver")
      ->envname("CEQP_WORKERS");
  solve->add_flag("--emit-timing", config.emit_timing,
                  "fill the wall_ms trace column (breaks byte-for-byte determinism)")
      ->envname("CEQP_EMIT_TIMING");

  CLI11_PARSE(app, argc, argv);

  if (*lambda_opt) config.lambda = lambda_value;
  if (!x0_values.empty()) {
    ceqp::Vector x0(static_cast<Eigen::Index>(x0_values.size()));
    for (std::size_t i = 0; i < x0_values.size(); ++i)
      x0(static_cast<Eigen::Index>(i)) = x0_values[i];
    config.x0 = std::move(x0);
  }
  config.check_invariants = !no_invariant_checks;

  try {
    const ceqp::RunOutcome outcome = ceqp::run(config);
    std::cout << ceqp::summary_json(outcome) << "\n";
    if (!outcome.message.empty()) std::cerr << "error: " << outcome.message << "\n";
    return outcome.exit_code;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
}
