#pragma once

#include "ceqp/instance.hpp"
#include "ceqp/instances.hpp"
#include "ceqp/trace.hpp"
#include "ceqp/types.hpp"

#include <cstdint>
#include <iosfwd>
#include <limits>
#include <optional>
#include <string>

namespace ceqp {

enum class Algo { Parallel, Cyclic };
enum class TraceFormat { Csv, Json };

/// Batch-run description. Exit codes produced by run():
///   0 converged / fixed point, 2 iteration cap, 3 inconsistent cuts,
///   4 prox failure, 5 invariant violation.
struct RunConfig {
  std::string instance_path;
  Algo algo = Algo::Parallel;
  std::optional<double> lambda;  ///< constant step; default derives from the instance
  double gamma = 0.5;
  int max_iter = 1000;
  double tol = 1e-9;
  double tol_inner = 1e-10;
  std::optional<Vector> x0;  ///< overrides the instance file's x0
  std::string trace_path;
  TraceFormat trace_format = TraceFormat::Csv;
  bool check_invariants = true;
  std::uint64_t seed = 0;
  int workers = 0;
  /// Off by default so identical configurations produce byte-identical
  /// trace files; switching it on fills the wall_ms column.
  bool emit_timing = false;
};

struct RunOutcome {
  int exit_code = 0;
  std::string stop_reason;  // "converged", "fixed_point", "max_iter" or the error kind
  std::string message;      // error detail when exit_code >= 3
  Vector final;
  int iterations = 0;
  double max_invariant_violation = std::numeric_limits<double>::quiet_NaN();
};

struct LoadedInstance {
  CsepInstance instance;
  std::optional<Vector> x0;
};

/// Parses and fully constructs an instance file, running the build-time
/// checks (Lipschitz-type certificates for the families that declare or
/// derive constants, known-solution certification). Throws ParseError with
/// file/field context or ValidationError naming the violated invariant.
CsepInstance load_instance(const std::string& path);
LoadedInstance load_instance_file(const std::string& path, std::uint64_t seed = 0);

void write_trace_csv(const IterateTrace& trace, std::ostream& out, bool emit_timing = false);
void write_trace_json(const IterateTrace& trace, std::ostream& out, bool emit_timing = false);

/// JSON text of an instance file equivalent to the recipe.
std::string instance_file_text(const InstanceRecipe& recipe,
                               std::optional<Vector> x0 = std::nullopt);
void save_instance_file(const InstanceRecipe& recipe, const std::string& path,
                        std::optional<Vector> x0 = std::nullopt);

/// One-line JSON summary {final, iterations, stop_reason, max_invariant_violation}.
std::string summary_json(const RunOutcome& outcome);

/// Loads, validates, solves and writes the trace file. Solver failures are
/// mapped to exit codes as documented on RunConfig; parse/validation errors
/// propagate as exceptions.
RunOutcome run(const RunConfig& config);

}  // namespace ceqp
