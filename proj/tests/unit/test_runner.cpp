#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <ceqp/runner.hpp>
#include <ceqp/validate.hpp>

#include "test_support.hpp"

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>

using namespace ceqp;

namespace {

std::filesystem::path fixture(const char* name) {
  return std::filesystem::path(CEQP_FIXTURE_DIR) / name;
}

std::filesystem::path temp_file(const char* name) {
  return std::filesystem::temp_directory_path() / name;
}

void write_file(const std::filesystem::path& path, const std::string& text) {
  std::ofstream out(path);
  REQUIRE(out.good());
  out << text;
}

std::string read_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  REQUIRE(in.good());
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

}  // namespace

TEST_CASE("loading the CFP fixture") {
  const LoadedInstance loaded = load_instance_file(fixture("cfp_two_halfspaces.json").string());
  CHECK(loaded.instance.count() == 2);
  CHECK(loaded.instance.dimension == 2);
  CHECK(loaded.instance.feasible_region_is_polyhedral);
  REQUIRE(loaded.instance.known_solution.has_value());
  REQUIRE(loaded.x0.has_value());
  CHECK((*loaded.x0 - (Vector(2) << 1, 1).finished()).norm() == 0.0);
}

TEST_CASE("schema violations carry field context") {
  const auto bad_box = temp_file("ceqp_bad_box.json");
  write_file(bad_box, R"({
    "dimension": 2,
    "sets": [{"kind": "box", "lower": [1, 1], "upper": [0, 0]}],
    "bifunctions": [{"kind": "zero"}]
  })");
  CHECK_THROWS_WITH_AS(load_instance(bad_box.string()),
                       doctest::Contains("box bounds inverted"), ValidationError);

  const auto bad_json = temp_file("ceqp_bad_json.json");
  write_file(bad_json, "{ not json");
  CHECK_THROWS_AS(load_instance(bad_json.string()), ParseError);

  const auto unknown_kind = temp_file("ceqp_unknown_kind.json");
  write_file(unknown_kind, R"({
    "dimension": 1,
    "sets": [{"kind": "moebius"}],
    "bifunctions": [{"kind": "zero"}]
  })");
  CHECK_THROWS_WITH_AS(load_instance(unknown_kind.string()),
                       doctest::Contains("sets[0]"), ParseError);

  CHECK_THROWS_AS(load_instance((fixture("does_not_exist.json")).string()), ParseError);
}

TEST_CASE("a declared Lipschitz constant below the spectral norm is rejected") {
  const auto path = temp_file("ceqp_small_l.json");
  write_file(path, R"({
    "dimension": 2,
    "sets": [{"kind": "ball", "center": [0, 0], "radius": 1.0}],
    "bifunctions": [{"kind": "linear_vi", "m": [[2.0, 0.0], [0.0, 2.0]], "q": [0, 0], "l": 1.0}],
    "x0": [1, 1]
  })");
  CHECK_THROWS_WITH_AS(load_instance(path.string()),
                       doctest::Contains("Lipschitz-type violation"), ValidationError);

  // honest declaration loads fine
  const auto ok_path = temp_file("ceqp_good_l.json");
  write_file(ok_path, R"({
    "dimension": 2,
    "sets": [{"kind": "ball", "center": [0, 0], "radius": 1.0}],
    "bifunctions": [{"kind": "linear_vi", "m": [[2.0, 0.0], [0.0, 2.0]], "q": [0, 0], "l": 2.0}],
    "x0": [1, 1]
  })");
  const CsepInstance inst = load_instance(ok_path.string());
  CHECK(inst.max_c1() == doctest::Approx(1.0));
}

TEST_CASE("a bogus known solution in the file is rejected at load time") {
  const auto path = temp_file("ceqp_bad_solution.json");
  write_file(path, R"({
    "dimension": 2,
    "sets": [{"kind": "ball", "center": [0, 0], "radius": 2.0}],
    "bifunctions": [{"kind": "linear_vi", "m": [[1.0, 0.0], [0.0, 1.0]], "q": [0, 0]}],
    "known_solution": [1.5, 0.0]
  })");
  CHECK_THROWS_WITH_AS(load_instance(path.string()),
                       doctest::Contains("known_solution"), ValidationError);
}

TEST_CASE("run: CFP fixture with both algorithms") {
  RunConfig config;
  config.instance_path = fixture("cfp_two_halfspaces.json").string();
  config.lambda = 1.0;
  config.max_iter = 5000;
  config.tol = 1e-10;
  config.trace_path = temp_file("ceqp_cfp_trace.csv").string();

  const RunOutcome parallel = run(config);
  REQUIRE_MESSAGE(parallel.exit_code == 0, parallel.message);
  CHECK(parallel.final.norm() <= 1e-6);

  config.algo = Algo::Cyclic;
  const RunOutcome cyclic = run(config);
  REQUIRE_MESSAGE(cyclic.exit_code == 0, cyclic.message);
  CHECK((parallel.final - cyclic.final).norm() <= 1e-6);

  const std::string trace = read_file(config.trace_path);
  CHECK(trace.rfind("n,active_index,x_norm_change,anchor_dist,max_y_residual,"
                    "max_z_residual,fejer_slack,containment_ok,wall_ms\n",
                    0) == 0);
  std::filesystem::remove(config.trace_path);
}

TEST_CASE("run: iteration cap maps to exit 2 with one trace row") {
  RunConfig config;
  config.instance_path = fixture("cfp_two_halfspaces.json").string();
  config.lambda = 1.0;
  config.max_iter = 1;
  config.trace_path = temp_file("ceqp_capped_trace.csv").string();
  const RunOutcome outcome = run(config);
  CHECK(outcome.exit_code == 2);
  CHECK(outcome.stop_reason == "max_iter");
  CHECK(outcome.iterations == 1);

  const std::string trace = read_file(config.trace_path);
  int lines = 0;
  for (char c : trace)
    if (c == '\n') ++lines;
  CHECK(lines == 2);  // header + one record
  std::filesystem::remove(config.trace_path);
}

TEST_CASE("run: repeated configurations produce byte-identical traces") {
  RunConfig config;
  config.instance_path = fixture("linear_vi_r5.json").string();
  config.max_iter = 300;
  config.tol = 1e-12;
  config.trace_path = temp_file("ceqp_det_a.csv").string();
  config.workers = 1;
  const RunOutcome a = run(config);

  config.trace_path = temp_file("ceqp_det_b.csv").string();
  config.workers = 4;
  const RunOutcome b = run(config);

  CHECK(a.exit_code == b.exit_code);
  CHECK(read_file(temp_file("ceqp_det_a.csv")) == read_file(temp_file("ceqp_det_b.csv")));
  std::filesystem::remove(temp_file("ceqp_det_a.csv"));
  std::filesystem::remove(temp_file("ceqp_det_b.csv"));
}

TEST_CASE("run: json traces parse and match the csv row count") {
  RunConfig config;
  config.instance_path = fixture("cfp_two_halfspaces.json").string();
  config.lambda = 1.0;
  config.max_iter = 50;
  config.trace_format = TraceFormat::Json;
  config.trace_path = temp_file("ceqp_trace.json").string();
  const RunOutcome outcome = run(config);
  REQUIRE(outcome.exit_code == 0);

  const std::string text = read_file(config.trace_path);
  CHECK(text.find("\"stop_reason\"") != std::string::npos);
  CHECK(text.find("\"records\"") != std::string::npos);
  std::filesystem::remove(config.trace_path);
}

TEST_CASE("run: missing start point is a validation error") {
  const auto path = temp_file("ceqp_no_x0.json");
  write_file(path, R"({
    "dimension": 1,
    "sets": [{"kind": "ball", "center": [0], "radius": 1.0}],
    "bifunctions": [{"kind": "zero"}]
  })");
  RunConfig config;
  config.instance_path = path.string();
  config.lambda = 1.0;
  CHECK_THROWS_AS(run(config), ValidationError);

  config.x0 = (Vector(1) << 0.5).finished();
  const RunOutcome outcome = run(config);
  CHECK(outcome.exit_code == 0);
}

TEST_CASE("run: unreachable inner tolerance maps to exit 4") {
  RunConfig config;
  config.instance_path = fixture("nash_cournot_r2.json").string();
  config.max_iter = 50;
  config.tol_inner = 1e-300;
  const RunOutcome outcome = run(config);
  CHECK(outcome.exit_code == 4);
  CHECK(outcome.stop_reason == "prox_failure");
  CHECK(!outcome.message.empty());
}

TEST_CASE("run: a lemma violation aborts with exit 5 and the iteration number") {
  // f == 0 makes the sampled equilibrium-residual certification vacuous, so
  // a point outside the feasible region slips through the load gate; the
  // run then trips the cut-containment lemma check.
  const auto path = temp_file("ceqp_bogus_cfp.json");
  write_file(path, R"({
    "dimension": 2,
    "sets": [{"kind": "halfspace", "a": [1, 0], "b": 0.0},
             {"kind": "halfspace", "a": [0, 1], "b": 0.0}],
    "bifunctions": [{"kind": "zero"}, {"kind": "zero"}],
    "known_solution": [2.0, 2.0],
    "x0": [1, 1]
  })");
  RunConfig config;
  config.instance_path = path.string();
  config.lambda = 1.0;
  config.max_iter = 100;
  const RunOutcome outcome = run(config);
  CHECK(outcome.exit_code == 5);
  CHECK(outcome.stop_reason == "invariant_violation");
  CHECK(outcome.message.find("iteration") != std::string::npos);

  config.check_invariants = false;
  const RunOutcome tolerated = run(config);
  CHECK(tolerated.exit_code != 5);
  CHECK(tolerated.max_invariant_violation > 1e-8);
  std::filesystem::remove(path);
}

TEST_CASE("recipe serialization round-trips through the loader") {
  Vector witness(2);
  witness << -0.5, -0.5;
  const InstanceRecipe recipe = CfpRecipe{
      {make_halfspace((Vector(2) << 1, 0).finished(), 0.0),
       make_halfspace((Vector(2) << 0, 1).finished(), 0.0)},
      witness};
  const auto path = temp_file("ceqp_roundtrip.json");
  save_instance_file(recipe, path.string(), (Vector(2) << 1, 1).finished());

  const LoadedInstance loaded = load_instance_file(path.string());
  CHECK(loaded.instance.count() == 2);
  REQUIRE(loaded.instance.known_solution.has_value());
  CHECK((*loaded.instance.known_solution - witness).norm() == 0.0);
  REQUIRE(loaded.x0.has_value());
  std::filesystem::remove(path);
}

TEST_CASE("shipped fixtures satisfy the Lipschitz-type certificate") {
  for (const char* name : {"cfp_two_halfspaces.json", "cfp_axis_quadrant.json",
                           "linear_vi_r5.json", "fixed_point_pair.json",
                           "nash_cournot_r2.json"}) {
    const CsepInstance inst = load_instance(fixture(name).string());
    for (int i = 0; i < inst.count(); ++i) {
      auto sampler = gaussian_triple_sampler(inst.dimension, 40 + i, 2.0);
      CHECK(check_lipschitz_type(inst.pairs[i].f, sampler, 2000) <= 1e-10);
    }
  }
}

TEST_CASE("summary json carries the run record") {
  RunOutcome outcome;
  outcome.exit_code = 0;
  outcome.stop_reason = "converged";
  outcome.iterations = 12;
  outcome.final = (Vector(2) << 0.0, 1.0).finished();
  outcome.max_invariant_violation = 1e-12;
  const std::string text = summary_json(outcome);
  CHECK(text.find("\"stop_reason\":\"converged\"") != std::string::npos);
  CHECK(text.find("\"iterations\":12") != std::string::npos);
}
