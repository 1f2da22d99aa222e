#include "ceqp/runner.hpp"

#include "ceqp/diagnostics.hpp"
#include "ceqp/solver_cyclic.hpp"
#include "ceqp/solver_parallel.hpp"
#include "ceqp/validate.hpp"

#include <nlohmann/json.hpp>

#include <cmath>
#include <fstream>
#include <sstream>
#include <string>

namespace ceqp {

namespace {

using nlohmann::json;

constexpr int kLoadCertSamples = 10000;
constexpr double kCertTol = 1e-10;
constexpr double kKnownSolutionTol = 1e-8;

Vector to_vector(const json& j, const std::string& where, int expected = -1) {
  if (!j.is_array()) throw ParseError(where + ": expected an array of numbers");
  Vector v(j.size());
  for (std::size_t i = 0; i < j.size(); ++i) {
    if (!j[i].is_number()) throw ParseError(where + ": entry " + std::to_string(i) + " is not a number");
    v(static_cast<Eigen::Index>(i)) = j[i].get<double>();
  }
  if (expected >= 0 && v.size() != expected)
    throw ParseError(where + ": expected " + std::to_string(expected) + " entries, got " +
                     std::to_string(v.size()));
  return v;
}

Matrix to_matrix(const json& j, const std::string& where, int dim) {
  if (!j.is_array() || j.size() != static_cast<std::size_t>(dim))
    throw ParseError(where + ": expected " + std::to_string(dim) + " rows");
  Matrix m(dim, dim);
  for (int r = 0; r < dim; ++r)
    m.row(r) = to_vector(j[r], where + " row " + std::to_string(r), dim).transpose();
  return m;
}

ConvexSet parse_set(const json& j, int dim, const std::string& where) {
  const std::string kind = j.at("kind").get<std::string>();
  try {
    if (kind == "whole_space") return WholeSpace{};
    if (kind == "box")
      return make_box(to_vector(j.at("lower"), where + ".lower", dim),
                      to_vector(j.at("upper"), where + ".upper", dim));
    if (kind == "ball")
      return make_ball(to_vector(j.at("center"), where + ".center", dim),
                       j.at("radius").get<double>());
    if (kind == "halfspace")
      return make_halfspace(to_vector(j.at("a"), where + ".a", dim), j.at("b").get<double>());
    if (kind == "hyperplane")
      return make_hyperplane(to_vector(j.at("a"), where + ".a", dim), j.at("b").get<double>());
    if (kind == "polyhedron") {
      std::vector<Halfspace> faces;
      for (std::size_t k = 0; k < j.at("faces").size(); ++k) {
        const auto& face = j.at("faces")[k];
        faces.push_back(make_halfspace(
            to_vector(face.at("a"), where + ".faces[" + std::to_string(k) + "].a", dim),
            face.at("b").get<double>()));
      }
      return make_polyhedron(std::move(faces),
                             to_vector(j.at("witness"), where + ".witness", dim));
    }
  } catch (const std::invalid_argument& e) {
    throw ValidationError(where + ": " + e.what());
  }
  throw ParseError(where + ": unknown set kind \"" + kind + "\"");
}

struct ParsedBifunction {
  Bifunction f;
  std::optional<Matrix> defect;  // directed-certificate operator, when affine
  bool certify = false;
};

ParsedBifunction parse_bifunction(const json& j, int dim, const std::string& where) {
  const std::string kind = j.at("kind").get<std::string>();
  try {
    if (kind == "zero") return {zero_bifunction(dim), std::nullopt, false};
    if (kind == "linear_vi") {
      Matrix m = to_matrix(j.at("m"), where + ".m", dim);
      Vector q = j.contains("q") ? to_vector(j.at("q"), where + ".q", dim)
                                 : Vector(Vector::Zero(dim));
      ParsedBifunction parsed;
      parsed.defect = m;
      if (j.contains("l")) {
        // A declared Lipschitz constant is trusted only after the sampled
        // certificate below confirms it.
        parsed.f = linear_vi_bifunction(std::move(m), std::move(q), j.at("l").get<double>());
        parsed.certify = true;
      } else {
        parsed.f = linear_vi_bifunction(std::move(m), std::move(q));
      }
      return parsed;
    }
    if (kind == "affine_fixed_point")
      return {affine_fixed_point_bifunction(to_matrix(j.at("linear"), where + ".linear", dim),
                                            to_vector(j.at("offset"), where + ".offset", dim)),
              std::nullopt, false};
    if (kind == "nash_cournot") {
      Matrix p = to_matrix(j.at("p"), where + ".p", dim);
      Matrix q_mat = to_matrix(j.at("q_mat"), where + ".q_mat", dim);
      Vector q_vec = to_vector(j.at("q_vec"), where + ".q_vec", dim);
      ParsedBifunction parsed;
      parsed.defect = p - q_mat.transpose();
      parsed.f = nash_cournot_bifunction(std::move(p), std::move(q_mat), std::move(q_vec));
      parsed.certify = true;
      return parsed;
    }
  } catch (const std::invalid_argument& e) {
    throw ValidationError(where + ": " + e.what());
  }
  throw ParseError(where + ": unknown bifunction kind \"" + kind + "\"");
}

json set_to_json(const ConvexSet& set) {
  return std::visit(
      [](const auto& s) -> json {
        using T = std::decay_t<decltype(s)>;
        json j;
        if constexpr (std::is_same_v<T, WholeSpace>) {
          j["kind"] = "whole_space";
        } else if constexpr (std::is_same_v<T, Box>) {
          j["kind"] = "box";
          j["lower"] = std::vector<double>(s.lower.begin(), s.lower.end());
          j["upper"] = std::vector<double>(s.upper.begin(), s.upper.end());
        } else if constexpr (std::is_same_v<T, Ball>) {
          j["kind"] = "ball";
          j["center"] = std::vector<double>(s.center.begin(), s.center.end());
          j["radius"] = s.radius;
        } else if constexpr (std::is_same_v<T, Halfspace>) {
          j["kind"] = "halfspace";
          j["a"] = std::vector<double>(s.a.begin(), s.a.end());
          j["b"] = s.b;
        } else if constexpr (std::is_same_v<T, Hyperplane>) {
          j["kind"] = "hyperplane";
          j["a"] = std::vector<double>(s.a.begin(), s.a.end());
          j["b"] = s.b;
        } else {
          j["kind"] = "polyhedron";
          j["faces"] = json::array();
          for (const auto& f : s.faces)
            j["faces"].push_back({{"a", std::vector<double>(f.a.begin(), f.a.end())},
                                  {"b", f.b}});
          j["witness"] = std::vector<double>(s.witness.begin(), s.witness.end());
        }
        return j;
      },
      set);
}

json matrix_to_json(const Matrix& m) {
  json rows = json::array();
  for (Eigen::Index r = 0; r < m.rows(); ++r) {
    json row = json::array();
    for (Eigen::Index c = 0; c < m.cols(); ++c) row.push_back(m(r, c));
    rows.push_back(std::move(row));
  }
  return rows;
}

json vector_to_json(const Vector& v) {
  return json(std::vector<double>(v.begin(), v.end()));
}

}  // namespace

LoadedInstance load_instance_file(const std::string& path, std::uint64_t seed) {
  std::ifstream in(path);
  if (!in) throw ParseError(path + ": cannot open instance file");
  json doc;
  try {
    doc = json::parse(in);
  } catch (const json::exception& e) {
    throw ParseError(path + ": " + e.what());
  }

  int dim = 0;
  std::vector<ParsedBifunction> parsed;
  std::vector<ConvexSet> sets;
  std::optional<Vector> known;
  std::optional<Vector> x0;
  try {
    if (!doc.contains("dimension") || !doc.at("dimension").is_number_integer())
      throw ParseError(path + ": missing integer field \"dimension\"");
    dim = doc.at("dimension").get<int>();
    if (dim <= 0) throw ValidationError(path + ": dimension must be positive");

    const auto& jsets = doc.at("sets");
    const auto& jfs = doc.at("bifunctions");
    if (!jsets.is_array() || !jfs.is_array() || jsets.size() != jfs.size() || jsets.empty())
      throw ParseError(path +
                       ": \"sets\" and \"bifunctions\" must be nonempty arrays of equal length");

    for (std::size_t i = 0; i < jsets.size(); ++i)
      sets.push_back(parse_set(jsets[i], dim, path + ": sets[" + std::to_string(i) + "]"));
    for (std::size_t i = 0; i < jfs.size(); ++i)
      parsed.push_back(
          parse_bifunction(jfs[i], dim, path + ": bifunctions[" + std::to_string(i) + "]"));

    if (doc.contains("known_solution"))
      known = to_vector(doc.at("known_solution"), path + ": known_solution", dim);
    if (doc.contains("x0")) x0 = to_vector(doc.at("x0"), path + ": x0", dim);
  } catch (const json::exception& e) {
    throw ParseError(path + ": " + e.what());
  }

  for (std::size_t i = 0; i < parsed.size(); ++i) {
    if (!parsed[i].certify) continue;
    const Matrix* defect = parsed[i].defect ? &*parsed[i].defect : nullptr;
    const double cert = detail::lipschitz_certificate(
        parsed[i].f, dim, seed + 7919 * static_cast<std::uint64_t>(i), kLoadCertSamples,
        defect);
    if (cert > kCertTol)
      throw ValidationError(path + ": bifunctions[" + std::to_string(i) +
                            "]: sampled Lipschitz-type violation " + std::to_string(cert) +
                            " exceeds " + std::to_string(kCertTol) +
                            " for the declared constants");
  }

  std::vector<SubproblemPair> pairs;
  pairs.reserve(parsed.size());
  for (std::size_t i = 0; i < parsed.size(); ++i)
    pairs.push_back({std::move(parsed[i].f), std::move(sets[i])});

  LoadedInstance loaded;
  try {
    loaded.instance = make_instance(dim, std::move(pairs), std::move(known));
  } catch (const std::invalid_argument& e) {
    throw ValidationError(path + ": " + e.what());
  }
  loaded.x0 = std::move(x0);

  if (loaded.instance.known_solution) {
    const auto residual = known_solution_worst_residual(loaded.instance, seed);
    if (residual && *residual < -kKnownSolutionTol)
      throw ValidationError(path + ": known_solution fails the sampled equilibrium "
                            "residual check (worst residual " +
                            std::to_string(*residual) + ")");
  }
  return loaded;
}

CsepInstance load_instance(const std::string& path) {
  return load_instance_file(path).instance;
}

std::string instance_file_text(const InstanceRecipe& recipe, std::optional<Vector> x0) {
  // Build once to validate and to pick up derived data (known solution,
  // fixed-point boxes); serialize from the recipe itself.
  const CsepInstance built = build_instance(recipe);

  json doc;
  doc["dimension"] = built.dimension;
  json jsets = json::array();
  json jfs = json::array();

  std::visit(
      [&](const auto& r) {
        using T = std::decay_t<decltype(r)>;
        if constexpr (std::is_same_v<T, CfpRecipe>) {
          for (const auto& s : r.sets) {
            jsets.push_back(set_to_json(s));
            jfs.push_back({{"kind", "zero"}});
          }
        } else if constexpr (std::is_same_v<T, LinearViRecipe>) {
          for (const auto& op : r.ops) {
            jsets.push_back(set_to_json(op.set));
            jfs.push_back({{"kind", "linear_vi"},
                           {"m", matrix_to_json(op.m)},
                           {"q", vector_to_json(op.q)}});
          }
        } else if constexpr (std::is_same_v<T, FixedPointRecipe>) {
          const ConvexSet box = detail::fixed_point_box(r.maps, r.reference);
          for (const auto& map : r.maps) {
            jsets.push_back(set_to_json(box));
            jfs.push_back({{"kind", "affine_fixed_point"},
                           {"linear", matrix_to_json(map.linear)},
                           {"offset", vector_to_json(map.offset)}});
          }
        } else {
          for (int i = 0; i < r.copies; ++i) {
            jsets.push_back(set_to_json(r.box));
            jfs.push_back({{"kind", "nash_cournot"},
                           {"p", matrix_to_json(r.p)},
                           {"q_mat", matrix_to_json(r.q_mat)},
                           {"q_vec", vector_to_json(r.q_vec)}});
          }
        }
      },
      recipe);

  doc["sets"] = std::move(jsets);
  doc["bifunctions"] = std::move(jfs);
  if (built.known_solution) doc["known_solution"] = vector_to_json(*built.known_solution);
  if (x0) doc["x0"] = vector_to_json(*x0);
  return doc.dump(2) + "\n";
}

void save_instance_file(const InstanceRecipe& recipe, const std::string& path,
                        std::optional<Vector> x0) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error(path + ": cannot open for writing");
  out << instance_file_text(recipe, std::move(x0));
}

std::string summary_json(const RunOutcome& outcome) {
  nlohmann::ordered_json doc;
  if (outcome.final.size() > 0)
    doc["final"] = vector_to_json(outcome.final);
  else
    doc["final"] = nullptr;
  doc["iterations"] = outcome.iterations;
  doc["stop_reason"] = outcome.stop_reason;
  if (std::isnan(outcome.max_invariant_violation))
    doc["max_invariant_violation"] = nullptr;
  else
    doc["max_invariant_violation"] = outcome.max_invariant_violation;
  doc["exit_code"] = outcome.exit_code;
  if (!outcome.message.empty()) doc["message"] = outcome.message;
  return doc.dump();
}

RunOutcome run(const RunConfig& config) {
  LoadedInstance loaded = load_instance_file(config.instance_path, config.seed);
  const CsepInstance& instance = loaded.instance;

  Vector x0;
  if (config.x0)
    x0 = *config.x0;
  else if (loaded.x0)
    x0 = *loaded.x0;
  else
    throw ValidationError(config.instance_path +
                          ": no start point; pass --x0 or add an \"x0\" field");

  SolverParams params =
      config.lambda ? make_constant_params(instance, std::move(x0), *config.lambda,
                                           config.gamma)
                    : make_default_params(instance, std::move(x0));
  if (!config.lambda) {
    const double gamma = config.gamma;
    params.epsilon = gamma;
    params.gamma_schedule = [gamma](int, int) { return gamma; };
  }
  params.max_iter = config.max_iter;
  params.tol_stop = config.tol;
  params.tol_inner = config.tol_inner;
  params.check_invariants = config.check_invariants;
  params.workers = config.workers;

  const auto report = validate_params(params, instance);
  if (!report.pass) throw ValidationError(report.to_string());

  RunOutcome outcome;
  try {
    const RunResult result = config.algo == Algo::Parallel ? run_parallel(instance, params)
                                                           : run_cyclic(instance, params);
    if (!config.trace_path.empty()) {
      std::ofstream out(config.trace_path, std::ios::binary);
      if (!out)
        throw std::runtime_error(config.trace_path + ": cannot open trace file for writing");
      if (config.trace_format == TraceFormat::Csv)
        write_trace_csv(result.trace, out, config.emit_timing);
      else
        write_trace_json(result.trace, out, config.emit_timing);
    }
    outcome.final = result.final;
    outcome.iterations = static_cast<int>(result.trace.records.size());
    outcome.stop_reason = to_string(result.trace.stop);
    double violation = diag::anchor_monotonicity_slack(result.trace);
    for (double v : {result.trace.max_fejer_slack(), result.trace.max_containment_violation()})
      if (!std::isnan(v)) violation = std::max(violation, v);
    outcome.max_invariant_violation = violation;
    outcome.exit_code = result.trace.stop == StopReason::MaxIter ? 2 : 0;
  } catch (const InconsistentCutsError& e) {
    outcome.exit_code = 3;
    outcome.stop_reason = "inconsistent_cuts";
    outcome.message = e.what();
  } catch (const InvariantViolationError& e) {
    outcome.exit_code = 5;
    outcome.stop_reason = "invariant_violation";
    outcome.iterations = e.iteration;
    outcome.max_invariant_violation = e.violation;
    outcome.message = e.what();
  } catch (const ProxFailureError& e) {
    outcome.exit_code = 4;
    outcome.stop_reason = "prox_failure";
    outcome.message = e.what();
  }
  return outcome;
}

}  // namespace ceqp
