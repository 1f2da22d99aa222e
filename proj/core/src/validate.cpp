#include "ceqp/validate.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>

namespace ceqp {

namespace {

constexpr int kScheduleBudget = 200000;  // (k, i) evaluations per schedule
constexpr int kMaxReported = 8;

double envelope_bound(const CsepInstance& instance) {
  const double c1 = instance.max_c1();
  const double c2 = instance.max_c2();
  double bound = std::numeric_limits<double>::infinity();
  if (c1 > 0.0) bound = std::min(bound, 1.0 / (2.0 * c1));
  if (c2 > 0.0) bound = std::min(bound, 1.0 / (2.0 * c2));
  return bound;
}

std::string num(double v) {
  std::ostringstream os;
  os << v;
  return os.str();
}

}  // namespace

std::string ValidationReport::to_string() const {
  if (pass) return "ok";
  std::string out = "parameter validation failed:";
  for (const auto& v : violations) {
    out += "\n  - ";
    out += v;
  }
  return out;
}

ValidationReport validate_params(const SolverParams& params, const CsepInstance& instance) {
  ValidationReport report;
  auto fail = [&report](std::string msg) {
    report.pass = false;
    report.violations.push_back(std::move(msg));
  };

  const double bound = envelope_bound(instance);

  if (!(params.lambda_lo > 0.0)) fail("lambda_lo must be > 0, got " + num(params.lambda_lo));
  if (!(params.lambda_hi >= params.lambda_lo))
    fail("lambda_hi = " + num(params.lambda_hi) + " must be >= lambda_lo = " +
         num(params.lambda_lo));
  if (!(params.lambda_hi < bound))
    fail("lambda_hi = " + num(params.lambda_hi) +
         " must be < min{1/(2 c1), 1/(2 c2)} = " + num(bound));
  if (!(params.epsilon > 0.0 && params.epsilon <= 0.5))
    fail("epsilon = " + num(params.epsilon) + " must lie in (0, 1/2]");
  if (!std::isfinite(params.lambda_hi)) fail("lambda_hi must be finite");
  if (params.x0.size() != instance.dimension)
    fail("x0 has dimension " + std::to_string(params.x0.size()) + ", instance needs " +
         std::to_string(instance.dimension));
  else if (!is_finite(params.x0))
    fail("x0 must be finite");
  if (params.max_iter < 1) fail("max_iter must be >= 1");
  if (!(params.tol_stop > 0.0)) fail("tol_stop must be > 0");
  if (!(params.tol_inner > 0.0)) fail("tol_inner must be > 0");
  if (!params.lambda_schedule) fail("lambda_schedule is not set");
  if (!params.gamma_schedule) fail("gamma_schedule is not set");

  if (!report.pass) return report;

  // Enumerate the schedules against the declared envelopes; with bounded
  // max_iter and N this is exhaustive up to the evaluation budget.
  const int n_idx = instance.count();
  const long long total = static_cast<long long>(params.max_iter) * n_idx;
  const long long stride = std::max(1ll, total / kScheduleBudget);
  int reported = 0;
  long long flat = 0;
  for (int k = 0; k < params.max_iter && reported <= kMaxReported; ++k) {
    for (int i = 1; i <= n_idx && reported <= kMaxReported; ++i, ++flat) {
      if (flat % stride != 0) continue;
      const double lam = params.lambda_schedule(k, i);
      if (!(lam >= params.lambda_lo && lam <= params.lambda_hi)) {
        if (reported++ < kMaxReported)
          fail("lambda_schedule(k=" + std::to_string(k) + ", i=" + std::to_string(i) +
               ") = " + num(lam) + " leaves [" + num(params.lambda_lo) + ", " +
               num(params.lambda_hi) + "]");
      }
      const double gam = params.gamma_schedule(k, i);
      if (!(gam >= params.epsilon && gam <= 0.5)) {
        if (reported++ < kMaxReported)
          fail("gamma_schedule(k=" + std::to_string(k) + ", i=" + std::to_string(i) +
               ") = " + num(gam) + " leaves [" + num(params.epsilon) + ", 0.5]");
      }
    }
  }
  if (reported > kMaxReported) fail("... further schedule violations suppressed");

  return report;
}

double check_lipschitz_type(const Bifunction& f, const TripleSampler& sampler, int count) {
  double worst = -std::numeric_limits<double>::infinity();
  for (int s = 0; s < count; ++s) {
    const auto [x, y, z] = sampler();
    const double gap = f.value(x, z) - f.value(x, y) - f.value(y, z) -
                       f.c1 * (x - y).squaredNorm() - f.c2 * (y - z).squaredNorm();
    worst = std::max(worst, gap);
  }
  return worst;
}

std::optional<double> known_solution_worst_residual(const CsepInstance& instance,
                                                    std::uint64_t seed,
                                                    int samples_per_set) {
  if (!instance.known_solution) return std::nullopt;
  const Vector& xs = *instance.known_solution;
  double worst = std::numeric_limits<double>::infinity();
  for (int i = 0; i < instance.count(); ++i) {
    const auto& pair = instance.pairs[i];
    auto sample = set_point_sampler(pair.set, xs, seed + static_cast<std::uint64_t>(i));
    for (int s = 0; s < samples_per_set; ++s)
      worst = std::min(worst, pair.f.value(xs, sample()));
  }
  return worst;
}

SolverParams make_constant_params(const CsepInstance&, Vector x0,
                                  double lambda_value, double gamma_value) {
  SolverParams params;
  params.lambda_lo = lambda_value;
  params.lambda_hi = lambda_value;
  params.lambda_schedule = [lambda_value](int, int) { return lambda_value; };
  params.epsilon = gamma_value;
  params.gamma_schedule = [gamma_value](int, int) { return gamma_value; };
  params.x0 = std::move(x0);
  return params;
}

SolverParams make_default_params(const CsepInstance& instance, Vector x0) {
  const double bound = envelope_bound(instance);
  if (!std::isfinite(bound))
    throw std::invalid_argument(
        "both Lipschitz-type constants are zero, so no step envelope is implied; "
        "choose lambda explicitly (make_constant_params)");
  SolverParams params;
  params.lambda_lo = 0.09 * bound;
  params.lambda_hi = 0.9 * bound;
  const double lam = 0.5 * (params.lambda_lo + params.lambda_hi);
  params.lambda_schedule = [lam](int, int) { return lam; };
  params.epsilon = 0.5;
  params.gamma_schedule = [](int, int) { return 0.5; };
  params.x0 = std::move(x0);
  return params;
}

}  // namespace ceqp
