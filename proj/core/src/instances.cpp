#include "ceqp/instances.hpp"

#include "ceqp/linalg.hpp"
#include "ceqp/sampling.hpp"
#include "ceqp/validate.hpp"

#include <Eigen/Dense>
#include <Eigen/Eigenvalues>

#include <algorithm>
#include <cmath>
#include <memory>
#include <string>

namespace ceqp {

namespace {

constexpr std::uint64_t kBuildSeed = 0x5eed5eedULL;
constexpr double kCertTol = 1e-10;

void require_square(const Matrix& m, const Vector& q, const char* what) {
  if (m.rows() != m.cols())
    throw std::invalid_argument(std::string(what) + ": matrix must be square");
  if (m.rows() != q.size())
    throw std::invalid_argument(std::string(what) + ": matrix/vector dimension mismatch");
  if (!m.allFinite() || !q.allFinite())
    throw std::invalid_argument(std::string(what) + ": data must be finite");
}

Bifunction linearized(std::function<Vector(const Vector&)> op, double c) {
  Bifunction f;
  f.linear_operator = op;
  f.value = [op](const Vector& x, const Vector& y) { return op(x).dot(y - x); };
  f.subgrad = [op](const Vector& x, const Vector&) { return op(x); };
  f.c1 = c;
  f.c2 = c;
  return f;
}

double symmetric_min_eigenvalue(const Matrix& m) {
  const Matrix sym = 0.5 * (m + m.transpose());
  Eigen::SelfAdjointEigenSolver<Matrix> eig(sym);
  return eig.eigenvalues().minCoeff();
}

double symmetric_max_eigenvalue(const Matrix& m) {
  const Matrix sym = 0.5 * (m + m.transpose());
  Eigen::SelfAdjointEigenSolver<Matrix> eig(sym);
  return eig.eigenvalues().maxCoeff();
}

}  // namespace

Bifunction zero_bifunction(int dim) {
  auto op = [dim](const Vector&) { return Vector(Vector::Zero(dim)); };
  return linearized(op, 0.0);
}

Bifunction linear_vi_bifunction(Matrix m, Vector q) {
  const double lipschitz = operator_norm(m);
  return linear_vi_bifunction(std::move(m), std::move(q), lipschitz);
}

Bifunction linear_vi_bifunction(Matrix m, Vector q, double lipschitz) {
  require_square(m, q, "linear VI operator");
  if (!(lipschitz >= 0.0))
    throw std::invalid_argument("linear VI operator: Lipschitz constant must be >= 0");
  auto mm = std::make_shared<const Matrix>(std::move(m));
  auto qq = std::make_shared<const Vector>(std::move(q));
  auto op = [mm, qq](const Vector& x) { return Vector(*mm * x + *qq); };
  return linearized(op, lipschitz / 2.0);
}

Bifunction affine_fixed_point_bifunction(Matrix linear, Vector offset) {
  require_square(linear, offset, "fixed-point map");
  if (operator_norm(linear) > 1.0 + 1e-10)
    throw std::invalid_argument("fixed-point map is expansive (||C|| > 1)");
  const Matrix residual_op =
      Matrix::Identity(linear.rows(), linear.cols()) - linear;
  const double lipschitz = operator_norm(residual_op);
  auto rr = std::make_shared<const Matrix>(residual_op);
  auto dd = std::make_shared<const Vector>(std::move(offset));
  // A(x) = x - S(x) = (I - C) x - d
  auto op = [rr, dd](const Vector& x) { return Vector(*rr * x - *dd); };
  return linearized(op, lipschitz / 2.0);
}

Bifunction nash_cournot_bifunction(Matrix p, Matrix q_mat, Vector q_vec) {
  require_square(p, q_vec, "Nash-Cournot form");
  require_square(q_mat, q_vec, "Nash-Cournot form");
  auto pp = std::make_shared<const Matrix>(std::move(p));
  auto qq = std::make_shared<const Matrix>(std::move(q_mat));
  auto qv = std::make_shared<const Vector>(std::move(q_vec));

  Bifunction f;
  f.value = [pp, qq, qv](const Vector& x, const Vector& y) {
    return (*pp * x + *qq * y + *qv).dot(y - x);
  };
  f.subgrad = [pp, qq, qv](const Vector& x, const Vector& y) {
    return Vector(*pp * x + *qv + *qq * y + qq->transpose() * (y - x));
  };
  const double c = operator_norm(*pp - qq->transpose()) / 2.0;
  f.c1 = c;
  f.c2 = c;
  return f;
}

CsepInstance make_cfp(std::vector<ConvexSet> sets, Vector witness) {
  if (sets.empty()) throw std::invalid_argument("CFP needs at least one set");
  const int dim = static_cast<int>(witness.size());
  for (const auto& set : sets)
    if (!contains(set, witness, 1e-9))
      throw std::invalid_argument("no feasibility witness: the given point is not "
                                  "in every set");
  std::vector<SubproblemPair> pairs;
  pairs.reserve(sets.size());
  for (auto& set : sets) pairs.push_back({zero_bifunction(dim), std::move(set)});
  return make_instance(dim, std::move(pairs), std::move(witness));
}

CsepInstance make_linear_vi(std::vector<LinearOp> ops) {
  if (ops.empty()) throw std::invalid_argument("linear VI family needs at least one operator");
  const int dim = static_cast<int>(ops.front().q.size());
  bool zero_solves = true;
  const Vector origin = Vector::Zero(dim);
  std::vector<SubproblemPair> pairs;
  pairs.reserve(ops.size());
  for (auto& op : ops) {
    if (op.q.size() != dim || op.m.rows() != dim)
      throw std::invalid_argument("linear VI family: inconsistent dimensions");
    if (op.q.squaredNorm() != 0.0 || !contains(op.set, origin, 1e-12)) zero_solves = false;
    pairs.push_back({linear_vi_bifunction(op.m, op.q), std::move(op.set)});
  }
  std::optional<Vector> known;
  if (zero_solves) known = origin;
  return make_instance(dim, std::move(pairs), std::move(known));
}

namespace detail {

ConvexSet fixed_point_box(const std::vector<AffineMap>& maps, const Vector& reference) {
  const int dim = static_cast<int>(reference.size());
  double extent = std::max(1.0, reference.cwiseAbs().maxCoeff());
  for (const auto& map : maps) {
    const Matrix residual_op = Matrix::Identity(dim, dim) - map.linear;
    // Minimal-norm fixed point of S(x) = Cx + d, when one exists.
    Eigen::CompleteOrthogonalDecomposition<Matrix> cod(residual_op);
    const Vector p = cod.solve(map.offset);
    if ((residual_op * p - map.offset).norm() <= 1e-8 * (1.0 + map.offset.norm()))
      extent = std::max(extent, p.cwiseAbs().maxCoeff());
  }
  extent *= 10.0;
  return make_box(Vector::Constant(dim, -extent), Vector::Constant(dim, extent));
}

}  // namespace detail

CsepInstance make_fixed_point(std::vector<AffineMap> maps, const Vector& reference) {
  if (maps.empty()) throw std::invalid_argument("fixed-point family needs at least one map");
  const int dim = static_cast<int>(reference.size());
  for (const auto& map : maps) require_square(map.linear, map.offset, "fixed-point map");

  // Identify the common fixed point: solve (I - C) p = d for the first map
  // that pins one down, then require every map to fix it.
  std::optional<Vector> common;
  for (const auto& map : maps) {
    const Matrix residual_op = Matrix::Identity(dim, dim) - map.linear;
    if (operator_norm(residual_op) < 1e-12) continue;  // identity map fixes everything
    Eigen::CompleteOrthogonalDecomposition<Matrix> cod(residual_op);
    Vector p = cod.solve(map.offset);
    if ((residual_op * p - map.offset).norm() > 1e-8 * (1.0 + map.offset.norm()))
      throw std::invalid_argument("fixed-point map has no fixed point");
    common = std::move(p);
    break;
  }
  if (common) {
    for (const auto& map : maps) {
      const Vector image = map.linear * *common + map.offset;
      if ((image - *common).norm() > 1e-8 * (1.0 + common->norm()))
        throw std::invalid_argument("maps do not share a common fixed point");
    }
  } else {
    common = reference;  // every map is the identity; any point is fixed
  }

  const ConvexSet box = detail::fixed_point_box(maps, reference);
  std::vector<SubproblemPair> pairs;
  pairs.reserve(maps.size());
  for (auto& map : maps)
    pairs.push_back(
        {affine_fixed_point_bifunction(std::move(map.linear), std::move(map.offset)), box});
  return make_instance(dim, std::move(pairs), std::move(common));
}

namespace detail {

double lipschitz_certificate(const Bifunction& f, int dim, std::uint64_t seed,
                             int count, const Matrix* defect) {
  double worst;
  {
    auto rng_triples = gaussian_triple_sampler(dim, seed, 1.0);
    auto wide = gaussian_triple_sampler(dim, seed + 1, 3.0);
    worst = std::max(check_lipschitz_type(f, rng_triples, (2 * count) / 3),
                     check_lipschitz_type(f, wide, count / 3));
  }
  if (defect) {
    // Worst-case directed triples from the defect operator D with
    // f(x,z) - f(x,y) - f(y,z) = <y - z, D (y - x)>.
    const auto [sigma, v] = spectral_direction(*defect);
    if (sigma > 0.0) {
      const Vector u = (*defect * v) / sigma;
      const double c2 = f.c2;
      int emitted = 0;
      auto directed = [&]() -> std::array<Vector, 3> {
        static constexpr double kScales[] = {0.5, 1.0, 2.0};
        const double s = kScales[emitted++ % 3];
        const double t = c2 > 0.0 ? sigma * s / (2.0 * c2) : s * std::max(1.0, sigma);
        return {Vector(-s * v), Vector(Vector::Zero(dim)), Vector(-t * u)};
      };
      worst = std::max(worst, check_lipschitz_type(f, directed, 3));
    }
  }
  return worst;
}

}  // namespace detail

CsepInstance make_nash_cournot(Matrix p, Matrix q_mat, Vector q_vec, ConvexSet box,
                               int copies) {
  if (copies < 1) throw std::invalid_argument("Nash-Cournot family needs copies >= 1");
  if (!std::holds_alternative<Box>(box))
    throw std::invalid_argument("Nash-Cournot family: the constraint set must be a box");
  require_square(p, q_vec, "Nash-Cournot form");
  require_square(q_mat, q_vec, "Nash-Cournot form");
  const int dim = static_cast<int>(q_vec.size());

  const double scale = std::max(1.0, std::max(operator_norm(p), operator_norm(q_mat)));
  if (symmetric_min_eigenvalue(q_mat) < -1e-9 * scale)
    throw std::invalid_argument("Nash-Cournot form: Q must be positive semidefinite");
  if (symmetric_max_eigenvalue(q_mat - p) > 1e-9 * scale)
    throw std::invalid_argument("Nash-Cournot form: Q - P must be negative semidefinite");

  const Matrix defect = p - q_mat.transpose();
  Bifunction f = nash_cournot_bifunction(std::move(p), std::move(q_mat), std::move(q_vec));
  const double cert = detail::lipschitz_certificate(f, dim, kBuildSeed, 10000, &defect);
  if (cert > kCertTol)
    throw ValidationError("Nash-Cournot form: sampled Lipschitz-type violation " +
                          std::to_string(cert) + " exceeds " + std::to_string(kCertTol));

  std::vector<SubproblemPair> pairs;
  pairs.reserve(copies);
  for (int i = 0; i < copies; ++i) pairs.push_back({f, box});
  return make_instance(dim, std::move(pairs), std::nullopt);
}

CsepInstance build_instance(const InstanceRecipe& recipe) {
  return std::visit(
      [](const auto& r) -> CsepInstance {
        using T = std::decay_t<decltype(r)>;
        if constexpr (std::is_same_v<T, CfpRecipe>) {
          return make_cfp(r.sets, r.witness);
        } else if constexpr (std::is_same_v<T, LinearViRecipe>) {
          return make_linear_vi(r.ops);
        } else if constexpr (std::is_same_v<T, FixedPointRecipe>) {
          return make_fixed_point(r.maps, r.reference);
        } else {
          return make_nash_cournot(r.p, r.q_mat, r.q_vec, r.box, r.copies);
        }
      },
      recipe);
}

}  // namespace ceqp
