#include "ceqp/sets.hpp"

#include <Eigen/Dense>

#include <algorithm>
#include <bit>
#include <cmath>
#include <limits>
#include <string>

namespace ceqp {

namespace {

constexpr int kMaxExactCuts = 12;
constexpr int kDykstraCycleCap = 200000;

void require_dim(const ConvexSet& set, const Vector& x) {
  const auto d = set_dimension(set);
  if (d && *d != x.size())
    throw std::invalid_argument("dimension mismatch: set has dimension " +
                                std::to_string(*d) + ", point has " +
                                std::to_string(x.size()));
}

double violation(const Halfspace& h, const Vector& z) { return h.a.dot(z) - h.b; }

Vector drop_onto(const Halfspace& h, const Vector& z) {
  const double v = violation(h, z);
  if (v <= 0.0) return z;
  return z - (v / h.a.squaredNorm()) * h.a;
}

// Feasibility classification scale. Proportional to ||a|| so the implied
// geometric slack stays ~1e-9 * (1 + ||z||) even for the tiny cut normals
// a convergent solver produces.
double row_scale(const Halfspace& h, const Vector& z) {
  return h.a.norm() * (1.0 + z.norm()) + std::abs(h.b);
}

Vector project_exact(std::span<const Halfspace> cuts, const Vector& x0) {
  const int m = static_cast<int>(cuts.size());
  const Eigen::Index n = x0.size();

  struct Candidate {
    Vector point;
    double dist2;
    double worst_ratio;  // max over cuts of violation / row_scale
  };
  std::vector<Candidate> candidates;
  candidates.reserve(std::size_t{1} << m);

  for (unsigned mask = 0; mask < (1u << m); ++mask) {
    Vector cand;
    if (mask == 0) {
      cand = x0;
    } else {
      const int s = std::popcount(mask);
      Matrix a(s, n);
      Vector rhs(s);
      int k = 0;
      for (int i = 0; i < m; ++i) {
        if (!(mask & (1u << i))) continue;
        // Row equilibration: cut normals can differ by many orders of
        // magnitude and the rank-revealing threshold below is relative to
        // the largest row. Scaling rows leaves the row space, and hence
        // the minimum-norm solution, unchanged.
        const double inv = 1.0 / cuts[i].a.norm();
        a.row(k) = inv * cuts[i].a;
        rhs(k) = inv * (cuts[i].a.dot(x0) - cuts[i].b);
        ++k;
      }
      // Minimum-norm solution of A d = A x0 - b lies in the row space of A,
      // so x0 - d is the projection onto the subset's affine hull.
      Eigen::CompleteOrthogonalDecomposition<Matrix> cod(a);
      cand = x0 - cod.solve(rhs);
      // Discard structurally inconsistent equality systems (their
      // least-squares residual is macroscopic); ill-conditioned but
      // consistent subsets pass and face the feasibility gate below.
      bool consistent = true;
      for (int i = 0; i < m && consistent; ++i) {
        if (!(mask & (1u << i))) continue;
        if (std::abs(cuts[i].a.dot(cand) - cuts[i].b) > 1e-6 * row_scale(cuts[i], cand))
          consistent = false;
      }
      if (!consistent) continue;
    }

    double worst = 0.0;
    for (int i = 0; i < m; ++i)
      worst = std::max(worst, violation(cuts[i], cand) / row_scale(cuts[i], cand));
    candidates.push_back({std::move(cand), 0.0, worst});
    candidates.back().dist2 = (candidates.back().point - x0).squaredNorm();
  }

  // Select at the tightest feasibility resolution that admits a candidate.
  // Nearly degenerate cut arrangements (mutually near-parallel tiny
  // normals) cannot be classified at 1e-12 relative, so the gate widens in
  // steps; a macroscopic gap still ends up inconsistent.
  for (double rel = 1e-12; rel <= 1.1e-5; rel *= 32.0) {
    const Candidate* best = nullptr;
    for (const auto& c : candidates)
      if (c.worst_ratio <= rel && (!best || c.dist2 < best->dist2)) best = &c;
    if (best) return best->point;
  }
  throw InconsistentCutsError(
      "halfspace intersection is empty: no active-set candidate is feasible");
}

Vector project_dykstra(std::span<const Halfspace> cuts, const Vector& x0, double tol) {
  const int m = static_cast<int>(cuts.size());
  Vector x = x0;
  std::vector<Vector> increments(m, Vector::Zero(x0.size()));
  const double growth_guard = 1e12 * (1.0 + x0.norm());

  for (int cycle = 0; cycle < kDykstraCycleCap; ++cycle) {
    double change = 0.0;
    for (int i = 0; i < m; ++i) {
      const Vector y = x + increments[i];
      Vector projected = drop_onto(cuts[i], y);
      Vector inc = y - projected;
      change = std::max(change, (inc - increments[i]).norm());
      increments[i] = std::move(inc);
      x = std::move(projected);
      if (increments[i].norm() > growth_guard)
        throw InconsistentCutsError(
            "halfspace intersection appears empty: Dykstra increments diverge");
    }
    if (change <= tol) return x;
  }
  throw InconsistentCutsError(
      "halfspace intersection projection did not converge: Dykstra cycle cap hit");
}

}  // namespace

Halfspace make_halfspace(Vector a, double b) {
  if (a.size() == 0 || a.squaredNorm() == 0.0 || !a.allFinite())
    throw std::invalid_argument("halfspace normal must be nonzero and finite");
  if (!std::isfinite(b)) throw std::invalid_argument("halfspace offset must be finite");
  return Halfspace{std::move(a), b};
}

ConvexSet make_box(Vector lower, Vector upper) {
  if (lower.size() != upper.size())
    throw std::invalid_argument("box bounds must share a dimension");
  if (!lower.allFinite() || !upper.allFinite())
    throw std::invalid_argument("box bounds must be finite");
  if ((lower.array() > upper.array()).any())
    throw std::invalid_argument("box bounds inverted");
  return Box{std::move(lower), std::move(upper)};
}

ConvexSet make_ball(Vector center, double radius) {
  if (!center.allFinite() || !std::isfinite(radius))
    throw std::invalid_argument("ball data must be finite");
  if (radius < 0.0) throw std::invalid_argument("ball radius must be >= 0");
  return Ball{std::move(center), radius};
}

ConvexSet make_hyperplane(Vector a, double b) {
  if (a.size() == 0 || a.squaredNorm() == 0.0 || !a.allFinite())
    throw std::invalid_argument("hyperplane normal must be nonzero and finite");
  if (!std::isfinite(b)) throw std::invalid_argument("hyperplane offset must be finite");
  return Hyperplane{std::move(a), b};
}

ConvexSet make_polyhedron(std::vector<Halfspace> faces, Vector witness) {
  if (faces.empty()) throw std::invalid_argument("polyhedron needs at least one face");
  for (const auto& f : faces) {
    if (f.a.size() != witness.size())
      throw std::invalid_argument("polyhedron face dimension differs from witness");
    if (f.a.squaredNorm() == 0.0)
      throw std::invalid_argument("polyhedron face normal must be nonzero");
  }
  for (const auto& f : faces)
    if (violation(f, witness) > 1e-9 * row_scale(f, witness))
      throw std::invalid_argument("polyhedron witness is not feasible");
  return Polyhedron{std::move(faces), std::move(witness)};
}

std::optional<int> set_dimension(const ConvexSet& set) {
  return std::visit(
      [](const auto& s) -> std::optional<int> {
        using T = std::decay_t<decltype(s)>;
        if constexpr (std::is_same_v<T, WholeSpace>) return std::nullopt;
        else if constexpr (std::is_same_v<T, Box>) return static_cast<int>(s.lower.size());
        else if constexpr (std::is_same_v<T, Ball>) return static_cast<int>(s.center.size());
        else if constexpr (std::is_same_v<T, Halfspace>) return static_cast<int>(s.a.size());
        else if constexpr (std::is_same_v<T, Hyperplane>) return static_cast<int>(s.a.size());
        else return static_cast<int>(s.witness.size());
      },
      set);
}

Vector project(const ConvexSet& set, const Vector& x) {
  require_dim(set, x);
  return std::visit(
      [&x](const auto& s) -> Vector {
        using T = std::decay_t<decltype(s)>;
        if constexpr (std::is_same_v<T, WholeSpace>) {
          return x;
        } else if constexpr (std::is_same_v<T, Box>) {
          return x.cwiseMax(s.lower).cwiseMin(s.upper);
        } else if constexpr (std::is_same_v<T, Ball>) {
          const Vector d = x - s.center;
          const double dist = d.norm();
          if (dist <= s.radius) return x;
          return s.center + (s.radius / dist) * d;
        } else if constexpr (std::is_same_v<T, Halfspace>) {
          return drop_onto(s, x);
        } else if constexpr (std::is_same_v<T, Hyperplane>) {
          return x - ((s.a.dot(x) - s.b) / s.a.squaredNorm()) * s.a;
        } else {
          return project_halfspace_intersection(s.faces, x, 1e-12);
        }
      },
      set);
}

bool contains(const ConvexSet& set, const Vector& x, double tol) {
  require_dim(set, x);
  return std::visit(
      [&](const auto& s) -> bool {
        using T = std::decay_t<decltype(s)>;
        if constexpr (std::is_same_v<T, WholeSpace>) {
          return true;
        } else if constexpr (std::is_same_v<T, Box>) {
          return (x.array() >= s.lower.array() - tol).all() &&
                 (x.array() <= s.upper.array() + tol).all();
        } else if constexpr (std::is_same_v<T, Ball>) {
          return (x - s.center).norm() <= s.radius + tol;
        } else if constexpr (std::is_same_v<T, Halfspace>) {
          return violation(s, x) <= tol;
        } else if constexpr (std::is_same_v<T, Hyperplane>) {
          return std::abs(s.a.dot(x) - s.b) <= tol;
        } else {
          for (const auto& f : s.faces)
            if (violation(f, x) > tol) return false;
          return true;
        }
      },
      set);
}

Vector project_halfspace_intersection(std::span<const Halfspace> cuts,
                                      const Vector& x0, double tol) {
  if (tol < 0.0) throw std::invalid_argument("projection tolerance must be >= 0");
  for (const auto& c : cuts)
    if (c.a.size() != x0.size())
      throw std::invalid_argument("dimension mismatch among halfspace cuts");
  if (cuts.empty()) return x0;
  if (cuts.size() <= kMaxExactCuts) return project_exact(cuts, x0);
  return project_dykstra(cuts, x0, tol);
}

}  // namespace ceqp
