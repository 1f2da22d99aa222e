#pragma once

#include "ceqp/instance.hpp"
#include "ceqp/sets.hpp"
#include "ceqp/types.hpp"

#include <variant>
#include <vector>

namespace ceqp {

// ---- bifunction builders ------------------------------------------------

/// f == 0 (feasibility subproblem); c1 = c2 = 0, linearized with A == 0.
Bifunction zero_bifunction(int dim);

/// f(x, y) = <M x + q, y - x>; c1 = c2 = ||M|| / 2 (power iteration), or
/// lipschitz / 2 when a constant is declared by the caller.
Bifunction linear_vi_bifunction(Matrix m, Vector q);
Bifunction linear_vi_bifunction(Matrix m, Vector q, double lipschitz);

/// f(x, y) = <x - S x, y - x> for the affine map S(x) = C x + d;
/// c1 = c2 = ||I - C|| / 2. Throws when ||C|| > 1 (expansive map).
Bifunction affine_fixed_point_bifunction(Matrix linear, Vector offset);

/// f(x, y) = <P x + Q y + q, y - x>; c1 = c2 = ||P - Q^T|| / 2. Genuinely
/// quadratic in y, so the proximal subproblems run the inner loop.
Bifunction nash_cournot_bifunction(Matrix p, Matrix q_mat, Vector q_vec);

// ---- instance families ---------------------------------------------------

/// Convex feasibility: every f_i == 0 on the given sets. `witness` must lie
/// in all of them and is recorded as the known solution.
CsepInstance make_cfp(std::vector<ConvexSet> sets, Vector witness);

struct LinearOp {
  Matrix m;
  Vector q;
  ConvexSet set;
};

/// Common variational inequalities with A_i(x) = M_i x + q_i. When every
/// q_i == 0 and 0 lies in every set, 0 is recorded as the known solution.
CsepInstance make_linear_vi(std::vector<LinearOp> ops);

struct AffineMap {
  Matrix linear;
  Vector offset;
};

/// Common fixed points of nonexpansive affine maps. Constraint sets are a
/// shared bounding box containing `reference` (the intended start point)
/// and every fixed point with a 10x margin; the common fixed point, when
/// one is identifiable, is recorded as the known solution.
CsepInstance make_fixed_point(std::vector<AffineMap> maps, const Vector& reference);

/// `copies` identical pseudomonotone subproblems of the form
/// f(x, y) = <P x + Q y + q, y - x> on a box. Requires Q PSD and Q - P NSD
/// (symmetric parts) and certifies the Lipschitz-type constants by sampling
/// at build time.
CsepInstance make_nash_cournot(Matrix p, Matrix q_mat, Vector q_vec,
                               ConvexSet box, int copies);

// ---- serializable recipes --------------------------------------------------

struct CfpRecipe {
  std::vector<ConvexSet> sets;
  Vector witness;
};

struct LinearViRecipe {
  std::vector<LinearOp> ops;
};

struct FixedPointRecipe {
  std::vector<AffineMap> maps;
  Vector reference;
};

struct NashCournotRecipe {
  Matrix p;
  Matrix q_mat;
  Vector q_vec;
  ConvexSet box;
  int copies = 1;
};

using InstanceRecipe = std::variant<CfpRecipe, LinearViRecipe, FixedPointRecipe, NashCournotRecipe>;

CsepInstance build_instance(const InstanceRecipe& recipe);

namespace detail {
/// Box used by make_fixed_point; exposed so the file serializer emits the
/// same geometry.
ConvexSet fixed_point_box(const std::vector<AffineMap>& maps, const Vector& reference);

/// Sampled Lipschitz-type certificate shared by builders and the loader.
/// `defect` is the operator D with f(x,z)-f(x,y)-f(y,z) = <y-z, D(y-x)>
/// for the affine families; when given, worst-case directed triples from
/// power iteration on D are mixed into the sample.
double lipschitz_certificate(const Bifunction& f, int dim, std::uint64_t seed,
                             int count, const Matrix* defect);
}  // namespace detail

}  // namespace ceqp
