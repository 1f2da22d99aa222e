#pragma once

#include "ceqp/sets.hpp"
#include "ceqp/types.hpp"

#include <optional>

namespace ceqp {

/// Separating cut from an extragradient triple,
///   {z : <x_n - z_n, z - v> <= 0},  v = x_n + gamma_n (z_n - x_n),
/// stored as <a, z> <= b with a = x_n - z_n, b = <a, v>.
/// nullopt (the constraint is vacuous) when z_n == x_n.
std::optional<Halfspace> build_cut(const Vector& x_n, const Vector& z_n, double gamma_n);

/// Anchor cut {z : <x0 - x_n, x_n - z> >= 0}, which in <a, z> <= b form is
/// a = x0 - x_n, b = <a, x_n>. nullopt when x0 == x_n.
std::optional<Halfspace> build_anchor_cut(const Vector& x0, const Vector& x_n);

struct CutPair {
  std::optional<Halfspace> h;
  std::optional<Halfspace> w;
  Vector v;  ///< v_n = x_n + gamma_n (z_n - x_n)

  bool degenerate_h() const { return !h.has_value(); }
  bool degenerate_w() const { return !w.has_value(); }
};

CutPair make_cut_pair(const Vector& x0, const Vector& x_n, const Vector& z_n, double gamma_n);

/// Exact projection of x0 onto h ∩ w. Returns x0 when already feasible;
/// otherwise drops onto the violated boundary and accepts the candidate if
/// the other cut holds; otherwise solves the 2x2 normal system for the
/// doubly active point. Degenerate geometry (parallel normals, wrong
/// multiplier sign) falls back to project_halfspace_intersection.
/// A missing cut stands for the whole space. Throws InconsistentCutsError
/// when h ∩ w is empty.
Vector project_two_halfspaces(const Vector& x0, const std::optional<Halfspace>& h,
                              const std::optional<Halfspace>& w);

}  // namespace ceqp
