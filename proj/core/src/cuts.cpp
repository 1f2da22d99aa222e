#include "ceqp/cuts.hpp"

#include <array>
#include <cmath>

namespace ceqp {

namespace {

double violation(const Halfspace& h, const Vector& z) { return h.a.dot(z) - h.b; }

// Same ||a||-proportional feasibility scale as the generic exact path's
// base resolution, so both projection routes classify boundary cases
// identically.
double feas_eps(const Halfspace& h, const Vector& z) {
  return 1e-12 * (h.a.norm() * (1.0 + z.norm()) + std::abs(h.b));
}

bool holds(const std::optional<Halfspace>& cut, const Vector& z) {
  return !cut || violation(*cut, z) <= feas_eps(*cut, z);
}

Vector boundary_drop(const Halfspace& h, const Vector& z, double viol) {
  return z - (viol / h.a.squaredNorm()) * h.a;
}

}  // namespace

std::optional<Halfspace> build_cut(const Vector& x_n, const Vector& z_n, double gamma_n) {
  Vector a = x_n - z_n;
  if (a.squaredNorm() == 0.0) return std::nullopt;
  const Vector v = x_n + gamma_n * (z_n - x_n);
  const double b = a.dot(v);
  return Halfspace{std::move(a), b};
}

std::optional<Halfspace> build_anchor_cut(const Vector& x0, const Vector& x_n) {
  Vector a = x0 - x_n;
  if (a.squaredNorm() == 0.0) return std::nullopt;
  const double b = a.dot(x_n);
  return Halfspace{std::move(a), b};
}

CutPair make_cut_pair(const Vector& x0, const Vector& x_n, const Vector& z_n,
                      double gamma_n) {
  CutPair pair;
  pair.h = build_cut(x_n, z_n, gamma_n);
  pair.w = build_anchor_cut(x0, x_n);
  pair.v = x_n + gamma_n * (z_n - x_n);
  return pair;
}

Vector project_two_halfspaces(const Vector& x0, const std::optional<Halfspace>& h,
                              const std::optional<Halfspace>& w) {
  const bool in_h = holds(h, x0);
  const bool in_w = holds(w, x0);
  if (in_h && in_w) return x0;

  if (!in_h) {
    const Vector cand = boundary_drop(*h, x0, violation(*h, x0));
    if (holds(w, cand)) return cand;
  }
  if (!in_w) {
    const Vector cand = boundary_drop(*w, x0, violation(*w, x0));
    if (holds(h, cand)) return cand;
  }

  // Both cuts are active at the projection: solve the 2x2 normal system
  //   t1 ||a||^2 + t2 <a, c>   = -(<a, x0> - b_h)
  //   t1 <a, c>  + t2 ||c||^2  = -(<c, x0> - b_w)
  // for x = x0 + t1 a + t2 c. Both single drops failed above, so h and w
  // are both present here. Nonpositive t certifies the KKT multipliers;
  // a near-singular Gram (parallel normals) or a positive t falls back to
  // the generic exact projection.
  const Vector& a = h->a;
  const Vector& c = w->a;
  const double aa = a.squaredNorm();
  const double cc = c.squaredNorm();
  const double ac = a.dot(c);
  const double det = aa * cc - ac * ac;
  if (det > 1e-14 * aa * cc) {
    const double rh = -violation(*h, x0);
    const double rw = -violation(*w, x0);
    const double t1 = (rh * cc - ac * rw) / det;
    const double t2 = (aa * rw - ac * rh) / det;
    const double sign_eps = 1e-10 * std::max(1.0, std::max(std::abs(t1), std::abs(t2)));
    if (t1 <= sign_eps && t2 <= sign_eps) return x0 + t1 * a + t2 * c;
  }

  const std::array<Halfspace, 2> cuts{*h, *w};
  return project_halfspace_intersection(cuts, x0, 1e-12);
}

}  // namespace ceqp
