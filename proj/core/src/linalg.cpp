#include "ceqp/linalg.hpp"

#include <cmath>

namespace ceqp {

bool is_finite(const Vector& v) { return v.allFinite(); }

std::pair<double, Vector> spectral_direction(const Matrix& m) {
  if (m.rows() == 0 || m.cols() == 0) return {0.0, Vector()};

  const Eigen::Index n = m.cols();
  Vector v(n);
  for (Eigen::Index i = 0; i < n; ++i)
    v(i) = 1.0 + static_cast<double>(i) / static_cast<double>(n + 1);
  v /= v.norm();

  double estimate = 0.0;
  double prev = -1.0;
  int stable = 0;
  const int cap = 200000;
  for (int it = 0; it < cap; ++it) {
    const Vector w = m * v;
    estimate = w.norm();  // ||M v|| with ||v|| = 1
    const Vector u = m.transpose() * w;
    const double nu = u.norm();
    if (nu == 0.0) {
      // v hit the null space of M^T M; restart once from a skewed vector.
      if (it == 0) {
        for (Eigen::Index i = 0; i < n; ++i) v(i) = std::sin(static_cast<double>(i + 1));
        const double nv = v.norm();
        if (nv == 0.0) return {estimate, v};
        v /= nv;
        continue;
      }
      return {estimate, v};
    }
    v = u / nu;
    if (std::abs(estimate - prev) <= 1e-15 * std::max(1.0, estimate)) {
      if (++stable >= 4) break;
    } else {
      stable = 0;
    }
    prev = estimate;
  }
  return {estimate, v};
}

double operator_norm(const Matrix& m) { return spectral_direction(m).first; }

}  // namespace ceqp
