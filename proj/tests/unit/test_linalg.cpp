#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <ceqp/linalg.hpp>

#include "test_support.hpp"

#include <random>

using ceqp::Matrix;
using ceqp::Vector;

TEST_CASE("operator norm matches the dense spectral oracle") {
  std::mt19937_64 rng(42);
  for (int trial = 0; trial < 60; ++trial) {
    const int dim = 1 + static_cast<int>(rng() % 10);
    const Matrix m = ceqp_test::random_matrix(dim, rng, 2.0);
    const double want = ceqp_test::spectral_norm_oracle(m);
    CHECK(std::abs(ceqp::operator_norm(m) - want) <= 1e-9 * std::max(1.0, want));
  }
}

TEST_CASE("operator norm exact cases") {
  CHECK(ceqp::operator_norm(Matrix::Identity(4, 4)) == doctest::Approx(1.0));
  CHECK(ceqp::operator_norm(Matrix::Zero(3, 3)) == doctest::Approx(0.0));

  Matrix diag = Matrix::Zero(3, 3);
  diag(0, 0) = -5.0;
  diag(1, 1) = 2.0;
  diag(2, 2) = 0.5;
  CHECK(ceqp::operator_norm(diag) == doctest::Approx(5.0));

  // Rotation matrices have unit norm.
  Matrix rot(2, 2);
  const double t = 0.83;
  rot << std::cos(t), -std::sin(t), std::sin(t), std::cos(t);
  CHECK(ceqp::operator_norm(rot) == doctest::Approx(1.0));
}

TEST_CASE("operator norm accuracy to 1e-8 against the oracle") {
  std::mt19937_64 rng(7);
  for (int trial = 0; trial < 40; ++trial) {
    const int dim = 2 + static_cast<int>(rng() % 7);
    Matrix m = ceqp_test::random_matrix(dim, rng);
    m += m.transpose().eval();  // symmetric cases too
    const double got = ceqp::operator_norm(m);
    const double want = ceqp_test::spectral_norm_oracle(m);
    CHECK(std::abs(got - want) <= 1e-8 * std::max(1.0, want));
  }
}
