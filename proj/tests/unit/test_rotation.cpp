#include <gtest/gtest.h>

#include <cmath>
#include <random>
#include <set>

#include <unsupported/Eigen/MatrixFunctions>

#include "oracles.hpp"
#include "simplexforge/rng.hpp"
#include "simplexforge/rotation.hpp"
#include "simplexforge/simplexgeo.hpp"

using namespace simplexforge;

TEST(Skew, ParameterRoundTrip) {
  std::mt19937_64 gen(1);
  for (int n : {2, 3, 8}) {
    const RealVector p = oracle::random_vector(skew_dim(n), gen);
    const RealMatrix a = skew_from_params(p, n);
    EXPECT_LT(max_abs_diff(a, -a.transpose()), 1e-16);
    EXPECT_LT((params_from_skew(a) - p).norm(), 1e-16);
  }
  RealVector p = RealVector::Zero(3);
  p[0] = 1.0;
  const RealMatrix e = skew_from_params(p, 3);
  EXPECT_EQ(e(0, 1), 1.0);
  EXPECT_EQ(e(1, 0), -1.0);
  EXPECT_THROW(skew_from_params(RealVector::Zero(2), 3), DimensionMismatch);
}

TEST(Expm, MatchesReference) {
  std::mt19937_64 gen(2);
  for (int n : {2, 5, 15}) {
    for (double scale : {1e-6, 0.1, 1.0, 4.0}) {
      const RealMatrix a =
          skew_from_params(oracle::random_vector(skew_dim(n), gen, scale), n);
      const RealMatrix ref = a.exp();
      EXPECT_LT(max_abs_diff(expm(a), ref), 1e-12 * std::max(1.0, scale))
          << n << ' ' << scale;
      EXPECT_LT(orthogonality_defect(expm(a)), 1e-12);
    }
  }
  RealMatrix plane(2, 2);
  plane << 0, -0.3, 0.3, 0;
  RealMatrix rot(2, 2);
  rot << std::cos(0.3), -std::sin(0.3), std::sin(0.3), std::cos(0.3);
  EXPECT_LT(max_abs_diff(expm(plane), rot), 1e-15);
}

TEST(Polar, ProjectsToOrthogonal) {
  std::mt19937_64 gen(3);
  CounterRng rng(3);
  const RealMatrix q = random_rotation(10, rng);
  RealMatrix noisy = q;
  for (int i = 0; i < 10; ++i) {
    for (int j = 0; j < 10; ++j) noisy(i, j) += 1e-7 * oracle::random_vector(1, gen)[0];
  }
  const RealMatrix p = polar_orthonormalize(noisy);
  EXPECT_LT(orthogonality_defect(p), 1e-14);
  EXPECT_LT(max_abs_diff(p, q), 1e-6);
}

TEST(RotationState, ConstructionGuards) {
  EXPECT_THROW(RotationState(RealMatrix::Ones(3, 3)), NotUnitary);
  EXPECT_THROW(RotationState(RealMatrix::Identity(3, 2)), DimensionMismatch);
  RealMatrix near = RealMatrix::Identity(4, 4);
  near(0, 1) = 1e-10;
  const RotationState r(near);
  EXPECT_LT(r.orthogonality_drift(), 1e-14);
}

TEST(RotationState, RetractIsLeftMultiplication) {
  std::mt19937_64 gen(4);
  CounterRng rng(4);
  const int n = 8;
  const RotationState r(random_rotation(n, rng));
  const RealVector p = oracle::random_vector(skew_dim(n), gen, 0.1);
  const RotationState next = r.retract(p);
  EXPECT_LT(max_abs_diff(next.matrix(),
                         skew_from_params(p, n).exp() * r.matrix()),
            1e-12);
  EXPECT_LT((next.tangent() - p).norm(), 1e-16);
}

TEST(RotationState, DriftStaysBoundedOverManySteps) {
  std::mt19937_64 gen(5);
  const int n = 15;
  RotationState r = RotationState::identity(n);
  for (int step = 0; step < 2000; ++step) {
    r = r.retract(oracle::random_vector(skew_dim(n), gen, 0.05));
    ASSERT_LE(r.orthogonality_drift(), 1e-12);
  }
  const Simplex s = regular_simplex(n);
  const RealMatrix img = r.matrix() * s.vertices();
  EXPECT_LT(max_abs_diff(img.transpose() * img, s.gram()), 1e-11);
}

TEST(CounterRng, DeterministicAndSplittable) {
  CounterRng a(123);
  CounterRng b(123);
  for (int i = 0; i < 100; ++i) EXPECT_EQ(a(), b());
  CounterRng c(124);
  EXPECT_NE(CounterRng(123)(), c());

  const CounterRng root(9);
  CounterRng s1 = root.split(1);
  CounterRng s1b = root.split(1);
  CounterRng s2 = root.split(2);
  std::set<std::uint64_t> seen;
  for (int i = 0; i < 50; ++i) {
    const auto x = s1();
    EXPECT_EQ(x, s1b());
    seen.insert(x);
    seen.insert(s2());
  }
  EXPECT_EQ(seen.size(), 100u);
}

TEST(CounterRng, Distributions) {
  CounterRng rng(77);
  double sum = 0.0;
  double sq = 0.0;
  const int count = 200000;
  for (int i = 0; i < count; ++i) {
    const double u = rng.uniform();
    ASSERT_GE(u, 0.0);
    ASSERT_LT(u, 1.0);
    const double z = rng.normal();
    sum += z;
    sq += z * z;
  }
  EXPECT_NEAR(sum / count, 0.0, 0.01);
  EXPECT_NEAR(sq / count, 1.0, 0.01);
}

TEST(CounterRng, RandomGroupElements) {
  CounterRng rng(8);
  for (int n : {2, 3, 9}) {
    const RealMatrix q = random_rotation(n, rng);
    EXPECT_LT(orthogonality_defect(q), 1e-13);
    EXPECT_NEAR(q.determinant(), 1.0, 1e-12);
    const ComplexMatrix u = random_unitary(n, rng);
    EXPECT_LT((u.adjoint() * u - ComplexMatrix::Identity(n, n))
                  .cwiseAbs()
                  .maxCoeff(),
              1e-13);
    EXPECT_NEAR(random_unit_vector(n, rng).norm(), 1.0, 1e-14);
  }
}
