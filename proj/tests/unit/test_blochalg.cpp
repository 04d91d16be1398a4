#include <gtest/gtest.h>

#include <cmath>
#include <random>

#include "oracles.hpp"
#include "simplexforge/blochalg.hpp"
#include "simplexforge/whsic.hpp"

using namespace simplexforge;

TEST(GellMannBasis, QubitIsPauli) {
  const GellMannBasis b(2);
  ASSERT_EQ(b.size(), 3);
  ComplexMatrix sx(2, 2), sy(2, 2), sz(2, 2);
  sx << 0, 1, 1, 0;
  sy << 0, Complex(0, -1), Complex(0, 1), 0;
  sz << 1, 0, 0, -1;
  EXPECT_LT(max_abs_diff(b[0], sx), 1e-15);
  EXPECT_LT(max_abs_diff(b[1], sy), 1e-15);
  EXPECT_LT(max_abs_diff(b[2], sz), 1e-15);
}

TEST(GellMannBasis, MatchesExplicitConstruction) {
  for (int n = 2; n <= 5; ++n) {
    const GellMannBasis b(n);
    const auto ref = oracle::gell_mann(n);
    ASSERT_EQ(b.size(), static_cast<int>(ref.size()));
    for (int k = 0; k < b.size(); ++k) {
      EXPECT_LT(max_abs_diff(b[k], ref[k]), 1e-15) << "n=" << n << " k=" << k;
    }
  }
}

TEST(GellMannBasis, OrthogonalityAndTracelessness) {
  for (int n = 2; n <= 6; ++n) {
    const GellMannBasis b(n);
    EXPECT_EQ(b.size(), n * n - 1);
    for (int j = 0; j < b.size(); ++j) {
      EXPECT_LT(std::abs(b[j].trace()), 1e-14);
      EXPECT_LT(hermiticity_defect(b[j]), 1e-15);
      for (int k = 0; k < b.size(); ++k) {
        const Complex t = (b[j] * b[k]).trace();
        EXPECT_NEAR(t.real(), j == k ? 2.0 : 0.0, 1e-12);
        EXPECT_NEAR(t.imag(), 0.0, 1e-12);
      }
    }
  }
}

TEST(GellMannBasis, RejectsSmallDimension) {
  EXPECT_THROW(GellMannBasis(1), InvalidDimension);
  EXPECT_THROW(GellMannBasis(0), InvalidDimension);
}

TEST(GellMannBasis, Completeness) {
  std::mt19937_64 gen(7);
  for (int n = 2; n <= 6; ++n) {
    const GellMannBasis b(n);
    for (int trial = 0; trial < 10; ++trial) {
      ComplexMatrix h = oracle::random_hermitian(n, gen);
      h -= h.trace() / static_cast<double>(n) *
           ComplexMatrix::Identity(n, n);
      ComplexMatrix rebuilt = ComplexMatrix::Zero(n, n);
      for (int j = 0; j < b.size(); ++j) {
        rebuilt += 0.5 * (h * b[j]).trace() * b[j];
      }
      EXPECT_LT(max_abs_diff(rebuilt, h), 1e-12);
    }
  }
}

TEST(BlochMap, Examples) {
  const GellMannBasis b2(2);
  ComplexMatrix up = ComplexMatrix::Zero(2, 2);
  up(0, 0) = 1.0;
  const BlochVector v = to_bloch(up, b2);
  EXPECT_NEAR(v.coords[0], 0.0, 1e-15);
  EXPECT_NEAR(v.coords[1], 0.0, 1e-15);
  EXPECT_NEAR(v.coords[2], 0.5, 1e-15);

  RealVector down(3);
  down << 0, 0, -0.5;
  ComplexMatrix expect = ComplexMatrix::Zero(2, 2);
  expect(1, 1) = 1.0;
  EXPECT_LT(max_abs_diff(from_bloch(BlochVector(2, down), b2), expect), 1e-15);

  for (int n = 2; n <= 5; ++n) {
    const GellMannBasis b(n);
    const ComplexMatrix mixed =
        ComplexMatrix::Identity(n, n) / static_cast<double>(n);
    EXPECT_LT(to_bloch(mixed, b).coords.norm(), 1e-15);
    EXPECT_LT(max_abs_diff(from_bloch(BlochVector::zero(n), b), mixed), 1e-15);
  }

  const GellMannBasis b3(3);
  const ComplexMatrix hesse = oracle::projector(hesse_fiducial());
  EXPECT_NEAR(to_bloch(hesse, b3).coords.norm(), std::sqrt(1.0 / 3.0), 1e-14);
}

TEST(BlochMap, RoundTrip) {
  std::mt19937_64 gen(11);
  for (int n = 2; n <= 6; ++n) {
    const GellMannBasis b(n);
    for (int trial = 0; trial < 10; ++trial) {
      ComplexMatrix h = oracle::random_hermitian(n, gen);
      h += (1.0 - h.trace().real()) / n * ComplexMatrix::Identity(n, n);
      const BlochVector v = to_bloch(h, b);
      EXPECT_LT(max_abs_diff(from_bloch(v, b), h), 1e-12);
      const RealVector c = oracle::random_vector(n * n - 1, gen);
      EXPECT_LT((to_bloch(from_bloch(BlochVector(n, c), b), b).coords - c)
                    .cwiseAbs()
                    .maxCoeff(),
                1e-12);
    }
  }
}

TEST(BlochMap, RejectsWrongSizes) {
  const GellMannBasis b(3);
  EXPECT_THROW(to_bloch(ComplexMatrix::Identity(2, 2), b), DimensionMismatch);
  EXPECT_THROW(from_bloch(BlochVector::zero(2), b), DimensionMismatch);
}

TEST(StructureTensor, QubitVanishes) {
  const StructureTensor t = structure_tensor(GellMannBasis(2));
  EXPECT_TRUE(t.entries().empty());
  for (int i = 0; i < 3; ++i) {
    for (int j = 0; j < 3; ++j) {
      for (int k = 0; k < 3; ++k) EXPECT_EQ(t(i, j, k), 0.0);
    }
  }
}

TEST(StructureTensor, QutritCoefficient) {
  const StructureTensor t = structure_tensor(GellMannBasis(3));
  EXPECT_NEAR(t(0, 0, 7), 2.0 / std::sqrt(3.0), 1e-14);
  EXPECT_NEAR(t(7, 0, 0), 2.0 / std::sqrt(3.0), 1e-14);
  EXPECT_NEAR(3.0 * t(0, 0, 7), 2.0 * std::sqrt(3.0), 1e-14);
}

TEST(StructureTensor, ContractionMatchesProducts) {
  std::mt19937_64 gen(5);
  for (int n = 3; n <= 5; ++n) {
    const StructureTensor t = structure_tensor(GellMannBasis(n));
    for (int trial = 0; trial < 100; ++trial) {
      const RealVector v = oracle::random_vector(n * n - 1, gen);
      EXPECT_NEAR(t.contract(v), oracle::cubic_by_products(v, n), 1e-12);
    }
  }
}

TEST(StructureTensor, FullySymmetric) {
  const StructureTensor t = structure_tensor(GellMannBasis(3));
  for (int i = 0; i < 8; ++i) {
    for (int j = 0; j < 8; ++j) {
      for (int k = 0; k < 8; ++k) {
        EXPECT_EQ(t(i, j, k), t(k, i, j));
        EXPECT_EQ(t(i, j, k), t(j, i, k));
      }
    }
  }
}

TEST(AdjointRotation, IdentityAndQubitRotation) {
  const GellMannBasis b2(2);
  EXPECT_LT(max_abs_diff(adjoint_rotation(ComplexMatrix::Identity(2, 2), b2),
                         RealMatrix::Identity(3, 3)),
            1e-15);
  const double theta = 0.7;
  ComplexMatrix u = ComplexMatrix::Zero(2, 2);
  u(0, 0) = std::exp(Complex(0, -theta / 2));
  u(1, 1) = std::exp(Complex(0, theta / 2));
  const RealMatrix m = adjoint_rotation(u, b2);
  RealMatrix expect = RealMatrix::Identity(3, 3);
  expect(0, 0) = std::cos(theta);
  expect(0, 1) = -std::sin(theta);
  expect(1, 0) = std::sin(theta);
  expect(1, 1) = std::cos(theta);
  // u sigma_x u^dagger = cos sigma_x + sin sigma_y
  EXPECT_LT(max_abs_diff(m, expect), 1e-14);
}

TEST(AdjointRotation, Intertwines) {
  std::mt19937_64 gen(3);
  const GellMannBasis b(3);
  const ComplexMatrix u = oracle::random_unitary(3, gen);
  const RealMatrix m = adjoint_rotation(u, b);
  EXPECT_LT((m.transpose() * m - RealMatrix::Identity(8, 8))
                .cwiseAbs()
                .maxCoeff(),
            1e-12);
  for (int trial = 0; trial < 100; ++trial) {
    const RealVector v = oracle::random_vector(8, gen, 0.2);
    const ComplexMatrix rho = from_bloch(BlochVector(3, v), b);
    const ComplexMatrix direct = u * rho * u.adjoint();
    const ComplexMatrix mapped = from_bloch(BlochVector(3, m * v), b);
    EXPECT_LT(max_abs_diff(direct, mapped), 1e-12);
  }
}

TEST(AdjointRotation, Homomorphism) {
  std::mt19937_64 gen(13);
  for (int n = 2; n <= 4; ++n) {
    const GellMannBasis b(n);
    const ComplexMatrix u = oracle::random_unitary(n, gen);
    const ComplexMatrix v = oracle::random_unitary(n, gen);
    EXPECT_LT(max_abs_diff(adjoint_rotation(u * v, b),
                           adjoint_rotation(u, b) * adjoint_rotation(v, b)),
              1e-10);
  }
}

TEST(AdjointRotation, RejectsNonUnitary) {
  const GellMannBasis b(2);
  ComplexMatrix u = ComplexMatrix::Identity(2, 2);
  u(0, 0) = 1.01;
  try {
    adjoint_rotation(u, b);
    FAIL() << "expected NotUnitary";
  } catch (const NotUnitary& e) {
    EXPECT_NEAR(e.defect(), 1.01 * 1.01 - 1.0, 1e-12);
  }
}
