#include <gtest/gtest.h>

#include <cmath>
#include <numbers>
#include <random>

#include "oracles.hpp"
#include "simplexforge/tracepoly.hpp"
#include "simplexforge/whsic.hpp"

using namespace simplexforge;

namespace {

ComplexVector qubit_fiducial() {
  const double theta = std::acos(1.0 / std::sqrt(3.0));
  ComplexVector psi(2);
  psi << std::cos(theta / 2),
      std::polar(std::sin(theta / 2), std::numbers::pi / 4);
  return psi;
}

}  // namespace

TEST(Displacement, QubitIsPauliUpToPhase) {
  const auto ops = displacement_ops(2);
  ASSERT_EQ(ops.size(), 4u);
  ComplexMatrix x(2, 2), z(2, 2);
  x << 0, 1, 1, 0;
  z << 1, 0, 0, -1;
  EXPECT_LT(max_abs_diff(ops[0], ComplexMatrix::Identity(2, 2)), 1e-15);
  EXPECT_LT(max_abs_diff(ops[1], z), 1e-15);
  EXPECT_LT(max_abs_diff(ops[2], x), 1e-15);
  EXPECT_LT(max_abs_diff(ops[3], x * z), 1e-15);
}

TEST(Displacement, UnitaryAndTraceless) {
  for (int n = 2; n <= 6; ++n) {
    const auto ops = displacement_ops(n);
    ASSERT_EQ(ops.size(), static_cast<std::size_t>(n * n));
    for (std::size_t k = 0; k < ops.size(); ++k) {
      EXPECT_LT(unitarity_defect(ops[k]), 1e-14);
      const Complex t = ops[k].trace();
      EXPECT_NEAR(std::abs(t), k == 0 ? n : 0.0, 1e-13);
    }
  }
  const auto ops3 = displacement_ops(3);
  const ComplexMatrix x = ops3[3];
  const ComplexMatrix z = ops3[1];
  EXPECT_EQ(x * x * x, ComplexMatrix::Identity(3, 3));
  EXPECT_LT(max_abs_diff(z * z * z, ComplexMatrix::Identity(3, 3)), 1e-14);
}

TEST(FiducialOrbit, QubitTetrahedron) {
  const SicCandidate c = fiducial_orbit(qubit_fiducial(), 2);
  for (int j = 0; j < 4; ++j) {
    for (int k = j + 1; k < 4; ++k) {
      EXPECT_NEAR((c.projectors[j] * c.projectors[k]).trace().real(),
                  1.0 / 3.0, 1e-12);
    }
  }
  EXPECT_TRUE(verify_sic(c).ok);
}

TEST(FiducialOrbit, HesseOverlaps) {
  const SicCandidate c = fiducial_orbit(hesse_fiducial(), 3);
  ASSERT_EQ(c.projectors.size(), 9u);
  for (int j = 0; j < 9; ++j) {
    for (int k = 0; k < 9; ++k) {
      const double expect = j == k ? 1.0 : 0.25;
      EXPECT_NEAR((c.projectors[j] * c.projectors[k]).trace().real(), expect,
                  1e-12);
    }
  }
}

TEST(FiducialOrbit, GenericVectorIsNotSic) {
  ComplexVector psi(3);
  psi << 0.3, Complex(0.5, 0.2), -0.7;
  psi.normalize();
  const SicCheck check = verify_sic(fiducial_orbit(psi, 3));
  EXPECT_FALSE(check.ok);
  EXPECT_GT(check.overlap_deviation, 1e-3);
  EXPECT_THROW(seed_sic_from_fiducial(psi), DomainError);
}

TEST(FiducialOrbit, RejectsBadInput) {
  EXPECT_THROW(fiducial_orbit(ComplexVector::Ones(3), 3), DomainError);
  EXPECT_THROW(fiducial_orbit(hesse_fiducial(), 4), DimensionMismatch);
}

TEST(SeedSic, QubitAndQutrit) {
  const SicCandidate s2 = seed_sic(2);
  ASSERT_EQ(s2.projectors.size(), 4u);
  const SicCheck c2 = verify_sic(s2);
  EXPECT_TRUE(c2.ok);
  EXPECT_LT(c2.max_deviation, 1e-12);

  const SicCandidate s3 = seed_sic(3);
  ASSERT_EQ(s3.projectors.size(), 9u);
  const SicCheck c3 = verify_sic(s3);
  EXPECT_TRUE(c3.ok);
  EXPECT_LE(c3.max_deviation, 1e-12);
  EXPECT_NEAR(triple_product_sum(s3.projectors), 81.0, 1e-8);
  EXPECT_NEAR(triple_product_sum(s2.projectors), 16.0, 1e-8);

  EXPECT_THROW(seed_sic(5), Unsupported);
  EXPECT_THROW(seed_sic(4), Unsupported);
}

TEST(SeedSic, PerturbedFiducialFails) {
  std::mt19937_64 gen(31);
  std::normal_distribution<double> d(0.0, 1e-2);
  ComplexVector psi = hesse_fiducial();
  for (int i = 0; i < 3; ++i) psi[i] += Complex(d(gen), d(gen));
  psi.normalize();
  const SicCheck check = verify_sic(fiducial_orbit(psi, 3));
  EXPECT_FALSE(check.ok);
  EXPECT_GT(check.max_deviation, 1e-6);
  EXPECT_LT(check.max_deviation, 1e-1);
}

TEST(SeedSic, BlochEquiangularity) {
  for (int n : {2, 3}) {
    const SicCandidate c = seed_sic(n);
    for (std::size_t j = 0; j < c.bloch_vertices.size(); ++j) {
      for (std::size_t k = j + 1; k < c.bloch_vertices.size(); ++k) {
        const RealVector& a = c.bloch_vertices[j].coords;
        const RealVector& b = c.bloch_vertices[k].coords;
        EXPECT_NEAR(a.dot(b) / (a.norm() * b.norm()), -1.0 / (n * n - 1),
                    1e-10);
      }
    }
  }
}

TEST(SeedSic, OrbitCovariance) {
  for (int n : {2, 3}) {
    const SicCandidate c =
        n == 2 ? fiducial_orbit(qubit_fiducial(), 2) : seed_sic(3);
    for (const auto& d : displacement_ops(n)) {
      std::vector<bool> used(c.projectors.size(), false);
      for (const auto& p : c.projectors) {
        const ComplexMatrix q = d * p * d.adjoint();
        bool found = false;
        for (std::size_t k = 0; k < c.projectors.size() && !found; ++k) {
          if (!used[k] && max_abs_diff(q, c.projectors[k]) <= 1e-10) {
            used[k] = true;
            found = true;
          }
        }
        EXPECT_TRUE(found);
      }
    }
  }
}

TEST(TripleProduct, MatchesTripleLoop) {
  const SicCandidate c = seed_sic(3);
  EXPECT_NEAR(triple_product_sum(c.projectors),
              oracle::triple_sum(c.projectors), 1e-10);
}

TEST(SicSource, StringRoundTrip) {
  for (auto s : {SicSource::kSeed, SicSource::kOptimized, SicSource::kFile}) {
    EXPECT_EQ(sic_source_from_string(to_string(s)), s);
  }
}
