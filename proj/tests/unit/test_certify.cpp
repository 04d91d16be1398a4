#include <gtest/gtest.h>

#include <cmath>

#include "oracles.hpp"
#include "simplexforge/certify.hpp"
#include "simplexforge/tracepoly.hpp"

using namespace simplexforge;

namespace {

const PovmFamilyResult& generalized() {
  static const PovmFamilyResult r = [] {
    const ObjectiveContext ctx(3);
    OptimizerConfig cfg;
    cfg.f0 = 0.1;
    return optimize(rotation_from_vertices(ctx, seed_sic(3).bloch_vertices),
                    ctx, cfg);
  }();
  return r;
}

}  // namespace

TEST(VerifyFamily, SeedSic) {
  const VerificationReport rep = verify_family(family_from_sic(seed_sic(3)));
  EXPECT_LE(rep.trace_max_dev, 1e-10);
  EXPECT_LE(rep.overlap_max_dev, 1e-10);
  EXPECT_LE(rep.gram_max_dev, 1e-10);
  EXPECT_LE(rep.radius_max_dev, 1e-10);
  EXPECT_LE(rep.f_max_dev, 1e-10);
  EXPECT_TRUE(rep.all_pure);
  ASSERT_TRUE(rep.triple_sum_dev.has_value());
  EXPECT_NEAR(rep.triple_sum, 81.0, 1e-8);
  EXPECT_LE(*rep.triple_sum_dev, 1e-8);
  EXPECT_TRUE(rep.cospectral);
  EXPECT_TRUE(rep.verdict);
  ASSERT_TRUE(rep.spectrum_route_dev.has_value());
  EXPECT_LE(*rep.spectrum_route_dev, 1e-7);
  EXPECT_LE(rep.last_vertex_reconstruction_dev, 1e-12);
}

TEST(VerifyFamily, QubitSicsPass) {
  const VerificationReport rep = verify_family(family_from_sic(seed_sic(2)));
  EXPECT_TRUE(rep.verdict);
  EXPECT_NEAR(rep.triple_sum, 16.0, 1e-8);
}

TEST(VerifyFamily, GeneralizedQutrit) {
  const PovmFamilyResult& r = generalized();
  ASSERT_TRUE(r.converged);
  const VerificationReport rep = verify_family(r);
  EXPECT_LE(rep.gram_max_dev, 1e-8);
  EXPECT_LE(rep.radius_max_dev, 1e-8);
  EXPECT_LE(rep.f_spread, 1e-8);
  EXPECT_FALSE(rep.all_pure);
  EXPECT_FALSE(rep.triple_sum_dev.has_value());
  EXPECT_TRUE(rep.triple_ok);
  EXPECT_TRUE(rep.cospectral);
  EXPECT_TRUE(rep.verdict);
  EXPECT_NEAR(rep.last_vertex_purity_defect, purity_defect(r.matrices.back()),
              1e-10);
}

TEST(VerifyFamily, EndogenousAgreesWithStoredVertices) {
  const PovmFamilyResult& r = generalized();
  const VerificationReport rep = verify_family(r);
  const StructureTensor t = structure_tensor(GellMannBasis(3));
  for (int k = 0; k < 9; ++k) {
    EXPECT_NEAR(rep.f_values[k], f_cubic(r.vertices[k], t), 1e-10);
    EXPECT_NEAR(rep.f_values[k] - r.f0, r.per_vertex_residuals[k], 1e-10);
  }
}

TEST(VerifyFamily, CorruptedVertexIsCaught) {
  PovmFamilyResult r = family_from_sic(seed_sic(3));
  const GellMannBasis b(3);
  BlochVector v = r.vertices[4];
  v.coords *= 1.01;
  r.matrices[4] = from_bloch(v, b);
  const VerificationReport rep = verify_family(r);
  EXPECT_NEAR(rep.radius_max_dev, 0.01 * std::sqrt(1.0 / 3.0), 1e-12);
  EXPECT_FALSE(rep.geometry_ok);
  EXPECT_FALSE(rep.verdict);
}

TEST(VerifyFamily, VerdictFollowsTolerance) {
  const VerificationReport loose = verify_family(generalized(), 1e-8);
  const VerificationReport tight = verify_family(generalized(), 1e-30);
  EXPECT_TRUE(loose.verdict);
  EXPECT_FALSE(tight.verdict);
  EXPECT_EQ(loose.gram_max_dev, tight.gram_max_dev);
  EXPECT_GE(tight.gram_max_dev, 0.0);
  EXPECT_GE(tight.spectral_distance, 0.0);
}

TEST(VerifyFamily, MalformedInput) {
  PovmFamilyResult r = family_from_sic(seed_sic(3));
  r.matrices.pop_back();
  EXPECT_THROW(verify_family(r), DimensionMismatch);
  r = family_from_sic(seed_sic(3));
  r.matrices[0] = ComplexMatrix::Identity(2, 2);
  EXPECT_THROW(verify_family(r), DimensionMismatch);
  r.dim = 1;
  EXPECT_THROW(verify_family(r), InvalidDimension);
}

TEST(UnitaryEquivalence, Classification) {
  EXPECT_TRUE(unitary_equivalence_class(generalized().matrices));
  const SicCandidate s = seed_sic(3);
  EXPECT_TRUE(unitary_equivalence_class(s.projectors));
  EXPECT_FALSE(unitary_equivalence_class(
      {ComplexMatrix::Identity(3, 3) / 3.0, s.projectors[0]}));
  EXPECT_THROW(unitary_equivalence_class(
                   {ComplexMatrix::Identity(3, 3), ComplexMatrix::Identity(2, 2)}),
               DimensionMismatch);
}

TEST(FamilyFromSic, CarriesSourceAndValues) {
  const PovmFamilyResult r = family_from_sic(seed_sic(3));
  EXPECT_EQ(r.source, "seed");
  EXPECT_EQ(r.power, 3);
  EXPECT_NEAR(r.f0, 2.0 / 9.0, 1e-16);
  EXPECT_LE(r.residual_sum, 1e-24);
  EXPECT_TRUE(r.psd_all());
}
