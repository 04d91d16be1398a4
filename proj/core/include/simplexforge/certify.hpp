#pragma once

// Independent verification of (generalized) SIC-POVM families, recomputed
// from the matrices alone.

#include <optional>
#include <vector>

#include "simplexforge/knasteropt.hpp"
#include "simplexforge/whsic.hpp"

namespace simplexforge {

struct VerificationReport {
  int dim = 0;
  int power = 3;
  double f0 = 0.0;
  double tol = 0.0;

  double trace_max_dev = 0.0;    // |Tr P_k - 1|
  double overlap_max_dev = 0.0;  // |Tr(P_j P_k) - 1/(n+1)|
  double gram_max_dev = 0.0;     // |v_j . v_k + 1/(2n(n+1))|
  double radius_max_dev = 0.0;   // ||v_k| - sqrt((n-1)/(2n))|

  std::vector<double> f_values;
  double f_spread = 0.0;
  double f_max_dev = 0.0;  // vs f0

  std::vector<std::vector<double>> spectra;  // direct eigensolve, descending
  double spectral_distance = 0.0;  // max pairwise distance of sorted spectra
  // Direct vs power-sum route; nullopt when the power sums are inconsistent.
  std::optional<double> spectrum_route_dev;
  std::vector<bool> psd_flags;

  std::vector<double> purity_defects;
  bool all_pure = false;
  double triple_sum = 0.0;
  std::optional<double> triple_sum_dev;  // only when all elements are pure

  double last_vertex_reconstruction_dev = 0.0;
  double last_vertex_purity_defect = 0.0;

  bool geometry_ok = false;
  bool values_ok = false;
  bool closure_ok = false;
  bool triple_ok = true;  // vacuous when not evaluated
  bool cospectral = false;
  bool verdict = false;
};

VerificationReport verify_family(const PovmFamilyResult& result,
                                 double tol = 1e-8);

// Hermitian matrices are unitarily equivalent iff their sorted spectra agree.
bool unitary_equivalence_class(const std::vector<HermitianMatrix>& matrices,
                               double tol = 1e-8);

// SIC candidates verify as a power-3 family at the pure-state value.
PovmFamilyResult family_from_sic(const SicCandidate& sic);

}  // namespace simplexforge
