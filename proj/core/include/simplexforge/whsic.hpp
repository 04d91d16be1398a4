#pragma once

// Weyl-Heisenberg displacement operators, fiducial orbits and exact seed
// SIC-POVMs for warm starts.

#include <string>
#include <vector>

#include "simplexforge/blochalg.hpp"

namespace simplexforge {

enum class SicSource { kSeed, kOptimized, kFile };

std::string to_string(SicSource source);
SicSource sic_source_from_string(const std::string& s);

struct SicCandidate {
  int dim = 0;
  std::vector<HermitianMatrix> projectors;
  std::vector<BlochVector> bloch_vertices;
  SicSource source = SicSource::kSeed;
};

// X^a Z^b at index a * n + b, with X|k> = |k+1 mod n>, Z|k> = w^k |k>,
// w = exp(2 pi i / n).
std::vector<ComplexMatrix> displacement_ops(int n);

SicCandidate fiducial_orbit(const ComplexVector& psi, int n,
                            SicSource source = SicSource::kSeed);

struct SicCheck {
  bool ok = false;
  double max_deviation = 0.0;
  double overlap_deviation = 0.0;  // |Tr(P_j P_k) - 1/(n+1)|
  double purity_deviation = 0.0;
  double bloch_deviation = 0.0;  // |v_j . v_k + 1/(2n(n+1))|
};

SicCheck verify_sic(const SicCandidate& c, double tol = 1e-10);

// The stored d = 3 fiducial (0, 1, -1)/sqrt(2).
ComplexVector hesse_fiducial();

// n = 2: regular 3-simplex at radius 1/2. n = 3: orbit of hesse_fiducial().
// Throws Unsupported for other n; use seed_sic_from_fiducial there.
SicCandidate seed_sic(int n);

// Orbit of a caller-supplied fiducial, verified; throws DomainError when the
// orbit is not a SIC at tol.
SicCandidate seed_sic_from_fiducial(const ComplexVector& fiducial,
                                    double tol = 1e-10);

// sum_rst Tr(P_r P_s P_t).
double triple_product_sum(const std::vector<HermitianMatrix>& elements);

}  // namespace simplexforge
