#pragma once

// Generalized Gell-Mann basis and the maps between unit-trace Hermitian
// matrices and their real Bloch coordinates.

#include <array>
#include <vector>

#include "simplexforge/types.hpp"

namespace simplexforge {

// n^2 - 1 traceless Hermitian matrices with Tr(L_j L_k) = 2 delta_jk.
// Order: symmetric block, antisymmetric block, diagonal block. Within the
// off-diagonal blocks the pairs (j, k), j < k, run lexicographically.
class GellMannBasis {
 public:
  explicit GellMannBasis(int n);

  int dim() const { return dim_; }
  int size() const { return static_cast<int>(matrices_.size()); }
  const HermitianMatrix& operator[](int j) const { return matrices_[j]; }
  const std::vector<HermitianMatrix>& matrices() const { return matrices_; }

 private:
  int dim_;
  std::vector<HermitianMatrix> matrices_;
};

GellMannBasis build_basis(int n);

// coords_j = Tr(H L_j) / 2
BlochVector to_bloch(const HermitianMatrix& h, const GellMannBasis& basis);

// I/n + sum_j coords_j L_j
HermitianMatrix from_bloch(const BlochVector& v, const GellMannBasis& basis);

// sum_j coords_j L_j, without the identity part.
HermitianMatrix traceless_part(const RealVector& coords,
                               const GellMannBasis& basis);

// d_ijk = Re Tr(L_i L_j L_k) stored once per sorted index triple i <= j <= k.
class StructureTensor {
 public:
  struct Entry {
    std::array<int, 3> idx;  // sorted ascending
    double value;
    int multiplicity;  // number of distinct permutations of idx
  };

  StructureTensor(int n, std::vector<Entry> entries);

  int dim() const { return dim_; }
  int basis_size() const { return dim_ * dim_ - 1; }
  const std::vector<Entry>& entries() const { return entries_; }

  // Symmetric lookup; any index order.
  double operator()(int i, int j, int k) const;

  // sum_ijk d_ijk v_i v_j v_k over all (unsorted) index triples.
  double contract(const RealVector& v) const;
  // d/dv of contract(v).
  RealVector contract_gradient(const RealVector& v) const;

 private:
  int dim_;
  std::vector<Entry> entries_;
};

StructureTensor structure_tensor(const GellMannBasis& basis);

// M_jk = Tr(L_j u L_k u^dagger) / 2, the image of u under the adjoint map.
// Throws NotUnitary if max|u^dagger u - I| > tol.
RealMatrix adjoint_rotation(const ComplexMatrix& u, const GellMannBasis& basis,
                            double tol = 1e-12);

double hermiticity_defect(const ComplexMatrix& h);
double unitarity_defect(const ComplexMatrix& u);

}  // namespace simplexforge
