#pragma once

// SO(N) utilities for manifold optimization: skew-symmetric
// parameterisation, exponential retraction and re-orthonormalisation.

#include "simplexforge/types.hpp"

namespace simplexforge {

// Number of independent entries of an N x N skew-symmetric matrix.
inline int skew_dim(int n) { return n * (n - 1) / 2; }

// Parameter l enumerates pairs (a, b), a < b, row-major; the generator is
// E_l = e_a e_b^T - e_b e_a^T.
RealMatrix skew_from_params(const RealVector& params, int n);
RealVector params_from_skew(const RealMatrix& a);

// exp(A) by scaling and squaring with a [6/6] Pade approximant.
RealMatrix expm(const RealMatrix& a);

// Nearest orthogonal matrix (polar factor U V^T of the SVD).
RealMatrix polar_orthonormalize(const RealMatrix& r);

class RotationState {
 public:
  explicit RotationState(RealMatrix r);
  static RotationState identity(int n);

  int ambient_dim() const { return static_cast<int>(r_.rows()); }
  const RealMatrix& matrix() const { return r_; }
  // Parameters of the last applied step.
  const RealVector& tangent() const { return tangent_; }

  // R <- exp(A(params)) R, re-orthonormalised when drift exceeds 1e-12.
  RotationState retract(const RealVector& params) const;

  double orthogonality_drift() const;

 private:
  RealMatrix r_;
  RealVector tangent_;
};

}  // namespace simplexforge
