#pragma once

// Regular simplex construction, rotations that fix a prefix of vertices,
// and the nested sphere sections J_i with their reduction maps.

#include <vector>

#include "simplexforge/types.hpp"

namespace simplexforge {

// Unit vectors in R^N with pairwise inner product -1/N. The full regular
// simplex has N + 1 of them; the n-vector configuration (one short) is also
// representable.
class Simplex {
 public:
  Simplex(int ambient_dim, RealMatrix vertices);

  int ambient_dim() const { return ambient_dim_; }
  int vertex_count() const { return static_cast<int>(vertices_.cols()); }
  // Columns are the vertices.
  const RealMatrix& vertices() const { return vertices_; }
  Eigen::Ref<const RealVector> vertex(int i) const { return vertices_.col(i); }

  RealMatrix gram() const { return vertices_.transpose() * vertices_; }

 private:
  int ambient_dim_;
  RealMatrix vertices_;
};

// Built by the recursion V_N = {(sqrt(N^2-1)/N V_{N-1}, 1/N), (0,..,0,-1)}
// from V_1 = {(1), (-1)}.
Simplex regular_simplex(int ambient_dim);

// The first `count` vertices of s as an n-vector configuration.
Simplex leading_vertices(const Simplex& s, int count);

// Orthonormal basis of R^N whose first j columns span the first j vertices,
// for every j. Modified Gram-Schmidt with one re-orthogonalisation pass.
RealMatrix gram_schmidt_frame(const Simplex& s);

// U = Q diag(I_k, small) Q^T in the Gram-Schmidt frame Q. Fixes vertices
// 0..k-1. small must be special orthogonal of size N - k.
RealMatrix stabilizer_rotation(const Simplex& s, int k,
                               const RealMatrix& small_rotation);

// A small rotation in SO(N - k), for use with stabilizer_rotation, that sends
// vertex `from` to vertex `to` (both >= k). Requires N - k >= 2.
RealMatrix transport_rotation(const Simplex& s, int k, int from, int to);

// Membership of x in J_i (i is 1-based, J_1 = S^{N-1}): x . p_j + 1/N = 0
// within tol for each of the first i - 1 vertices.
bool j_membership(const RealVector& x, const Simplex& s, int i,
                  double tol = 1e-10);

// The composed reduction (r o phi) applied i - 1 times, as one affine map
// x -> (x + offset) / scale followed by projection onto the frame columns
// i-1..N-1.
class SubspaceFrame {
 public:
  SubspaceFrame(const Simplex& s, int level);

  int level() const { return level_; }
  int reduced_dim() const { return static_cast<int>(basis_.cols()); }
  const RealVector& offset() const { return offset_; }
  double scale() const { return scale_; }
  // Radius of phi_i(J_i) before normalisation at each step, 1-based level.
  const std::vector<double>& step_radii() const { return step_radii_; }
  // Reduced anchors p'_1 .. p'_{i-1} in ambient coordinates.
  const std::vector<RealVector>& anchors() const { return anchors_; }

  // Ambient-coordinate image (still in R^N, orthogonal to the anchors).
  RealVector apply_ambient(const RealVector& x) const;
  // Coordinates in R^{N - i + 1}.
  RealVector apply(const RealVector& x) const;

 private:
  int level_;
  std::vector<RealVector> anchors_;
  std::vector<double> step_radii_;
  RealVector offset_;
  double scale_ = 1.0;
  RealMatrix basis_;
};

// Throws DomainError when j_membership(x, s, i, tol) fails.
RealVector reduce_to_sphere(const RealVector& x, const Simplex& s, int i,
                            double tol = 1e-10);

// max |Q^T Q - I|
double orthogonality_defect(const RealMatrix& q);

}  // namespace simplexforge
