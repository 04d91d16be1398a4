#include "simplexforge/simplexgeo.hpp"

#include <cmath>
#include <string>

#include <Eigen/LU>

namespace simplexforge {

Simplex::Simplex(int ambient_dim, RealMatrix vertices)
    : ambient_dim_(ambient_dim), vertices_(std::move(vertices)) {
  if (ambient_dim < 1) {
    throw InvalidDimension("simplex ambient dimension must be >= 1");
  }
  if (vertices_.rows() != ambient_dim) {
    throw DimensionMismatch("simplex vertices have " +
                            std::to_string(vertices_.rows()) +
                            " rows, expected " + std::to_string(ambient_dim));
  }
}

Simplex regular_simplex(int ambient_dim) {
  if (ambient_dim < 1) {
    throw InvalidDimension("regular_simplex needs N >= 1, got " +
                           std::to_string(ambient_dim));
  }
  RealMatrix v(1, 2);
  v << 1.0, -1.0;
  for (int level = 2; level <= ambient_dim; ++level) {
    const double n = level;
    const double shrink = std::sqrt(n * n - 1.0) / n;
    RealMatrix next = RealMatrix::Zero(level, level + 1);
    next.topLeftCorner(level - 1, level) = shrink * v;
    next.row(level - 1).head(level).setConstant(1.0 / n);
    next(level - 1, level) = -1.0;
    v = std::move(next);
  }
  return Simplex(ambient_dim, std::move(v));
}

Simplex leading_vertices(const Simplex& s, int count) {
  if (count < 1 || count > s.vertex_count()) {
    throw DomainError("leading_vertices: count out of range");
  }
  return Simplex(s.ambient_dim(), s.vertices().leftCols(count));
}

RealMatrix gram_schmidt_frame(const Simplex& s) {
  const int n = s.ambient_dim();
  if (s.vertex_count() < n) {
    throw DomainError("gram_schmidt_frame needs at least N vertices");
  }
  RealMatrix q(n, n);
  for (int j = 0; j < n; ++j) {
    RealVector v = s.vertex(j);
    for (int pass = 0; pass < 2; ++pass) {
      for (int i = 0; i < j; ++i) v -= q.col(i).dot(v) * q.col(i);
    }
    const double norm = v.norm();
    if (norm < 1e-13) {
      throw NumericalIntegrity("gram_schmidt_frame: vertices are dependent");
    }
    q.col(j) = v / norm;
  }
  return q;
}

double orthogonality_defect(const RealMatrix& q) {
  return (q.transpose() * q - RealMatrix::Identity(q.cols(), q.cols()))
      .cwiseAbs()
      .maxCoeff();
}

RealMatrix stabilizer_rotation(const Simplex& s, int k,
                               const RealMatrix& small_rotation) {
  const int n = s.ambient_dim();
  if (k < 1 || k > n - 1) {
    throw DomainError("stabilizer_rotation: k must be in [1, N-1], got " +
                      std::to_string(k));
  }
  if (small_rotation.rows() != n - k || small_rotation.cols() != n - k) {
    throw DimensionMismatch("stabilizer_rotation: small rotation must be " +
                            std::to_string(n - k) + "x" +
                            std::to_string(n - k));
  }
  const double defect = orthogonality_defect(small_rotation);
  if (defect > 1e-12) {
    throw NotUnitary("stabilizer_rotation: small rotation is not orthogonal",
                     defect);
  }
  if (small_rotation.determinant() < 0.0) {
    throw NotUnitary("stabilizer_rotation: small rotation has determinant -1",
                     2.0);
  }
  const RealMatrix q = gram_schmidt_frame(s);
  RealMatrix block = RealMatrix::Identity(n, n);
  block.bottomRightCorner(n - k, n - k) = small_rotation;
  return q * block * q.transpose();
}

RealMatrix transport_rotation(const Simplex& s, int k, int from, int to) {
  const int n = s.ambient_dim();
  const int m = n - k;
  if (k < 1 || m < 2) {
    throw DomainError("transport_rotation needs 1 <= k <= N-2");
  }
  if (from < k || to < k || from >= s.vertex_count() ||
      to >= s.vertex_count()) {
    throw DomainError("transport_rotation: vertices must not be fixed ones");
  }
  const RealMatrix q = gram_schmidt_frame(s);
  const RealVector a = (q.transpose() * s.vertex(from)).tail(m);
  const RealVector b = (q.transpose() * s.vertex(to)).tail(m);

  const RealVector u = a.normalized();
  RealVector w = b - b.dot(u) * u;
  double wn = w.norm();
  if (wn < 1e-12 * b.norm()) {
    if (b.dot(u) > 0.0) return RealMatrix::Identity(m, m);
    // Antipodal: rotate by pi in any plane containing u.
    int axis = 0;
    u.cwiseAbs().minCoeff(&axis);
    w = RealVector::Unit(m, axis);
    w -= w.dot(u) * u;
    wn = w.norm();
  }
  w /= wn;
  const double c = u.dot(b) / b.norm();
  const double sn = w.dot(b) / b.norm();
  RealMatrix r = RealMatrix::Identity(m, m);
  r += (c - 1.0) * (u * u.transpose() + w * w.transpose());
  r += sn * (w * u.transpose() - u * w.transpose());
  return r;
}

bool j_membership(const RealVector& x, const Simplex& s, int i, double tol) {
  if (x.size() != s.ambient_dim()) return false;
  const double c = 1.0 / s.ambient_dim();
  for (int j = 0; j < i - 1 && j < s.vertex_count(); ++j) {
    if (std::abs(x.dot(s.vertex(j)) + c) > tol) return false;
  }
  return true;
}

SubspaceFrame::SubspaceFrame(const Simplex& s, int level) : level_(level) {
  const int n = s.ambient_dim();
  if (level < 1 || level > n) {
    throw DomainError("SubspaceFrame: level must be in [1, N], got " +
                      std::to_string(level));
  }
  offset_ = RealVector::Zero(n);
  // Step t maps x -> (x + p'_t / c) / sqrt(1 - 1/c^2) with c = N - t + 1,
  // the equiangularity constant of the current level.
  for (int t = 1; t < level; ++t) {
    const double c = n - t + 1;
    RealVector anchor = (s.vertex(t - 1) + offset_) / scale_;
    const double radius = std::sqrt((c * c - 1.0) / (c * c));
    offset_ += scale_ * anchor / c;
    scale_ *= radius;
    anchors_.push_back(std::move(anchor));
    step_radii_.push_back(radius);
  }
  basis_ = gram_schmidt_frame(s).rightCols(n - level + 1);
}

RealVector SubspaceFrame::apply_ambient(const RealVector& x) const {
  return (x + offset_) / scale_;
}

RealVector SubspaceFrame::apply(const RealVector& x) const {
  return basis_.transpose() * apply_ambient(x);
}

RealVector reduce_to_sphere(const RealVector& x, const Simplex& s, int i,
                            double tol) {
  if (std::abs(x.norm() - 1.0) > tol || !j_membership(x, s, i, tol)) {
    throw DomainError("reduce_to_sphere: vector is not in J_" +
                      std::to_string(i));
  }
  return SubspaceFrame(s, i).apply(x);
}

}  // namespace simplexforge
