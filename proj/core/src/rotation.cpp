#include "simplexforge/rotation.hpp"

#include <cmath>

#include <Eigen/LU>
#include <Eigen/SVD>

#include "simplexforge/simplexgeo.hpp"

namespace simplexforge {

RealMatrix skew_from_params(const RealVector& params, int n) {
  if (params.size() != skew_dim(n)) {
    throw DimensionMismatch("skew_from_params: wrong parameter count");
  }
  RealMatrix a = RealMatrix::Zero(n, n);
  int l = 0;
  for (int i = 0; i < n; ++i) {
    for (int j = i + 1; j < n; ++j, ++l) {
      a(i, j) = params[l];
      a(j, i) = -params[l];
    }
  }
  return a;
}

RealVector params_from_skew(const RealMatrix& a) {
  const int n = static_cast<int>(a.rows());
  RealVector p(skew_dim(n));
  int l = 0;
  for (int i = 0; i < n; ++i) {
    for (int j = i + 1; j < n; ++j, ++l) p[l] = 0.5 * (a(i, j) - a(j, i));
  }
  return p;
}

RealMatrix expm(const RealMatrix& a) {
  constexpr int kOrder = 6;
  const auto n = a.rows();
  const double norm = a.cwiseAbs().colwise().sum().maxCoeff();
  int squarings = 0;
  if (norm > 0.5) {
    squarings = std::max(0, static_cast<int>(std::ceil(std::log2(norm / 0.5))));
  }
  const RealMatrix x = a / std::ldexp(1.0, squarings);

  // c_k = (2p - k)! p! / ((2p)! k! (p - k)!)
  RealMatrix num = RealMatrix::Identity(n, n);
  RealMatrix den = RealMatrix::Identity(n, n);
  RealMatrix power = RealMatrix::Identity(n, n);
  double c = 1.0;
  for (int k = 1; k <= kOrder; ++k) {
    c *= static_cast<double>(kOrder - k + 1) / (k * (2 * kOrder - k + 1));
    power = power * x;
    num += c * power;
    den += ((k % 2 == 0) ? c : -c) * power;
  }
  RealMatrix e = den.partialPivLu().solve(num);
  for (int s = 0; s < squarings; ++s) e = e * e;
  return e;
}

RealMatrix polar_orthonormalize(const RealMatrix& r) {
  Eigen::JacobiSVD<RealMatrix> svd(r, Eigen::ComputeFullU | Eigen::ComputeFullV);
  return svd.matrixU() * svd.matrixV().transpose();
}

RotationState::RotationState(RealMatrix r)
    : r_(std::move(r)), tangent_(RealVector::Zero(skew_dim(r_.rows()))) {
  if (r_.rows() != r_.cols()) {
    throw DimensionMismatch("RotationState: matrix must be square");
  }
  const double drift = orthogonality_drift();
  if (drift > 1e-8) {
    throw NotUnitary("RotationState: matrix is not orthogonal", drift);
  }
  if (drift > 1e-12) r_ = polar_orthonormalize(r_);
}

RotationState RotationState::identity(int n) {
  return RotationState(RealMatrix::Identity(n, n));
}

double RotationState::orthogonality_drift() const {
  return orthogonality_defect(r_);
}

RotationState RotationState::retract(const RealVector& params) const {
  const int n = ambient_dim();
  RotationState next(*this);
  next.r_ = expm(skew_from_params(params, n)) * r_;
  if (next.orthogonality_drift() > 1e-12) {
    next.r_ = polar_orthonormalize(next.r_);
  }
  next.tangent_ = params;
  return next;
}

}  // namespace simplexforge
