#include "simplexforge/rng.hpp"

#include <cmath>
#include <numbers>

#include <Eigen/LU>
#include <Eigen/QR>

namespace simplexforge {

namespace {
constexpr std::uint64_t kGolden = 0x9e3779b97f4a7c15ULL;
}

std::uint64_t CounterRng::mix(std::uint64_t z) {
  z += kGolden;
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

CounterRng::result_type CounterRng::operator()() {
  return mix(key_ + (counter_++) * kGolden);
}

CounterRng CounterRng::split(std::uint64_t stream) const {
  CounterRng child(0);
  child.key_ = mix(key_ ^ mix(stream + 1));
  return child;
}

double CounterRng::uniform() {
  return static_cast<double>((*this)() >> 11) * 0x1.0p-53;
}

double CounterRng::normal() {
  double u1 = uniform();
  while (u1 <= 0.0) u1 = uniform();
  const double u2 = uniform();
  return std::sqrt(-2.0 * std::log(u1)) *
         std::cos(2.0 * std::numbers::pi * u2);
}

RealMatrix random_rotation(int n, CounterRng& rng) {
  RealMatrix g(n, n);
  for (int j = 0; j < n; ++j) {
    for (int i = 0; i < n; ++i) g(i, j) = rng.normal();
  }
  Eigen::HouseholderQR<RealMatrix> qr(g);
  RealMatrix q = qr.householderQ();
  const RealMatrix r = qr.matrixQR().triangularView<Eigen::Upper>();
  for (int j = 0; j < n; ++j) {
    if (r(j, j) < 0.0) q.col(j) = -q.col(j);
  }
  if (q.determinant() < 0.0) q.col(0) = -q.col(0);
  return q;
}

ComplexMatrix random_unitary(int n, CounterRng& rng) {
  ComplexMatrix g(n, n);
  for (int j = 0; j < n; ++j) {
    for (int i = 0; i < n; ++i) g(i, j) = Complex(rng.normal(), rng.normal());
  }
  Eigen::HouseholderQR<ComplexMatrix> qr(g);
  ComplexMatrix q = qr.householderQ();
  for (int j = 0; j < n; ++j) {
    const Complex d = qr.matrixQR()(j, j);
    if (std::abs(d) > 0.0) q.col(j) *= d / std::abs(d);
  }
  return q;
}

RealVector random_unit_vector(int n, CounterRng& rng) {
  RealVector v(n);
  for (int i = 0; i < n; ++i) v[i] = rng.normal();
  return v.normalized();
}

}  // namespace simplexforge
