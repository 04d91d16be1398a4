#pragma once

// Reference computations for the tests. Nothing here calls into the
// library's own numerics beyond basic types.

#include <algorithm>
#include <cmath>
#include <complex>
#include <functional>
#include <random>
#include <vector>

#include <Eigen/Dense>

#include "simplexforge/types.hpp"

namespace oracle {

using simplexforge::Complex;
using simplexforge::ComplexMatrix;
using simplexforge::ComplexVector;
using simplexforge::RealMatrix;
using simplexforge::RealVector;

// The explicit d = 3 cubic polynomial in eight Bloch coordinates.
inline double cubic_d3(const RealVector& r) {
  const double s3 = std::sqrt(3.0);
  const double r1 = r[0], r2 = r[1], r3 = r[2], r4 = r[3];
  const double r5 = r[4], r6 = r[5], r7 = r[6], r8 = r[7];
  return 2 * s3 * r1 * r1 * r8 + 6 * r1 * r2 * r3 + 6 * r1 * r5 * r6 +
         3 * r2 * r2 * r7 - s3 * r2 * r2 * r8 - 6 * r2 * r4 * r6 -
         3 * r3 * r3 * r7 - s3 * r3 * r3 * r8 + 6 * r3 * r4 * r5 +
         2 * s3 * r4 * r4 * r8 + 3 * r5 * r5 * r7 - s3 * r5 * r5 * r8 -
         3 * r6 * r6 * r7 - s3 * r6 * r6 * r8 + 2 * s3 * r7 * r7 * r8 -
         2 * r8 * r8 * r8 / s3;
}

// Gell-Mann matrices written out entry by entry, in the library's order.
inline std::vector<ComplexMatrix> gell_mann(int n) {
  std::vector<ComplexMatrix> out;
  const Complex i(0.0, 1.0);
  for (int j = 0; j < n; ++j) {
    for (int k = j + 1; k < n; ++k) {
      ComplexMatrix m = ComplexMatrix::Zero(n, n);
      m(j, k) = 1.0;
      m(k, j) = 1.0;
      out.push_back(m);
    }
  }
  for (int j = 0; j < n; ++j) {
    for (int k = j + 1; k < n; ++k) {
      ComplexMatrix m = ComplexMatrix::Zero(n, n);
      m(j, k) = -i;
      m(k, j) = i;
      out.push_back(m);
    }
  }
  for (int l = 1; l < n; ++l) {
    ComplexMatrix m = ComplexMatrix::Zero(n, n);
    const double c = std::sqrt(2.0 / (l * (l + 1.0)));
    for (int k = 0; k < l; ++k) m(k, k) = c;
    m(l, l) = -c * l;
    out.push_back(m);
  }
  return out;
}

inline ComplexMatrix density(const RealVector& v, int n) {
  const auto basis = gell_mann(n);
  ComplexMatrix rho = ComplexMatrix::Identity(n, n) / static_cast<double>(n);
  for (int j = 0; j < v.size(); ++j) rho += v[j] * basis[j];
  return rho;
}

// Tr((sum_j v_j L_j)^3) by explicit matrix products.
inline double cubic_by_products(const RealVector& v, int n) {
  const auto basis = gell_mann(n);
  ComplexMatrix h = ComplexMatrix::Zero(n, n);
  for (int j = 0; j < v.size(); ++j) h += v[j] * basis[j];
  return (h * h * h).trace().real();
}

inline double trace_power(const ComplexMatrix& h, int m) {
  ComplexMatrix p = ComplexMatrix::Identity(h.rows(), h.cols());
  for (int k = 0; k < m; ++k) p = p * h;
  return p.trace().real();
}

// Eigenvalues through the general (non-Hermitian) solver, sorted descending.
inline std::vector<double> spectrum(const ComplexMatrix& h) {
  Eigen::ComplexEigenSolver<ComplexMatrix> es(h);
  std::vector<double> ev;
  for (int i = 0; i < es.eigenvalues().size(); ++i) {
    ev.push_back(es.eigenvalues()[i].real());
  }
  std::sort(ev.begin(), ev.end(), std::greater<>());
  return ev;
}

inline RealVector central_difference(
    const std::function<double(const RealVector&)>& f, const RealVector& x,
    double h = 1e-5) {
  RealVector g(x.size());
  for (int i = 0; i < x.size(); ++i) {
    RealVector a = x;
    RealVector b = x;
    a[i] += h;
    b[i] -= h;
    g[i] = (f(a) - f(b)) / (2 * h);
  }
  return g;
}

inline double relative_error(const RealVector& a, const RealVector& b) {
  return (a - b).norm() / std::max(1e-12, b.norm());
}

inline RealVector random_vector(int size, std::mt19937_64& gen,
                                double scale = 1.0) {
  std::normal_distribution<double> d(0.0, scale);
  RealVector v(size);
  for (int i = 0; i < size; ++i) v[i] = d(gen);
  return v;
}

inline ComplexMatrix random_hermitian(int n, std::mt19937_64& gen) {
  std::normal_distribution<double> d;
  ComplexMatrix a(n, n);
  for (int r = 0; r < n; ++r) {
    for (int c = 0; c < n; ++c) a(r, c) = Complex(d(gen), d(gen));
  }
  return (a + a.adjoint()) / 2.0;
}

inline ComplexMatrix random_unitary(int n, std::mt19937_64& gen) {
  std::normal_distribution<double> d;
  ComplexMatrix a(n, n);
  for (int r = 0; r < n; ++r) {
    for (int c = 0; c < n; ++c) a(r, c) = Complex(d(gen), d(gen));
  }
  Eigen::HouseholderQR<ComplexMatrix> qr(a);
  return qr.householderQ() * ComplexMatrix::Identity(n, n);
}

inline ComplexMatrix projector(const ComplexVector& psi) {
  const ComplexVector u = psi / psi.norm();
  return u * u.adjoint();
}

// sum_rst Tr(P_r P_s P_t) by triple loop.
inline double triple_sum(const std::vector<ComplexMatrix>& p) {
  double s = 0.0;
  for (const auto& a : p) {
    for (const auto& b : p) {
      const ComplexMatrix ab = a * b;
      for (const auto& c : p) s += (ab * c).trace().real();
    }
  }
  return s;
}

}  // namespace oracle
