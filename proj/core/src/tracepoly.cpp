#include "simplexforge/tracepoly.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <string>

namespace simplexforge {

namespace {

double re_trace_product(const ComplexMatrix& a, const ComplexMatrix& b) {
  return (a.array() * b.transpose().array()).sum().real();
}

void require_match(const BlochVector& v, int basis_size, const char* what) {
  if (v.size() != basis_size) {
    throw DimensionMismatch(std::string(what) + ": vector length " +
                            std::to_string(v.size()) + ", basis size " +
                            std::to_string(basis_size));
  }
}

Complex horner(const std::vector<Complex>& c, Complex z) {
  Complex acc = c.back();
  for (auto it = c.rbegin() + 1; it != c.rend(); ++it) acc = acc * z + *it;
  return acc;
}

// One Newton step per root, kept only if it shrinks |p|.
void polish(const std::vector<double>& coeffs, std::vector<Complex>& roots) {
  std::vector<Complex> c(coeffs.begin(), coeffs.end());
  std::vector<Complex> dc;
  for (std::size_t i = 1; i < c.size(); ++i) {
    dc.push_back(c[i] * static_cast<double>(i));
  }
  for (auto& z : roots) {
    for (int step = 0; step < 3; ++step) {
      const Complex pz = horner(c, z);
      const Complex dz = horner(dc, z);
      if (std::abs(dz) == 0.0) break;
      const Complex cand = z - pz / dz;
      if (std::abs(horner(c, cand)) < std::abs(pz)) {
        z = cand;
      } else {
        break;
      }
    }
  }
}

std::vector<Complex> quadratic_roots(double a, double b, double c) {
  // a x^2 + b x + c
  const double disc = b * b - 4.0 * a * c;
  if (disc >= 0.0) {
    const double s = std::sqrt(disc);
    const double q = -0.5 * (b + std::copysign(s, b));
    if (q == 0.0) return {Complex(0.0), Complex(0.0)};
    return {Complex(q / a), Complex(c / q)};
  }
  const double re = -b / (2.0 * a);
  const double im = std::sqrt(-disc) / (2.0 * a);
  return {Complex(re, im), Complex(re, -im)};
}

std::vector<Complex> cubic_roots(double a3, double a2, double a1, double a0) {
  const double a = a2 / a3;
  const double b = a1 / a3;
  const double c = a0 / a3;
  const double shift = a / 3.0;
  const double p = b - a * a / 3.0;
  const double q = 2.0 * a * a * a / 27.0 - a * b / 3.0 + c;
  const double scale = std::max({1.0, std::abs(a), std::abs(b), std::abs(c)});

  if (std::abs(p) <= 1e-15 * scale) {
    const double t = std::cbrt(-q);
    const Complex w(-0.5, std::sqrt(3.0) / 2.0);
    return {Complex(t - shift), t * w - shift, t * std::conj(w) - shift};
  }
  const double disc = q * q / 4.0 + p * p * p / 27.0;
  if (disc > 0.0) {
    const double s = std::sqrt(disc);
    const double u = std::cbrt(-q / 2.0 + s);
    const double v = std::cbrt(-q / 2.0 - s);
    const double re = -(u + v) / 2.0 - shift;
    const double im = std::sqrt(3.0) / 2.0 * (u - v);
    return {Complex(u + v - shift), Complex(re, im), Complex(re, -im)};
  }
  // Three real roots.
  const double r = 2.0 * std::sqrt(-p / 3.0);
  const double arg =
      std::clamp(3.0 * q / (p * r), -1.0, 1.0);  // = (3q/2p) sqrt(-3/p)
  const double phi = std::acos(arg) / 3.0;
  std::vector<Complex> roots;
  for (int k = 0; k < 3; ++k) {
    roots.emplace_back(
        r * std::cos(phi - 2.0 * std::numbers::pi * k / 3.0) - shift);
  }
  return roots;
}

std::vector<Complex> aberth_roots(const std::vector<double>& coeffs) {
  const int degree = static_cast<int>(coeffs.size()) - 1;
  std::vector<Complex> c(coeffs.begin(), coeffs.end());
  std::vector<Complex> dc;
  for (int i = 1; i <= degree; ++i) dc.push_back(c[i] * static_cast<double>(i));

  // Cauchy bound on root modulus.
  double bound = 0.0;
  for (int i = 0; i < degree; ++i) {
    bound = std::max(bound, std::abs(coeffs[i] / coeffs[degree]));
  }
  const double radius = 1.0 + bound;
  std::vector<Complex> z(degree);
  for (int k = 0; k < degree; ++k) {
    const double angle = 2.0 * std::numbers::pi * k / degree + 0.4;
    z[k] = std::polar(0.5 * radius, angle);
  }

  constexpr int kMaxIterations = 200;
  constexpr double kTolerance = 1e-14;
  for (int iter = 0; iter < kMaxIterations; ++iter) {
    double largest = 0.0;
    for (int k = 0; k < degree; ++k) {
      const Complex pz = horner(c, z[k]);
      const Complex dz = horner(dc, z[k]);
      if (std::abs(pz) == 0.0) continue;
      const Complex ratio = pz / dz;
      Complex repulsion(0.0);
      for (int j = 0; j < degree; ++j) {
        if (j != k) repulsion += 1.0 / (z[k] - z[j]);
      }
      const Complex step = ratio / (1.0 - ratio * repulsion);
      z[k] -= step;
      largest = std::max(largest, std::abs(step) / (1.0 + std::abs(z[k])));
    }
    if (largest <= kTolerance) break;
  }
  return z;
}

}  // namespace

double pure_state_cubic_value(int n) {
  return static_cast<double>(n - 1) * (n - 2) / (static_cast<double>(n) * n);
}

double pure_state_radius(int n) {
  return std::sqrt(static_cast<double>(n - 1) / (2.0 * n));
}

double f_cubic(const BlochVector& v, const StructureTensor& t) {
  require_match(v, t.basis_size(), "f_cubic");
  return t.contract(v.coords);
}

BlochVector grad_f_cubic(const BlochVector& v, const StructureTensor& t) {
  require_match(v, t.basis_size(), "grad_f_cubic");
  return BlochVector(v.dim, t.contract_gradient(v.coords));
}

double trace_power(const HermitianMatrix& h, int m) {
  if (m < 1) throw DomainError("trace_power needs m >= 1");
  ComplexMatrix acc = h;
  for (int i = 1; i < m; ++i) acc = acc * h;
  const Complex tr = acc.trace();
  if (std::abs(tr.imag()) > 1e-10) {
    throw NumericalIntegrity("trace_power: imaginary residue " +
                             std::to_string(tr.imag()));
  }
  return tr.real();
}

double trace_power_with_gradient(const RealVector& coords, int m,
                                 const GellMannBasis& basis,
                                 RealVector& gradient) {
  if (m < 2) throw DomainError("trace power gradient needs m >= 2");
  HermitianMatrix rho = traceless_part(coords, basis);
  rho.diagonal().array() += 1.0 / basis.dim();
  ComplexMatrix lower = rho;  // rho^{m-1}
  for (int i = 2; i < m; ++i) lower = lower * rho;
  gradient.resize(basis.size());
  for (int j = 0; j < basis.size(); ++j) {
    gradient[j] = m * re_trace_product(lower, basis[j]);
  }
  return re_trace_product(lower, rho);
}

BlochVector grad_trace_power(const BlochVector& v, int m,
                             const GellMannBasis& basis) {
  require_match(v, basis.size(), "grad_trace_power");
  RealVector g;
  trace_power_with_gradient(v.coords, m, basis, g);
  return BlochVector(v.dim, std::move(g));
}

double purity_defect(const HermitianMatrix& h) {
  const double t1 = h.trace().real();
  const double t2 = trace_power(h, 2);
  const double t3 = trace_power(h, 3);
  return std::max({std::abs(t1 - 1.0), std::abs(t2 - 1.0),
                   std::abs(t3 - 1.0)});
}

bool purity_check(const HermitianMatrix& h, double tol) {
  return purity_defect(h) <= tol;
}

TracePowerProfile trace_profile(const HermitianMatrix& h) {
  const int n = static_cast<int>(h.rows());
  TracePowerProfile profile{n, {}};
  ComplexMatrix acc = h;
  for (int k = 1; k <= n; ++k) {
    if (k > 1) acc = acc * h;
    profile.powers.push_back(acc.trace().real());
  }
  return profile;
}

std::vector<double> elementary_from_power_sums(const std::vector<double>& p) {
  const int n = static_cast<int>(p.size());
  std::vector<double> e(n + 1, 0.0);
  e[0] = 1.0;
  for (int k = 1; k <= n; ++k) {
    double acc = 0.0;
    for (int i = 1; i <= k; ++i) {
      const double sign = (i % 2 == 1) ? 1.0 : -1.0;
      acc += sign * e[k - i] * p[i - 1];
    }
    e[k] = acc / k;
  }
  return e;
}

std::vector<Complex> polynomial_roots(const std::vector<double>& coeffs) {
  std::vector<double> c = coeffs;
  while (c.size() > 1 && c.back() == 0.0) c.pop_back();
  const int degree = static_cast<int>(c.size()) - 1;
  std::vector<Complex> roots;
  switch (degree) {
    case 0:
      return roots;
    case 1:
      return {Complex(-c[0] / c[1])};
    case 2:
      roots = quadratic_roots(c[2], c[1], c[0]);
      break;
    case 3:
      roots = cubic_roots(c[3], c[2], c[1], c[0]);
      break;
    default:
      roots = aberth_roots(c);
      break;
  }
  polish(c, roots);
  return roots;
}

std::vector<double> spectrum_from_traces(const TracePowerProfile& profile) {
  const int n = profile.dim;
  if (n < 1 || static_cast<int>(profile.powers.size()) < n) {
    throw DomainError("spectrum_from_traces needs Tr(rho^1..rho^n)");
  }
  const std::vector<double> p(profile.powers.begin(),
                              profile.powers.begin() + n);
  const std::vector<double> e = elementary_from_power_sums(p);
  // det(x I - rho) = sum_k (-1)^k e_k x^{n-k}, stored ascending.
  std::vector<double> coeffs(n + 1);
  for (int k = 0; k <= n; ++k) {
    coeffs[n - k] = (k % 2 == 0 ? 1.0 : -1.0) * e[k];
  }
  const std::vector<Complex> roots = polynomial_roots(coeffs);
  std::vector<double> spectrum;
  spectrum.reserve(roots.size());
  for (const auto& r : roots) {
    if (std::abs(r.imag()) > 1e-8) {
      throw InconsistentProfile(
          "spectrum_from_traces: root with imaginary part " +
          std::to_string(r.imag()));
    }
    spectrum.push_back(r.real());
  }
  std::sort(spectrum.begin(), spectrum.end(), std::greater<>());
  return spectrum;
}

}  // namespace simplexforge
