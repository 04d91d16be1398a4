#include "simplexforge/whsic.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "simplexforge/simplexgeo.hpp"
#include "simplexforge/tracepoly.hpp"

namespace simplexforge {

std::string to_string(SicSource source) {
  switch (source) {
    case SicSource::kSeed:
      return "seed";
    case SicSource::kOptimized:
      return "optimized";
    case SicSource::kFile:
      return "file";
  }
  return "seed";
}

SicSource sic_source_from_string(const std::string& s) {
  if (s == "optimized") return SicSource::kOptimized;
  if (s == "file") return SicSource::kFile;
  return SicSource::kSeed;
}

std::vector<ComplexMatrix> displacement_ops(int n) {
  if (n < 2) throw InvalidDimension("displacement_ops needs n >= 2");
  ComplexMatrix shift = ComplexMatrix::Zero(n, n);
  ComplexMatrix clock = ComplexMatrix::Zero(n, n);
  for (int k = 0; k < n; ++k) {
    shift((k + 1) % n, k) = 1.0;
    clock(k, k) = std::polar(1.0, 2.0 * std::numbers::pi * k / n);
  }
  std::vector<ComplexMatrix> ops;
  ops.reserve(static_cast<std::size_t>(n * n));
  ComplexMatrix xa = ComplexMatrix::Identity(n, n);
  for (int a = 0; a < n; ++a) {
    ComplexMatrix op = xa;
    for (int b = 0; b < n; ++b) {
      ops.push_back(op);
      op = op * clock;
    }
    xa = shift * xa;
  }
  return ops;
}

SicCandidate fiducial_orbit(const ComplexVector& psi, int n,
                            SicSource source) {
  if (psi.size() != n) {
    throw DimensionMismatch("fiducial_orbit: vector length differs from n");
  }
  if (std::abs(psi.norm() - 1.0) > 1e-12) {
    throw DomainError("fiducial_orbit: fiducial is not a unit vector");
  }
  const GellMannBasis basis(n);
  SicCandidate c;
  c.dim = n;
  c.source = source;
  for (const auto& d : displacement_ops(n)) {
    const ComplexVector phi = d * psi;
    HermitianMatrix p = phi * phi.adjoint();
    c.bloch_vertices.push_back(to_bloch(p, basis));
    c.projectors.push_back(std::move(p));
  }
  return c;
}

SicCheck verify_sic(const SicCandidate& c, double tol) {
  SicCheck check;
  const int n = c.dim;
  const std::size_t count = c.projectors.size();
  if (n < 2 || count != static_cast<std::size_t>(n * n) ||
      c.bloch_vertices.size() != count) {
    check.max_deviation = 1.0;
    return check;
  }
  const double overlap = 1.0 / (n + 1);
  const double bloch_dot = -1.0 / (2.0 * n * (n + 1));
  for (std::size_t j = 0; j < count; ++j) {
    check.purity_deviation =
        std::max(check.purity_deviation, purity_defect(c.projectors[j]));
    for (std::size_t k = j + 1; k < count; ++k) {
      const double tr =
          (c.projectors[j] * c.projectors[k]).trace().real();
      check.overlap_deviation =
          std::max(check.overlap_deviation, std::abs(tr - overlap));
      const double dot =
          c.bloch_vertices[j].coords.dot(c.bloch_vertices[k].coords);
      check.bloch_deviation =
          std::max(check.bloch_deviation, std::abs(dot - bloch_dot));
    }
  }
  check.max_deviation = std::max(
      {check.overlap_deviation, check.purity_deviation, check.bloch_deviation});
  check.ok = check.max_deviation <= tol;
  return check;
}

ComplexVector hesse_fiducial() {
  ComplexVector psi(3);
  psi << 0.0, 1.0, -1.0;
  return psi / std::sqrt(2.0);
}

SicCandidate seed_sic_from_fiducial(const ComplexVector& fiducial,
                                    double tol) {
  const int n = static_cast<int>(fiducial.size());
  SicCandidate c = fiducial_orbit(fiducial, n, SicSource::kSeed);
  const SicCheck check = verify_sic(c, tol);
  if (!check.ok) {
    throw DomainError("fiducial orbit is not a SIC (max deviation " +
                      std::to_string(check.max_deviation) + ")");
  }
  return c;
}

SicCandidate seed_sic(int n) {
  if (n == 2) {
    const GellMannBasis basis(2);
    const Simplex s = regular_simplex(3);
    SicCandidate c;
    c.dim = 2;
    c.source = SicSource::kSeed;
    for (int k = 0; k < s.vertex_count(); ++k) {
      BlochVector v(2, 0.5 * s.vertex(k));
      c.projectors.push_back(from_bloch(v, basis));
      c.bloch_vertices.push_back(std::move(v));
    }
    return c;
  }
  if (n == 3) return seed_sic_from_fiducial(hesse_fiducial(), 1e-12);
  throw Unsupported("no stored seed SIC for dimension " + std::to_string(n) +
                    "; supply a fiducial file");
}

double triple_product_sum(const std::vector<HermitianMatrix>& elements) {
  if (elements.empty()) return 0.0;
  // Termwise; the closed form Tr(S^3), S = sum_r P_r, is what the
  // identity asserts.
  double total = 0.0;
  for (const auto& r : elements) {
    for (const auto& s : elements) {
      const ComplexMatrix rs = r * s;
      for (const auto& t : elements) {
        total += (rs.array() * t.transpose().array()).sum().real();
      }
    }
  }
  return total;
}

}  // namespace simplexforge
