#include "simplexforge/blochalg.hpp"

#include <algorithm>
#include <cmath>
#include <string>

namespace simplexforge {

namespace {

void require_same_dim(int a, int b, const char* what) {
  if (a != b) {
    throw DimensionMismatch(std::string(what) + ": dimension " +
                            std::to_string(a) + " vs " + std::to_string(b));
  }
}

// Re Tr(A B) without forming the product.
double re_trace_product(const ComplexMatrix& a, const ComplexMatrix& b) {
  return (a.array() * b.transpose().array()).sum().real();
}

}  // namespace

GellMannBasis::GellMannBasis(int n) : dim_(n) {
  if (n < 2) {
    throw InvalidDimension("Gell-Mann basis needs n >= 2, got " +
                           std::to_string(n));
  }
  matrices_.reserve(static_cast<std::size_t>(n * n - 1));
  const Complex i_unit(0.0, 1.0);

  for (int j = 0; j < n; ++j) {
    for (int k = j + 1; k < n; ++k) {
      HermitianMatrix m = HermitianMatrix::Zero(n, n);
      m(j, k) = 1.0;
      m(k, j) = 1.0;
      matrices_.push_back(std::move(m));
    }
  }
  for (int j = 0; j < n; ++j) {
    for (int k = j + 1; k < n; ++k) {
      HermitianMatrix m = HermitianMatrix::Zero(n, n);
      m(j, k) = -i_unit;
      m(k, j) = i_unit;
      matrices_.push_back(std::move(m));
    }
  }
  // c_l (sum_{k<=l} |k><k| - l |l+1><l+1|), c_l = sqrt(2 / (l (l + 1))).
  for (int l = 1; l < n; ++l) {
    const double c = std::sqrt(2.0 / (static_cast<double>(l) * (l + 1)));
    HermitianMatrix m = HermitianMatrix::Zero(n, n);
    for (int k = 0; k < l; ++k) m(k, k) = c;
    m(l, l) = -c * l;
    matrices_.push_back(std::move(m));
  }
}

GellMannBasis build_basis(int n) { return GellMannBasis(n); }

BlochVector to_bloch(const HermitianMatrix& h, const GellMannBasis& basis) {
  require_same_dim(static_cast<int>(h.rows()), basis.dim(), "to_bloch");
  require_same_dim(static_cast<int>(h.cols()), basis.dim(), "to_bloch");
  RealVector coords(basis.size());
  for (int j = 0; j < basis.size(); ++j) {
    coords[j] = 0.5 * re_trace_product(h, basis[j]);
  }
  return BlochVector(basis.dim(), std::move(coords));
}

HermitianMatrix traceless_part(const RealVector& coords,
                               const GellMannBasis& basis) {
  require_same_dim(static_cast<int>(coords.size()), basis.size(),
                   "traceless_part");
  const int n = basis.dim();
  HermitianMatrix h = HermitianMatrix::Zero(n, n);
  for (int j = 0; j < basis.size(); ++j) h += coords[j] * basis[j];
  return h;
}

HermitianMatrix from_bloch(const BlochVector& v, const GellMannBasis& basis) {
  require_same_dim(v.dim, basis.dim(), "from_bloch");
  const int n = basis.dim();
  HermitianMatrix h = traceless_part(v.coords, basis);
  h.diagonal().array() += 1.0 / n;
  return h;
}

StructureTensor::StructureTensor(int n, std::vector<Entry> entries)
    : dim_(n), entries_(std::move(entries)) {}

double StructureTensor::operator()(int i, int j, int k) const {
  std::array<int, 3> key{i, j, k};
  std::sort(key.begin(), key.end());
  auto it = std::lower_bound(
      entries_.begin(), entries_.end(), key,
      [](const Entry& e, const std::array<int, 3>& k2) { return e.idx < k2; });
  if (it != entries_.end() && it->idx == key) return it->value;
  return 0.0;
}

double StructureTensor::contract(const RealVector& v) const {
  double sum = 0.0;
  for (const auto& e : entries_) {
    sum += e.multiplicity * e.value * v[e.idx[0]] * v[e.idx[1]] * v[e.idx[2]];
  }
  return sum;
}

RealVector StructureTensor::contract_gradient(const RealVector& v) const {
  RealVector g = RealVector::Zero(v.size());
  for (const auto& e : entries_) {
    const auto [i, j, k] = e.idx;
    const double w = e.multiplicity * e.value;
    g[i] += w * v[j] * v[k];
    g[j] += w * v[i] * v[k];
    g[k] += w * v[i] * v[j];
  }
  return g;
}

StructureTensor structure_tensor(const GellMannBasis& basis) {
  const int size = basis.size();
  std::vector<StructureTensor::Entry> entries;
  for (int i = 0; i < size; ++i) {
    for (int j = i; j < size; ++j) {
      const ComplexMatrix ij = basis[i] * basis[j];
      for (int k = j; k < size; ++k) {
        const double d = re_trace_product(ij, basis[k]);
        // Gell-Mann products have entries of order 1; anything this small
        // is rounding on an exact zero.
        if (std::abs(d) < 1e-13) continue;
        int mult = 6;
        if (i == j && j == k) {
          mult = 1;
        } else if (i == j || j == k) {
          mult = 3;
        }
        entries.push_back({{i, j, k}, d, mult});
      }
    }
  }
  return StructureTensor(basis.dim(), std::move(entries));
}

double hermiticity_defect(const ComplexMatrix& h) {
  return (h - h.adjoint()).cwiseAbs().maxCoeff();
}

double unitarity_defect(const ComplexMatrix& u) {
  const auto n = u.rows();
  return (u.adjoint() * u - ComplexMatrix::Identity(n, n))
      .cwiseAbs()
      .maxCoeff();
}

RealMatrix adjoint_rotation(const ComplexMatrix& u, const GellMannBasis& basis,
                            double tol) {
  require_same_dim(static_cast<int>(u.rows()), basis.dim(),
                   "adjoint_rotation");
  require_same_dim(static_cast<int>(u.cols()), basis.dim(),
                   "adjoint_rotation");
  const double defect = unitarity_defect(u);
  if (defect > tol) {
    throw NotUnitary("adjoint_rotation: input is not unitary (defect " +
                         std::to_string(defect) + ")",
                     defect);
  }
  const int size = basis.size();
  const ComplexMatrix u_adj = u.adjoint();
  RealMatrix m(size, size);
  for (int k = 0; k < size; ++k) {
    const ComplexMatrix conj = u * basis[k] * u_adj;
    for (int j = 0; j < size; ++j) {
      m(j, k) = 0.5 * re_trace_product(basis[j], conj);
    }
  }
  return m;
}

}  // namespace simplexforge
