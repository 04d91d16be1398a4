#include "simplexforge/certify.hpp"

#include <algorithm>
#include <cmath>

#include <Eigen/Eigenvalues>

#include "simplexforge/tracepoly.hpp"
#include "simplexforge/whsic.hpp"

namespace simplexforge {

namespace {

constexpr double kPsdThreshold = -1e-10;

std::vector<double> sorted_spectrum(const HermitianMatrix& h) {
  Eigen::SelfAdjointEigenSolver<ComplexMatrix> es(h, Eigen::EigenvaluesOnly);
  std::vector<double> ev(es.eigenvalues().data(),
                         es.eigenvalues().data() + es.eigenvalues().size());
  std::sort(ev.begin(), ev.end(), std::greater<>());
  return ev;
}

double spectral_distance(const std::vector<std::vector<double>>& spectra) {
  double d = 0.0;
  for (std::size_t j = 0; j < spectra.size(); ++j) {
    for (std::size_t k = j + 1; k < spectra.size(); ++k) {
      for (std::size_t i = 0; i < spectra[j].size(); ++i) {
        d = std::max(d, std::abs(spectra[j][i] - spectra[k][i]));
      }
    }
  }
  return d;
}

}  // namespace

VerificationReport verify_family(const PovmFamilyResult& result, double tol) {
  const int n = result.dim;
  if (n < 2) throw InvalidDimension("verify_family: dimension must be >= 2");
  const std::size_t count = result.matrices.size();
  if (count != static_cast<std::size_t>(n * n)) {
    throw DimensionMismatch("verify_family: expected n^2 matrices, got " +
                            std::to_string(count));
  }
  for (const auto& m : result.matrices) {
    if (m.rows() != n || m.cols() != n) {
      throw DimensionMismatch("verify_family: matrix size differs from dim");
    }
  }

  VerificationReport rep;
  rep.dim = n;
  rep.power = result.power;
  rep.f0 = result.f0;
  rep.tol = tol;

  const GellMannBasis basis(n);
  const StructureTensor tensor = structure_tensor(basis);
  std::vector<BlochVector> v;
  v.reserve(count);
  for (const auto& m : result.matrices) v.push_back(to_bloch(m, basis));

  const double overlap = 1.0 / (n + 1);
  const double dot = -1.0 / (2.0 * n * (n + 1));
  const double radius = pure_state_radius(n);
  for (std::size_t j = 0; j < count; ++j) {
    const auto& mj = result.matrices[j];
    rep.trace_max_dev =
        std::max(rep.trace_max_dev, std::abs(mj.trace().real() - 1.0));
    rep.radius_max_dev =
        std::max(rep.radius_max_dev, std::abs(v[j].coords.norm() - radius));
    for (std::size_t k = j + 1; k < count; ++k) {
      const double tr = (mj * result.matrices[k]).trace().real();
      rep.overlap_max_dev = std::max(rep.overlap_max_dev,
                                     std::abs(tr - overlap));
      rep.gram_max_dev = std::max(
          rep.gram_max_dev, std::abs(v[j].coords.dot(v[k].coords) - dot));
    }
  }

  for (std::size_t k = 0; k < count; ++k) {
    const double g = result.power == 3
                         ? f_cubic(v[k], tensor)
                         : trace_power(result.matrices[k], result.power);
    rep.f_values.push_back(g);
    rep.f_max_dev = std::max(rep.f_max_dev, std::abs(g - result.f0));
  }
  const auto [lo, hi] =
      std::minmax_element(rep.f_values.begin(), rep.f_values.end());
  rep.f_spread = *hi - *lo;

  double route_dev = 0.0;
  bool route_ok = true;
  for (const auto& m : result.matrices) {
    auto direct = sorted_spectrum(m);
    rep.psd_flags.push_back(direct.back() >= kPsdThreshold);
    try {
      const auto via_traces = spectrum_from_traces(trace_profile(m));
      for (std::size_t i = 0; i < direct.size(); ++i) {
        route_dev = std::max(route_dev, std::abs(direct[i] - via_traces[i]));
      }
    } catch (const InconsistentProfile&) {
      route_ok = false;
    }
    rep.spectra.push_back(std::move(direct));
    rep.purity_defects.push_back(purity_defect(m));
  }
  if (route_ok) rep.spectrum_route_dev = route_dev;
  rep.spectral_distance = spectral_distance(rep.spectra);
  rep.cospectral = rep.spectral_distance <= tol;

  rep.all_pure = std::all_of(rep.purity_defects.begin(),
                             rep.purity_defects.end(),
                             [](double d) { return d <= 1e-10; });
  rep.triple_sum = triple_product_sum(result.matrices);
  if (rep.all_pure) {
    const double n4 = std::pow(static_cast<double>(n), 4);
    rep.triple_sum_dev = std::abs(rep.triple_sum - n4);
    rep.triple_ok = *rep.triple_sum_dev <= tol;
  }

  const std::vector<HermitianMatrix> first(result.matrices.begin(),
                                           result.matrices.end() - 1);
  HermitianMatrix closing = static_cast<double>(n) *
                            ComplexMatrix::Identity(n, n);
  for (const auto& m : first) closing -= m;
  rep.last_vertex_reconstruction_dev =
      (closing - result.matrices.back()).cwiseAbs().maxCoeff();
  rep.last_vertex_purity_defect = purity_defect(closing);

  rep.geometry_ok = rep.trace_max_dev <= tol && rep.overlap_max_dev <= tol &&
                    rep.gram_max_dev <= tol && rep.radius_max_dev <= tol;
  rep.values_ok = rep.f_max_dev <= tol;
  rep.closure_ok = rep.last_vertex_reconstruction_dev <= tol;
  rep.verdict = rep.geometry_ok && rep.values_ok && rep.closure_ok &&
                rep.triple_ok;
  return rep;
}

bool unitary_equivalence_class(const std::vector<HermitianMatrix>& matrices,
                               double tol) {
  std::vector<std::vector<double>> spectra;
  for (const auto& m : matrices) {
    if (!spectra.empty() && m.rows() != matrices.front().rows()) {
      throw DimensionMismatch("unitary_equivalence_class: sizes differ");
    }
    spectra.push_back(sorted_spectrum(m));
  }
  return spectral_distance(spectra) <= tol;
}

PovmFamilyResult family_from_sic(const SicCandidate& sic) {
  PovmFamilyResult r;
  r.dim = sic.dim;
  r.power = 3;
  r.f0 = pure_state_cubic_value(sic.dim);
  r.matrices = sic.projectors;
  r.vertices = sic.bloch_vertices;
  r.source = to_string(sic.source);
  const GellMannBasis basis(sic.dim);
  const StructureTensor tensor = structure_tensor(basis);
  for (std::size_t k = 0; k < sic.projectors.size(); ++k) {
    const double res = f_cubic(sic.bloch_vertices[k], tensor) - r.f0;
    r.per_vertex_residuals.push_back(res);
    r.residual_sum += res * res;
    auto spec = sorted_spectrum(sic.projectors[k]);
    r.psd_flags.push_back(spec.back() >= kPsdThreshold);
    r.spectra.push_back(std::move(spec));
  }
  r.converged = true;
  if (!sic.projectors.empty()) {
    const ObjectiveContext ctx(sic.dim);
    try {
      r.rotation = rotation_from_vertices(ctx, sic.bloch_vertices).matrix();
    } catch (const Error&) {
      r.rotation.resize(0, 0);
    }
  }
  return r;
}

}  // namespace simplexforge
