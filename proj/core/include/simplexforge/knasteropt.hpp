#pragma once

// Orientation search for a regular (n^2-1)-simplex on the Bloch sphere whose
// vertices share a trace-power value, plus the continuity-circle profile and
// the S^1 base-case solver.

#include <complex>
#include <cstdint>
#include <functional>
#include <string>
#include <vector>

#include "simplexforge/blochalg.hpp"
#include "simplexforge/rotation.hpp"
#include "simplexforge/simplexgeo.hpp"

namespace simplexforge {

struct OptimizerConfig {
  int power = 3;  // m >= 3; m = 3 targets the cubic form, m > 3 Tr(rho^m)
  double f0 = 0.0;
  double tol_residual = 1e-18;  // on the sum of squared residuals
  int max_iters = 500;
  double lm_damping = 1e-3;
  std::uint64_t seed = 0;

  void validate() const;
};

// Everything the objective needs for one Hilbert dimension: basis, cubic
// tensor and the reference simplex scaled to the pure-state radius.
class ObjectiveContext {
 public:
  explicit ObjectiveContext(int n);

  int dim() const { return n_; }
  int ambient_dim() const { return n_ * n_ - 1; }
  int vertex_count() const { return n_ * n_; }
  const GellMannBasis& basis() const { return basis_; }
  const StructureTensor& tensor() const { return tensor_; }
  const Simplex& unit_reference() const { return unit_reference_; }
  // Columns: reference vertices at radius sqrt((n-1)/(2n)).
  const RealMatrix& reference() const { return reference_; }
  double radius() const { return radius_; }

  // g(v) = f_cubic(v) for power 3, Tr((I/n + L.v)^m) otherwise.
  double value(const RealVector& v, int power) const;
  double value_with_gradient(const RealVector& v, int power,
                             RealVector& gradient) const;

 private:
  int n_;
  GellMannBasis basis_;
  StructureTensor tensor_;
  Simplex unit_reference_;
  RealMatrix reference_;
  double radius_;
};

struct PovmFamilyResult {
  int dim = 0;
  double f0 = 0.0;
  int power = 3;
  std::vector<BlochVector> vertices;
  std::vector<HermitianMatrix> matrices;
  double residual_sum = 0.0;
  std::vector<double> per_vertex_residuals;
  std::vector<std::vector<double>> spectra;  // descending
  std::vector<bool> psd_flags;
  int iterations = 0;
  int restarts = 0;  // perturbed restarts after a stall
  double wall_time_s = 0.0;
  bool converged = false;
  bool nondeterministic = false;
  RealMatrix rotation;
  // residual_sum after each accepted step of the final LM segment.
  std::vector<double> cost_history;
  std::string source = "optimized";

  bool psd_all() const;
  // max over elements of the L_inf distance between sorted spectra.
  double spectra_spread() const;
};

// residual_k = g(R p_k) - f0 over all n^2 reference vertices.
RealVector objective(const RotationState& r, const ObjectiveContext& ctx,
                     const OptimizerConfig& cfg);

// Rows: vertices, columns: skew generators E_l; J_kl = grad g(R p_k) . E_l R p_k.
RealMatrix objective_jacobian(const RotationState& r,
                              const ObjectiveContext& ctx,
                              const OptimizerConfig& cfg);

// Orthogonal R with R * reference = vertices (least squares, polar-projected).
RotationState rotation_from_vertices(const ObjectiveContext& ctx,
                                     const std::vector<BlochVector>& vertices);

// Result record for a fixed orientation; no optimisation.
PovmFamilyResult evaluate_orientation(const RotationState& r,
                                      const ObjectiveContext& ctx,
                                      const OptimizerConfig& cfg);

// Levenberg-Marquardt on SO(N) with the update R <- exp(A) R. A stall at a
// critical point triggers a perturbed restart drawn from cfg.seed.
PovmFamilyResult optimize(const RotationState& start,
                          const ObjectiveContext& ctx,
                          const OptimizerConfig& cfg);

struct ScanOptions {
  bool parallel = false;
  unsigned threads = 0;  // 0: hardware concurrency
  int restarts = 4;      // parallel mode only
  int refinements = 4;   // bisection depth for a failed continuation step
};

using ScanCallback = std::function<void(const PovmFamilyResult&)>;

// Targets linspace(f0_min, f0_max, steps). Sequential mode walks outward
// from the target nearest the start's mean vertex value, warm-starting each
// step from the last converged rotation, and calls on_result as each step
// finishes. Results come back in ascending f0 order either way.
std::vector<PovmFamilyResult> scan_f0(const ObjectiveContext& ctx,
                                      const RotationState& start,
                                      double f0_min, double f0_max, int steps,
                                      const OptimizerConfig& cfg,
                                      const ScanOptions& options = {},
                                      const ScanCallback& on_result = {});

std::vector<double> linspace(double lo, double hi, int steps);

// n I - sum_k P_k over the first n^2 - 1 elements.
HermitianMatrix last_vertex(const std::vector<HermitianMatrix>& first);

struct CircleProfile {
  int dim = 0;
  std::vector<double> theta_samples;
  std::vector<double> trace_values;  // Tr((I/n + Omega(theta))^3)
  double fitted_constant = 0.0;        // A
  double fitted_cos3_coefficient = 0.0;  // B
  double fit_residual = 0.0;             // max |trace - (A + B cos 3 theta)|
  double alpha = 0.0;  // cosine of the phase of Tr(rho_a rho_b rho_c)
  Complex triple_product;
  // A and B predicted from alpha for pure equiangular inputs.
  double expected_constant = 0.0;
  double expected_cos3_coefficient = 0.0;
};

// I/n + Omega(theta): the unit-trace combination of the three elements.
HermitianMatrix circle_point(const HermitianMatrix& a, const HermitianMatrix& b,
                             const HermitianMatrix& c, double theta);

CircleProfile circle_profile(const HermitianMatrix& a, const HermitianMatrix& b,
                             const HermitianMatrix& c, int samples,
                             double tol = 1e-8);

// Predicted B = 2 (2 alpha + sqrt(n+1) n - 2 sqrt(n+1)) / (9 (n+1)^{3/2}).
double circle_cos3_coefficient(int n, double alpha);
double circle_constant(int n, double alpha);

using CircleFunction = std::function<double(double x, double y)>;

struct KnasterS1Result {
  std::vector<double> angles;
  std::vector<RealVector> points;
  std::vector<double> values;
  double common_value = 0.0;
  double spread = 0.0;
  int iterations = 0;
};

// Rigid configurations of `points` (2 or 3) unit vectors on S^1 spaced by
// 2 pi / 3 (pairwise dot -1/2). Two points: bisection on
// h = f(p1) - f(p2) along the sweep from the argmin to the argmax
// orientation of p1. Three points: grid search then golden-section
// refinement of the value spread. Throws ConvergenceError when tol is not met.
KnasterS1Result knaster_s1(const CircleFunction& fn, int points,
                           double tol = 1e-12, int max_iters = 200);

// "sin3" (3x^2 y - y^3), "height" (y), "const".
CircleFunction named_circle_function(const std::string& name);

}  // namespace simplexforge
