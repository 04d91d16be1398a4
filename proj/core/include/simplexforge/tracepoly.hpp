#pragma once

// Trace-power functionals on the Bloch body and spectrum recovery from
// power sums.

#include <vector>

#include "simplexforge/blochalg.hpp"

namespace simplexforge {

// Tr(rho^1) .. Tr(rho^n).
struct TracePowerProfile {
  int dim = 0;
  std::vector<double> powers;  // powers[k - 1] = Tr(rho^k)
};

// sum_ijk d_ijk v_i v_j v_k = Tr((L . v)^3).
double f_cubic(const BlochVector& v, const StructureTensor& t);
BlochVector grad_f_cubic(const BlochVector& v, const StructureTensor& t);

// Value of f_cubic at every pure state: (n-1)(n-2)/n^2.
double pure_state_cubic_value(int n);
// |v| of every pure state: sqrt((n-1)/(2n)).
double pure_state_radius(int n);

// Tr(H^m) by repeated multiplication. Throws NumericalIntegrity when the
// imaginary residue exceeds 1e-10.
double trace_power(const HermitianMatrix& h, int m);

// d/dv Tr((I/n + L . v)^m), component j = m Tr(rho^{m-1} L_j).
BlochVector grad_trace_power(const BlochVector& v, int m,
                             const GellMannBasis& basis);

// Tr(rho^m) and its gradient in one pass, for the optimizer's inner loop.
double trace_power_with_gradient(const RealVector& coords, int m,
                                 const GellMannBasis& basis,
                                 RealVector& gradient);

// |Tr H - 1|, |Tr H^2 - 1| and |Tr H^3 - 1| all <= tol.
bool purity_check(const HermitianMatrix& h, double tol = 1e-10);
// max of the three defects above.
double purity_defect(const HermitianMatrix& h);

TracePowerProfile trace_profile(const HermitianMatrix& h);

// Elementary symmetric polynomials e_0..e_n from power sums p_1..p_n
// (Newton's identities).
std::vector<double> elementary_from_power_sums(const std::vector<double>& p);

// Roots of a polynomial given by coefficients in ascending order
// (c[0] + c[1] x + ... + c[d] x^d). Closed forms for d <= 3, Aberth-Ehrlich
// iteration above.
std::vector<Complex> polynomial_roots(const std::vector<double>& coeffs);

// Eigenvalues (descending) of any Hermitian matrix with the given power sums.
// Throws InconsistentProfile when a root has |imag| > 1e-8.
std::vector<double> spectrum_from_traces(const TracePowerProfile& profile);

}  // namespace simplexforge
