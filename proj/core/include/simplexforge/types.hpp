#pragma once

#include <complex>
#include <stdexcept>
#include <string>
#include <vector>

#include <Eigen/Core>

namespace simplexforge {

using Complex = std::complex<double>;
using RealMatrix = Eigen::MatrixXd;
using RealVector = Eigen::VectorXd;
using ComplexMatrix = Eigen::MatrixXcd;
using ComplexVector = Eigen::VectorXcd;

// Dense n x n complex matrix expected to be Hermitian. Unitaries share the
// storage type; the operations that need either property check it.
using HermitianMatrix = ComplexMatrix;

// Real coordinates of the traceless part of a unit-trace Hermitian matrix.
struct BlochVector {
  int dim = 0;  // Hilbert-space dimension n, coords has n^2 - 1 entries
  RealVector coords;

  BlochVector() = default;
  BlochVector(int n, RealVector c) : dim(n), coords(std::move(c)) {}

  static BlochVector zero(int n) {
    return BlochVector(n, RealVector::Zero(n * n - 1));
  }
  Eigen::Index size() const { return coords.size(); }
};

class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class InvalidDimension : public Error {
 public:
  using Error::Error;
};

class DimensionMismatch : public Error {
 public:
  using Error::Error;
};

// Input that should be unitary/orthogonal is not; carries the measured defect.
class NotUnitary : public Error {
 public:
  NotUnitary(const std::string& what, double defect)
      : Error(what), defect_(defect) {}
  double defect() const { return defect_; }

 private:
  double defect_;
};

class DomainError : public Error {
 public:
  using Error::Error;
};

class NumericalIntegrity : public Error {
 public:
  using Error::Error;
};

class InconsistentProfile : public Error {
 public:
  using Error::Error;
};

class Unsupported : public Error {
 public:
  using Error::Error;
};

class PreconditionError : public Error {
 public:
  PreconditionError(const std::string& what, std::vector<double> deviations)
      : Error(what), deviations_(std::move(deviations)) {}
  const std::vector<double>& deviations() const { return deviations_; }

 private:
  std::vector<double> deviations_;
};

class ConvergenceError : public Error {
 public:
  using Error::Error;
};

// max_ij |a_ij - b_ij|
template <typename A, typename B>
double max_abs_diff(const A& a, const B& b) {
  return (a - b).cwiseAbs().maxCoeff();
}

}  // namespace simplexforge
