#pragma once

#include <complex>

#include <Eigen/Dense>

namespace sicsimplex {

using Complex = std::complex<double>;
using RealVector = Eigen::VectorXd;
using RealMatrix = Eigen::MatrixXd;
using ComplexVector = Eigen::VectorXcd;
using ComplexMatrix = Eigen::MatrixXcd;

/// Largest entrywise modulus of `m`; zero for an empty matrix.
inline double max_abs(const ComplexMatrix& m) {
  return m.size() == 0 ? 0.0 : m.cwiseAbs().maxCoeff();
}

inline double max_abs(const RealMatrix& m) {
  return m.size() == 0 ? 0.0 : m.cwiseAbs().maxCoeff();
}

inline double hermiticity_error(const ComplexMatrix& m) {
  return max_abs(ComplexMatrix(m - m.adjoint()));
}

/// Eigenvalues of a Hermitian matrix in ascending order.
RealVector hermitian_eigenvalues(const ComplexMatrix& m);

}  // namespace sicsimplex
