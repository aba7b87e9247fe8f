#include "sicsimplex/bloch.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

namespace sicsimplex {

namespace {

void check_hermitian_unit_trace(const ComplexMatrix& m) {
  if (m.rows() != m.cols() || m.rows() < 1) {
    throw std::invalid_argument("density matrix must be square and non-empty");
  }
  if (!m.allFinite()) throw std::invalid_argument("density matrix has non-finite entries");
  const double herm = hermiticity_error(m);
  if (herm > kHermitianTol) {
    throw std::invalid_argument("matrix is not Hermitian (error " + std::to_string(herm) + ")");
  }
  const Complex tr = m.trace();
  if (std::abs(tr - 1.0) > kTraceTol) {
    throw std::invalid_argument("matrix trace is " + std::to_string(tr.real()) + ", expected 1");
  }
}

}  // namespace

DensityMatrix::DensityMatrix(ComplexMatrix rho, double psd_tol) : rho_(std::move(rho)) {
  check_hermitian_unit_trace(rho_);
  const double min_eig = hermitian_eigenvalues(rho_)[0];
  if (min_eig < -psd_tol) {
    throw std::invalid_argument("matrix is not positive semidefinite (min eigenvalue " +
                                std::to_string(min_eig) + ")");
  }
}

DensityMatrix DensityMatrix::maximally_mixed(int d) {
  if (d < 1) throw std::invalid_argument("dimension must be positive");
  return DensityMatrix(ComplexMatrix::Identity(d, d) / static_cast<double>(d));
}

DensityMatrix DensityMatrix::from_ket(const ComplexVector& psi) {
  const double norm = psi.norm();
  if (!(norm > 0.0)) throw std::invalid_argument("cannot build a state from a zero ket");
  const ComplexVector unit = psi / norm;
  ComplexMatrix rho = unit * unit.adjoint();
  // Exact Hermiticity; the outer product is only Hermitian to rounding.
  rho = 0.5 * (rho + rho.adjoint()).eval();
  rho /= rho.trace().real();
  return DensityMatrix(std::move(rho));
}

double DensityMatrix::purity() const { return (rho_ * rho_).trace().real(); }

BlochVector::BlochVector(int d, RealVector r) : d_(d), r_(std::move(r)) {
  if (d < 2) throw std::invalid_argument("Bloch vectors need d >= 2");
  if (r_.size() != d * d - 1) {
    throw std::invalid_argument("Bloch vector for d = " + std::to_string(d) + " needs length " +
                                std::to_string(d * d - 1) + ", got " + std::to_string(r_.size()));
  }
}

BlochVector BlochVector::zero(int d) { return BlochVector(d, RealVector::Zero(d * d - 1)); }

double bloch_scale(int d) { return std::sqrt((d + 1.0) / (2.0 * d)); }
double pure_norm_squared(int d) { return (d - 1.0) / (d + 1.0); }
double pure_star_factor(int d) { return (d - 2.0) * std::sqrt(2.0 / (d * (d + 1.0))); }

ComplexMatrix from_bloch(const BlochVector& r, const SuBasis& basis) {
  const int d = basis.dim();
  if (r.dim() != d) throw std::invalid_argument("Bloch vector and basis dimensions differ");
  ComplexMatrix rho = ComplexMatrix::Identity(d, d) / static_cast<double>(d);
  rho += bloch_scale(d) * basis.combine(r.coords());
  return rho;
}

BlochVector to_bloch(const DensityMatrix& rho, const SuBasis& basis) {
  return to_bloch(rho.matrix(), basis);
}

BlochVector to_bloch(const ComplexMatrix& m, const SuBasis& basis) {
  check_hermitian_unit_trace(m);
  const int d = basis.dim();
  if (m.rows() != d) throw std::invalid_argument("matrix and basis dimensions differ");
  // expand() yields Tr(m s_a) / 2, and sqrt(d/(2(d+1))) = 1 / (2 bloch_scale).
  return BlochVector(d, basis.expand(m) / bloch_scale(d));
}

StateCheck is_state(const BlochVector& r, const SuBasis& basis, double tol) {
  const double min_eig = hermitian_eigenvalues(from_bloch(r, basis))[0];
  return StateCheck{min_eig >= -tol, min_eig};
}

bool is_pure(const BlochVector& r, const StructureConstants& sc, double tol) {
  const int d = sc.d;
  if (r.dim() != d) throw std::invalid_argument("Bloch vector and structure constants differ in d");
  if (std::abs(r.norm_squared() - pure_norm_squared(d)) > tol) return false;
  const RealVector star = star_product(r.coords(), r.coords(), sc);
  return (star - pure_star_factor(d) * r.coords()).norm() <= tol;
}

namespace {

ComplexMatrix gaussian_matrix(int rows, int cols, std::mt19937_64& rng) {
  std::normal_distribution<double> normal(0.0, 1.0);
  ComplexMatrix g(rows, cols);
  for (int j = 0; j < cols; ++j) {
    for (int i = 0; i < rows; ++i) {
      const double re = normal(rng);
      const double im = normal(rng);
      g(i, j) = Complex(re, im);
    }
  }
  return g;
}

}  // namespace

DensityMatrix random_density_matrix(int d, std::mt19937_64& rng) {
  if (d < 2) throw std::invalid_argument("random states need d >= 2");
  const ComplexMatrix g = gaussian_matrix(d, d, rng);
  ComplexMatrix rho = g * g.adjoint();
  rho = 0.5 * (rho + rho.adjoint()).eval();
  rho /= rho.trace().real();
  return DensityMatrix(std::move(rho));
}

DensityMatrix random_density_matrix(int d, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  return random_density_matrix(d, rng);
}

ComplexVector random_ket(int d, std::mt19937_64& rng) {
  if (d < 1) throw std::invalid_argument("ket dimension must be positive");
  ComplexVector psi = gaussian_matrix(d, 1, rng).col(0);
  return psi / psi.norm();
}

DensityMatrix random_pure_state(int d, std::mt19937_64& rng) {
  if (d < 2) throw std::invalid_argument("random states need d >= 2");
  return DensityMatrix::from_ket(random_ket(d, rng));
}

DensityMatrix random_pure_state(int d, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  return random_pure_state(d, rng);
}

}  // namespace sicsimplex
