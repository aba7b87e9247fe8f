#pragma once

#include <cstdint>
#include <random>

#include "sicsimplex/linalg.hpp"
#include "sicsimplex/su_basis.hpp"

namespace sicsimplex {

inline constexpr double kHermitianTol = 1e-12;
inline constexpr double kTraceTol = 1e-12;
inline constexpr double kPsdTol = 1e-10;
inline constexpr double kPurityTol = 1e-9;

/// A d x d Hermitian, unit-trace, positive semidefinite matrix.
class DensityMatrix {
 public:
  /// Throws std::invalid_argument if `rho` is not square, not Hermitian within
  /// kHermitianTol, has trace differing from one by more than kTraceTol, or has
  /// an eigenvalue below -psd_tol.
  explicit DensityMatrix(ComplexMatrix rho, double psd_tol = kPsdTol);

  static DensityMatrix maximally_mixed(int d);
  static DensityMatrix from_ket(const ComplexVector& psi);

  int dim() const { return static_cast<int>(rho_.rows()); }
  const ComplexMatrix& matrix() const { return rho_; }

  /// Tr(rho^2)
  double purity() const;

 private:
  ComplexMatrix rho_;
};

/// Coordinates r in R^{d^2-1} of rho = I/d + sqrt((d+1)/(2d)) r . sigma.
class BlochVector {
 public:
  BlochVector(int d, RealVector r);

  static BlochVector zero(int d);

  int dim() const { return d_; }
  const RealVector& coords() const { return r_; }
  double norm_squared() const { return r_.squaredNorm(); }

 private:
  int d_;
  RealVector r_;
};

/// sqrt((d+1)/(2d)), the weight of r . sigma in the state.
double bloch_scale(int d);
/// (d-1)/(d+1), the squared norm of every pure-state Bloch vector.
double pure_norm_squared(int d);
/// (d-2) sqrt(2/(d(d+1))), the eigenvalue of r -> r*r on pure states.
double pure_star_factor(int d);

/// rho = I/d + sqrt((d+1)/(2d)) r . sigma. Always Hermitian with unit trace;
/// positivity is not guaranteed, see is_state.
ComplexMatrix from_bloch(const BlochVector& r, const SuBasis& basis);

/// r_a = sqrt(d/(2(d+1))) Tr(rho sigma_a).
BlochVector to_bloch(const DensityMatrix& rho, const SuBasis& basis);

/// Same map for any Hermitian unit-trace matrix; throws if either property
/// is violated beyond tolerance.
BlochVector to_bloch(const ComplexMatrix& hermitian_unit_trace, const SuBasis& basis);

struct StateCheck {
  bool is_state = false;
  double min_eigenvalue = 0.0;

  explicit operator bool() const { return is_state; }
};

/// Whether from_bloch(r) is positive semidefinite, min eigenvalue >= -tol.
StateCheck is_state(const BlochVector& r, const SuBasis& basis, double tol = kPsdTol);

/// Pure-state test on r alone: |r|^2 = (d-1)/(d+1) and
/// r*r = (d-2) sqrt(2/(d(d+1))) r, each within `tol`.
bool is_pure(const BlochVector& r, const StructureConstants& sc, double tol = kPurityTol);

/// Ginibre ensemble: G G^dagger / Tr(G G^dagger) with G complex Gaussian.
DensityMatrix random_density_matrix(int d, std::mt19937_64& rng);
DensityMatrix random_density_matrix(int d, std::uint64_t seed);

/// Haar-random ket, normalized complex Gaussian vector.
ComplexVector random_ket(int d, std::mt19937_64& rng);
DensityMatrix random_pure_state(int d, std::mt19937_64& rng);
DensityMatrix random_pure_state(int d, std::uint64_t seed);

}  // namespace sicsimplex
