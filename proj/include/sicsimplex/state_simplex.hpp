#pragma once

#include <cstdint>
#include <optional>
#include <random>
#include <string>
#include <vector>

#include "sicsimplex/bloch.hpp"
#include "sicsimplex/sic_povm.hpp"
#include "sicsimplex/simplex_geometry.hpp"
#include "sicsimplex/su_basis.hpp"

namespace sicsimplex {

/// A SIC together with the simplex frame t_i = (d+1) e_i it induces in
/// R^{d^2-1}. Points of that frame are directly comparable with Bloch vectors.
class QuantumSimplexContext {
 public:
  QuantumSimplexContext(SuBasis basis, SicPovm sic);

  /// Basis from build_su_basis(d), SIC from `fiducial`.
  static QuantumSimplexContext from_fiducial(const Fiducial& fiducial);

  int dim() const { return basis_.dim(); }
  const SuBasis& basis() const { return basis_; }
  const StructureConstants& structure() const { return structure_; }
  const SicPovm& sic() const { return sic_; }
  const SimplexFrame& frame() const { return frame_; }

 private:
  SuBasis basis_;
  StructureConstants structure_;
  SicPovm sic_;
  SimplexFrame frame_;
};

/// m_E: p_i = 1/d^2 + ((d+1)/d^2) e_i . r
ProbabilityDistribution bloch_to_probabilities(const BlochVector& r, const QuantumSimplexContext& ctx);

/// p_i = Tr(E_i rho), evaluated through the Bloch form of rho.
ProbabilityDistribution state_to_probabilities(const DensityMatrix& rho, const QuantumSimplexContext& ctx);

/// g: s = sum_i p_i t_i in the context frame.
SimplexPoint probabilities_to_point(const ProbabilityDistribution& p, const QuantumSimplexContext& ctx);

/// Reads a simplex point as a Bloch vector (the two sets coincide).
BlochVector point_as_bloch(const SimplexPoint& s, const QuantumSimplexContext& ctx);

struct TheoremSweep {
  int samples = 0;
  /// max over samples of |g(m_E(r)) - r|_inf
  double max_deviation = 0.0;
  /// max over samples and outcomes of |p_i - (s . t_i + 1)/d^2|
  double max_inverse_error = 0.0;
};

/// Checks g o m_E = id on `samples` Ginibre states.
TheoremSweep verify_bloch_equals_simplex(const QuantumSimplexContext& ctx, int samples, std::uint64_t seed);

/// Convenience form returning only the max deviation.
double verify_B_equals_Q(const QuantumSimplexContext& ctx, int samples, std::uint64_t seed);

struct PureSphereSweep {
  int samples = 0;
  /// max |sum_i p_i^2 - 2/(d(d+1))|
  double max_sum_p2_error = 0.0;
  /// max ||s|^2 - (d-1)/(d+1)|
  double max_norm_error = 0.0;
};

PureSphereSweep verify_pure_sphere(const QuantumSimplexContext& ctx, int samples, std::uint64_t seed);

struct GeometryReport {
  int d = 0;
  int n = 0;
  double r_out = 0.0;
  double r_in = 0.0;
  double r_pure = 0.0;
  int m_pure = 0;
  double sum_p2_pure = 0.0;
  /// facet_distance(n, m) for m = 0..n
  std::vector<double> facet_distances;
  /// r_pure equals r_in (only for d = 2)
  bool pure_sphere_is_inner_sphere = false;
};

/// (d+2)(d-1)/2, the facet dimension the pure-state sphere touches.
int pure_tangent_facet_dim(int d);
/// sqrt((d-1)/(d+1))
double pure_sphere_radius(int d);
/// 2/(d(d+1))
double pure_sum_p_squared(int d);

/// Closed-form geometry of the state body; throws std::logic_error if the
/// internal consistency checks fail.
GeometryReport geometry_report(int d);

enum class PointClass { kOutsideSimplex, kInSimplexNotState, kMixedState, kPureState };

std::string to_string(PointClass c);

struct ClassifyTolerances {
  double psd = kPsdTol;
  double purity = kPurityTol;
};

/// Simplex membership, then positivity, then purity.
PointClass classify_point(const SimplexPoint& s, const QuantumSimplexContext& ctx,
                          const ClassifyTolerances& tol = {});

/// Uniform point on the origin sphere of radius `radius` in R^n.
RealVector random_sphere_point(int n, double radius, std::mt19937_64& rng);

struct SphereWitness {
  SimplexPoint point;
  double min_eigenvalue = 0.0;
  int attempts = 0;
};

/// A point with |s| = R_pure inside the simplex whose matrix has an eigenvalue
/// below -min_violation. Each attempt tries the antipode of a random pure state,
/// then a uniformly random point of the sphere. Returns nothing if no attempt
/// qualifies.
std::optional<SphereWitness> find_non_state_sphere_point(const QuantumSimplexContext& ctx,
                                                         std::uint64_t seed, int max_attempts = 20000,
                                                         double min_violation = 1e-6);

/// 1/2 sum |eigenvalues of (a - b)|
double trace_distance(const ComplexMatrix& a, const ComplexMatrix& b);

/// Clips negative eigenvalues to zero and rescales to unit trace.
ComplexMatrix project_to_density_matrix(const ComplexMatrix& hermitian);

/// Multinomial sample of `shots` outcomes from p.
std::vector<std::int64_t> sample_counts(const ProbabilityDistribution& p, std::int64_t shots,
                                        std::mt19937_64& rng);

struct TomographyResult {
  std::int64_t shots = 0;
  std::uint64_t seed = 0;
  std::vector<std::int64_t> counts;
  RealVector frequencies;
  ComplexMatrix rho_hat_raw;
  ComplexMatrix rho_hat_projected;
  double trace_distance = 0.0;
};

/// SIC measurement of `rho` with `shots` repetitions, linear inversion
/// s = sum_i f_i t_i, rho_hat = from_bloch(s), then PSD projection.
TomographyResult simulate_tomography(const DensityMatrix& rho, const QuantumSimplexContext& ctx,
                                     std::int64_t shots, std::uint64_t seed);

/// Independent seed for trial `index` of a sweep driven by `master`.
std::uint64_t derive_seed(std::uint64_t master, std::uint64_t index);

}  // namespace sicsimplex
