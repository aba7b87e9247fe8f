#include "sicsimplex/state_simplex.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

namespace sicsimplex {

namespace {

SimplexFrame scaled_sic_frame(const SicPovm& sic) {
  const double scale = sic.dim() + 1.0;
  std::vector<RealVector> vertices;
  vertices.reserve(sic.bloch_dirs().size());
  for (const auto& e : sic.bloch_dirs()) vertices.push_back(scale * e.coords());
  // Gram error of (d+1) e_i is (d+1)^2 times that of e_i.
  const double tol = 1e-10 + 10.0 * scale * scale * sic.fiducial().residual;
  return SimplexFrame::from_vertices(vertices, tol);
}

void check_dim(int d, const QuantumSimplexContext& ctx) {
  if (d != ctx.dim()) {
    throw std::invalid_argument("dimension " + std::to_string(d) + " does not match context d = " +
                                std::to_string(ctx.dim()));
  }
}

}  // namespace

QuantumSimplexContext::QuantumSimplexContext(SuBasis basis, SicPovm sic)
    : basis_(std::move(basis)),
      structure_(structure_constants(basis_)),
      sic_(std::move(sic)),
      frame_(scaled_sic_frame(sic_)) {
  if (basis_.dim() != sic_.dim()) {
    throw std::invalid_argument("basis and SIC dimensions differ");
  }
}

QuantumSimplexContext QuantumSimplexContext::from_fiducial(const Fiducial& fiducial) {
  SuBasis basis(fiducial.d);
  SicPovm sic = SicPovm::build(fiducial, basis);
  return QuantumSimplexContext(std::move(basis), std::move(sic));
}

ProbabilityDistribution bloch_to_probabilities(const BlochVector& r, const QuantumSimplexContext& ctx) {
  const int d = ctx.dim();
  check_dim(r.dim(), ctx);
  const auto& dirs = ctx.sic().bloch_dirs();
  RealVector p(d * d);
  const double dd = static_cast<double>(d) * d;
  for (int i = 0; i < d * d; ++i) {
    p[i] = 1.0 / dd + (d + 1.0) / dd * dirs[i].coords().dot(r.coords());
  }
  return ProbabilityDistribution(std::move(p));
}

ProbabilityDistribution state_to_probabilities(const DensityMatrix& rho, const QuantumSimplexContext& ctx) {
  check_dim(rho.dim(), ctx);
  return bloch_to_probabilities(to_bloch(rho, ctx.basis()), ctx);
}

SimplexPoint probabilities_to_point(const ProbabilityDistribution& p, const QuantumSimplexContext& ctx) {
  return to_point(p, ctx.frame());
}

BlochVector point_as_bloch(const SimplexPoint& s, const QuantumSimplexContext& ctx) {
  return BlochVector(ctx.dim(), s.coords);
}

TheoremSweep verify_bloch_equals_simplex(const QuantumSimplexContext& ctx, int samples, std::uint64_t seed) {
  if (samples < 1) throw std::invalid_argument("need at least one sample");
  const int d = ctx.dim();
  const double dd = static_cast<double>(d) * d;
  TheoremSweep out;
  out.samples = samples;
  for (int k = 0; k < samples; ++k) {
    const DensityMatrix rho = random_density_matrix(d, derive_seed(seed, k));
    const BlochVector r = to_bloch(rho, ctx.basis());
    const ProbabilityDistribution p = bloch_to_probabilities(r, ctx);
    const SimplexPoint s = probabilities_to_point(p, ctx);
    out.max_deviation = std::max(out.max_deviation, (s.coords - r.coords()).cwiseAbs().maxCoeff());

    const RealVector via_frame = ((ctx.frame().vertices() * r.coords()).array() + 1.0) / dd;
    out.max_inverse_error =
        std::max(out.max_inverse_error, (p.values() - via_frame).cwiseAbs().maxCoeff());
  }
  return out;
}

double verify_B_equals_Q(const QuantumSimplexContext& ctx, int samples, std::uint64_t seed) {
  return verify_bloch_equals_simplex(ctx, samples, seed).max_deviation;
}

PureSphereSweep verify_pure_sphere(const QuantumSimplexContext& ctx, int samples, std::uint64_t seed) {
  if (samples < 1) throw std::invalid_argument("need at least one sample");
  const int d = ctx.dim();
  PureSphereSweep out;
  out.samples = samples;
  for (int k = 0; k < samples; ++k) {
    const DensityMatrix rho = random_pure_state(d, derive_seed(seed, k));
    const ProbabilityDistribution p = state_to_probabilities(rho, ctx);
    const SimplexPoint s = probabilities_to_point(p, ctx);
    out.max_sum_p2_error =
        std::max(out.max_sum_p2_error, std::abs(p.sum_of_squares() - pure_sum_p_squared(d)));
    out.max_norm_error = std::max(
        out.max_norm_error, std::abs(s.coords.squaredNorm() - pure_norm_squared(d)));
  }
  return out;
}

int pure_tangent_facet_dim(int d) {
  if (d < 2) throw std::invalid_argument("d must be >= 2");
  return (d + 2) * (d - 1) / 2;
}

double pure_sphere_radius(int d) { return std::sqrt(pure_norm_squared(d)); }

double pure_sum_p_squared(int d) { return 2.0 / (d * (d + 1.0)); }

GeometryReport geometry_report(int d) {
  if (d < 2) throw std::invalid_argument("geometry report needs d >= 2, got " + std::to_string(d));
  GeometryReport rep;
  rep.d = d;
  rep.n = d * d - 1;
  rep.r_out = outer_radius(rep.n);
  rep.r_in = inner_radius(rep.n);
  rep.r_pure = pure_sphere_radius(d);
  rep.m_pure = pure_tangent_facet_dim(d);
  rep.sum_p2_pure = pure_sum_p_squared(d);
  rep.facet_distances.reserve(rep.n + 1);
  for (int m = 0; m <= rep.n; ++m) rep.facet_distances.push_back(facet_distance(rep.n, m));
  rep.pure_sphere_is_inner_sphere = std::abs(rep.r_pure - rep.r_in) <= 1e-12 * rep.r_pure;

  if (std::abs(rep.facet_distances[rep.m_pure] - rep.r_pure) > 1e-12) {
    throw std::logic_error("pure sphere is not tangent to the m_pure facets");
  }
  if (rep.r_in > rep.r_pure * (1.0 + 1e-12) || rep.r_pure > rep.r_out) {
    throw std::logic_error("radius ordering r_in <= r_pure <= r_out violated");
  }
  if (rep.pure_sphere_is_inner_sphere != (d == 2)) {
    throw std::logic_error("pure sphere coincides with the inner sphere only for d = 2");
  }
  if (std::abs(1.0 / (rep.m_pure + 1.0) - rep.sum_p2_pure) > 1e-15) {
    throw std::logic_error("sum of squared probabilities inconsistent with tangency facet");
  }
  return rep;
}

std::string to_string(PointClass c) {
  switch (c) {
    case PointClass::kOutsideSimplex: return "outside_simplex";
    case PointClass::kInSimplexNotState: return "in_simplex_not_state";
    case PointClass::kMixedState: return "mixed_state";
    case PointClass::kPureState: return "pure_state";
  }
  return "outside_simplex";
}

PointClass classify_point(const SimplexPoint& s, const QuantumSimplexContext& ctx,
                          const ClassifyTolerances& tol) {
  if (!to_probabilities(s, ctx.frame()).inside) return PointClass::kOutsideSimplex;
  const BlochVector r = point_as_bloch(s, ctx);
  if (!is_state(r, ctx.basis(), tol.psd)) return PointClass::kInSimplexNotState;
  return is_pure(r, ctx.structure(), tol.purity) ? PointClass::kPureState : PointClass::kMixedState;
}

RealVector random_sphere_point(int n, double radius, std::mt19937_64& rng) {
  if (n < 1) throw std::invalid_argument("sphere dimension must be positive");
  std::normal_distribution<double> normal(0.0, 1.0);
  RealVector v(n);
  double norm = 0.0;
  while (!(norm > 0.0)) {
    for (int i = 0; i < n; ++i) v[i] = normal(rng);
    norm = v.norm();
  }
  return v * (radius / norm);
}

std::optional<SphereWitness> find_non_state_sphere_point(const QuantumSimplexContext& ctx,
                                                         std::uint64_t seed, int max_attempts,
                                                         double min_violation) {
  const int d = ctx.dim();
  const double radius = pure_sphere_radius(d);
  std::mt19937_64 rng(seed);
  auto qualifies = [&](const SimplexPoint& s, double& min_eig) {
    if (!to_probabilities(s, ctx.frame()).inside) return false;
    min_eig = is_state(point_as_bloch(s, ctx), ctx.basis()).min_eigenvalue;
    return min_eig < -min_violation;
  };
  for (int attempt = 1; attempt <= max_attempts; ++attempt) {
    double min_eig = 0.0;
    // Antipode of a pure state; rescaling only removes rounding.
    const BlochVector r = to_bloch(random_pure_state(d, rng), ctx.basis());
    SimplexPoint antipode{-r.coords() * (radius / r.coords().norm())};
    if (qualifies(antipode, min_eig)) return SphereWitness{std::move(antipode), min_eig, attempt};
    // Antipodes almost never fit inside the simplex for d >= 5, so also try
    // a uniform point of the same sphere.
    SimplexPoint uniform{random_sphere_point(d * d - 1, radius, rng)};
    if (qualifies(uniform, min_eig)) return SphereWitness{std::move(uniform), min_eig, attempt};
  }
  return std::nullopt;
}

double trace_distance(const ComplexMatrix& a, const ComplexMatrix& b) {
  if (a.rows() != b.rows() || a.cols() != b.cols()) {
    throw std::invalid_argument("trace distance of matrices with different shapes");
  }
  ComplexMatrix diff = a - b;
  diff = 0.5 * (diff + diff.adjoint()).eval();
  return 0.5 * hermitian_eigenvalues(diff).cwiseAbs().sum();
}

ComplexMatrix project_to_density_matrix(const ComplexMatrix& hermitian) {
  ComplexMatrix h = 0.5 * (hermitian + hermitian.adjoint());
  Eigen::SelfAdjointEigenSolver<ComplexMatrix> solver(h);
  if (solver.info() != Eigen::Success) {
    throw std::runtime_error("hermitian eigensolver did not converge");
  }
  RealVector vals = solver.eigenvalues().cwiseMax(0.0);
  const double total = vals.sum();
  if (!(total > 0.0)) {
    throw std::domain_error("matrix has no positive part to project onto");
  }
  vals /= total;
  const ComplexMatrix& vecs = solver.eigenvectors();
  ComplexMatrix out = vecs * vals.cast<Complex>().asDiagonal() * vecs.adjoint();
  return 0.5 * (out + out.adjoint());
}

std::vector<std::int64_t> sample_counts(const ProbabilityDistribution& p, std::int64_t shots,
                                        std::mt19937_64& rng) {
  if (shots < 1) throw std::invalid_argument("shots must be positive");
  // Sequential conditional binomials give an exact multinomial draw.
  std::vector<std::int64_t> counts(p.size(), 0);
  std::int64_t remaining = shots;
  double mass_left = 1.0;
  for (int i = 0; i < p.size() && remaining > 0; ++i) {
    if (i == p.size() - 1) {
      counts[i] = remaining;
      break;
    }
    const double q = std::clamp(p[i] / mass_left, 0.0, 1.0);
    std::binomial_distribution<std::int64_t> binom(remaining, q);
    counts[i] = binom(rng);
    remaining -= counts[i];
    mass_left = std::max(mass_left - p[i], 0.0);
    if (mass_left <= 0.0) break;
  }
  return counts;
}

TomographyResult simulate_tomography(const DensityMatrix& rho, const QuantumSimplexContext& ctx,
                                     std::int64_t shots, std::uint64_t seed) {
  check_dim(rho.dim(), ctx);
  const ProbabilityDistribution p = state_to_probabilities(rho, ctx);
  std::mt19937_64 rng(seed);

  TomographyResult out;
  out.shots = shots;
  out.seed = seed;
  out.counts = sample_counts(p, shots, rng);
  out.frequencies.resize(p.size());
  for (int i = 0; i < p.size(); ++i) {
    out.frequencies[i] = static_cast<double>(out.counts[i]) / static_cast<double>(shots);
  }
  const SimplexPoint s = probabilities_to_point(ProbabilityDistribution(out.frequencies), ctx);
  out.rho_hat_raw = from_bloch(point_as_bloch(s, ctx), ctx.basis());
  out.rho_hat_projected = project_to_density_matrix(out.rho_hat_raw);
  out.trace_distance = trace_distance(rho.matrix(), out.rho_hat_projected);
  return out;
}

std::uint64_t derive_seed(std::uint64_t master, std::uint64_t index) {
  // splitmix64 finalizer over the pair
  std::uint64_t z = master + 0x9e3779b97f4a7c15ULL * (index + 1);
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

}  // namespace sicsimplex
