#include <cmath>
#include <random>
#include <stdexcept>
#include <string>
#include <vector>

#include <ceres/ceres.h>

#include "sicsimplex/sic_povm.hpp"

namespace sicsimplex {

namespace {

// Residuals |<psi|D_p|psi>|^2 - 1/(d+1) over p != 0 as a function of the real
// coordinates x = (Re psi, Im psi). The squared sum is the frame potential of
// the orbit divided by d^2.
class OverlapDefects final : public ceres::CostFunction {
 public:
  explicit OverlapDefects(int d) : d_(d) {
    for (int k = 0; k < d; ++k) {
      for (int l = 0; l < d; ++l) {
        if (k == 0 && l == 0) continue;
        displacements_.push_back(displacement(d, k, l));
      }
    }
    set_num_residuals(d * d - 1);
    mutable_parameter_block_sizes()->push_back(2 * d);
  }

  bool Evaluate(double const* const* parameters, double* residuals,
                double** jacobians) const override {
    const double* x = parameters[0];
    ComplexVector psi(d_);
    for (int j = 0; j < d_; ++j) psi[j] = Complex(x[j], x[d_ + j]);
    const double target = 1.0 / (d_ + 1.0);

    for (std::size_t p = 0; p < displacements_.size(); ++p) {
      const ComplexMatrix& D = displacements_[p];
      const ComplexVector d_psi = D * psi;
      const Complex a = psi.dot(d_psi);
      residuals[p] = std::norm(a) - target;
      if (jacobians == nullptr || jacobians[0] == nullptr) continue;

      // da/dRe(psi_j) = (D psi)_j + conj((D^dag psi)_j),
      // da/dIm(psi_j) = -i (D psi)_j + i conj((D^dag psi)_j),
      // d|a|^2 = 2 Re(conj(a) da).
      const ComplexVector dag_psi = D.adjoint() * psi;
      double* row = jacobians[0] + p * 2 * d_;
      const Complex i_unit(0.0, 1.0);
      for (int j = 0; j < d_; ++j) {
        const Complex da_re = d_psi[j] + std::conj(dag_psi[j]);
        const Complex da_im = -i_unit * d_psi[j] + i_unit * std::conj(dag_psi[j]);
        row[j] = 2.0 * (std::conj(a) * da_re).real();
        row[d_ + j] = 2.0 * (std::conj(a) * da_im).real();
      }
    }
    return true;
  }

 private:
  int d_;
  std::vector<ComplexMatrix> displacements_;
};

Fiducial local_search(int d, std::uint64_t seed, int restart, const SearchConfig& config) {
  std::seed_seq seq{static_cast<std::uint32_t>(seed & 0xffffffffu),
                    static_cast<std::uint32_t>(seed >> 32),
                    static_cast<std::uint32_t>(restart)};
  std::mt19937_64 rng(seq);
  const ComplexVector start = random_ket(d, rng);

  std::vector<double> x(2 * d);
  for (int j = 0; j < d; ++j) {
    x[j] = start[j].real();
    x[d + j] = start[j].imag();
  }

  ceres::Problem problem;
  problem.AddResidualBlock(new OverlapDefects(d), nullptr, x.data());
  problem.SetParameterization(x.data(), new ceres::HomogeneousVectorParameterization(2 * d));

  ceres::Solver::Options options;
  options.linear_solver_type = ceres::DENSE_QR;
  options.minimizer_type = ceres::TRUST_REGION;
  options.trust_region_strategy_type = ceres::LEVENBERG_MARQUARDT;
  options.max_num_iterations = config.max_iters;
  options.function_tolerance = 1e-16;
  options.gradient_tolerance = 1e-24;
  options.parameter_tolerance = 1e-16;
  options.num_threads = 1;
  options.logging_type = ceres::SILENT;
  options.minimizer_progress_to_stdout = false;

  ceres::Solver::Summary summary;
  ceres::Solve(options, &problem, &summary);

  ComplexVector psi(d);
  for (int j = 0; j < d; ++j) psi[j] = Complex(x[j], x[d + j]);
  Fiducial fid = make_fiducial(std::move(psi), FiducialSource::kSearch);
  fid.seed = seed;
  fid.config = config;
  return fid;
}

}  // namespace

SearchOutcome find_fiducial(int d, std::uint64_t seed, const SearchConfig& config) {
  if (d < 2) throw std::invalid_argument("fiducial search needs d >= 2, got " + std::to_string(d));
  if (config.restarts < 1 || config.max_iters < 1) {
    throw std::invalid_argument("search needs at least one restart and one iteration");
  }
  SearchOutcome out;
  bool have_best = false;
  for (int r = 0; r < config.restarts; ++r) {
    Fiducial candidate = local_search(d, seed, r, config);
    out.restarts_run = r + 1;
    if (!have_best || candidate.residual < out.fiducial.residual) {
      out.fiducial = std::move(candidate);
      have_best = true;
    }
    if (out.fiducial.residual <= config.target_residual) {
      out.converged = true;
      break;
    }
  }
  return out;
}

}  // namespace sicsimplex
