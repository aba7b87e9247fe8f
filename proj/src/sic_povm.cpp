#include "sicsimplex/sic_povm.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

namespace sicsimplex {

namespace {

Complex unit_phase(double angle) { return std::polar(1.0, angle); }

int mod(int a, int d) { return ((a % d) + d) % d; }

int orbit_dim(const std::vector<ComplexVector>& orbit) {
  if (orbit.empty()) throw std::invalid_argument("empty orbit");
  const int d = static_cast<int>(orbit.front().size());
  if (static_cast<int>(orbit.size()) != d * d) {
    throw std::invalid_argument("orbit must contain d^2 vectors");
  }
  for (const auto& v : orbit) {
    if (v.size() != d) throw std::invalid_argument("orbit vectors differ in length");
  }
  return d;
}

template <typename Visit>
void for_each_cross_overlap(const std::vector<ComplexVector>& orbit, Visit&& visit) {
  const int d = orbit_dim(orbit);
  const double target = 1.0 / (d + 1.0);
  for (std::size_t i = 0; i < orbit.size(); ++i) {
    for (std::size_t j = 0; j < orbit.size(); ++j) {
      if (i == j) continue;
      visit(std::norm(orbit[i].dot(orbit[j])) - target);
    }
  }
}

}  // namespace

ComplexMatrix displacement(int d, int k, int l) {
  if (d < 1) throw std::invalid_argument("dimension must be positive");
  const double pi = std::numbers::pi;
  // tau^{kl} with tau = -exp(i pi/d) = exp(i pi (d+1)/d)
  const Complex tau_kl = unit_phase(pi * (d + 1.0) * k * l / d);
  ComplexMatrix out = ComplexMatrix::Zero(d, d);
  for (int m = 0; m < d; ++m) {
    out(mod(m + k, d), m) = tau_kl * unit_phase(2.0 * pi * l * m / d);
  }
  return out;
}

std::vector<ComplexVector> wh_orbit(const ComplexVector& psi) {
  const int d = static_cast<int>(psi.size());
  if (d < 1) throw std::invalid_argument("empty fiducial");
  std::vector<ComplexVector> orbit;
  orbit.reserve(static_cast<std::size_t>(d) * d);
  for (int k = 0; k < d; ++k) {
    for (int l = 0; l < d; ++l) orbit.emplace_back(displacement(d, k, l) * psi);
  }
  return orbit;
}

double frame_potential(const std::vector<ComplexVector>& orbit) {
  double sum = 0.0;
  for_each_cross_overlap(orbit, [&](double defect) { sum += defect * defect; });
  return sum;
}

double sic_residual(const std::vector<ComplexVector>& orbit) {
  double worst = 0.0;
  for_each_cross_overlap(orbit, [&](double defect) { worst = std::max(worst, std::abs(defect)); });
  return worst;
}

RealVector orbit_overlap_defects(const ComplexVector& psi) {
  const int d = static_cast<int>(psi.size());
  RealVector out(d * d - 1);
  int idx = 0;
  for (int k = 0; k < d; ++k) {
    for (int l = 0; l < d; ++l) {
      if (k == 0 && l == 0) continue;
      out[idx++] = std::norm(psi.dot(displacement(d, k, l) * psi)) - 1.0 / (d + 1.0);
    }
  }
  return out;
}

std::string to_string(FiducialSource source) {
  switch (source) {
    case FiducialSource::kBuiltIn: return "built-in";
    case FiducialSource::kSearch: return "search";
    case FiducialSource::kImported: return "imported";
  }
  return "imported";
}

FiducialSource fiducial_source_from_string(const std::string& s) {
  if (s == "built-in") return FiducialSource::kBuiltIn;
  if (s == "search") return FiducialSource::kSearch;
  if (s == "imported") return FiducialSource::kImported;
  throw std::invalid_argument("unknown fiducial source '" + s + "'");
}

Fiducial make_fiducial(ComplexVector psi, FiducialSource source) {
  const int d = static_cast<int>(psi.size());
  if (d < 2) throw std::invalid_argument("fiducial needs d >= 2");
  if (!psi.allFinite()) throw std::invalid_argument("fiducial has non-finite entries");
  const double norm = psi.norm();
  if (!(norm > 0.0)) throw std::invalid_argument("fiducial is the zero vector");
  psi /= norm;
  for (int i = 0; i < d; ++i) {
    if (std::abs(psi[i]) > 1e-14) {
      psi *= std::conj(psi[i]) / std::abs(psi[i]);
      psi[i] = Complex(psi[i].real(), 0.0);
      break;
    }
  }
  Fiducial fid;
  fid.d = d;
  fid.residual = sic_residual(wh_orbit(psi));
  fid.psi = std::move(psi);
  fid.source = source;
  return fid;
}

Fiducial builtin_qubit_fiducial() {
  // Bloch direction n = (1,1,1)/sqrt(3): cos(theta) = 1/sqrt(3), azimuth pi/4.
  const double theta = std::acos(1.0 / std::sqrt(3.0));
  ComplexVector psi(2);
  psi << std::cos(theta / 2.0), unit_phase(std::numbers::pi / 4.0) * std::sin(theta / 2.0);
  return make_fiducial(std::move(psi), FiducialSource::kBuiltIn);
}

SicPovm SicPovm::build(const Fiducial& fiducial, const SuBasis& basis, double max_residual) {
  const int d = fiducial.d;
  if (d != basis.dim() || fiducial.psi.size() != d) {
    throw std::invalid_argument("fiducial and basis dimensions differ");
  }
  if (!(fiducial.residual <= max_residual)) {
    throw std::invalid_argument("fiducial residual " + std::to_string(fiducial.residual) +
                                " exceeds the allowed " + std::to_string(max_residual));
  }
  SicPovm sic;
  sic.fiducial_ = fiducial;
  sic.orbit_ = wh_orbit(fiducial.psi / fiducial.psi.norm());
  const double actual = sic_residual(sic.orbit_);
  if (!(actual <= max_residual)) {
    throw std::invalid_argument("fiducial orbit residual " + std::to_string(actual) +
                                " exceeds the allowed " + std::to_string(max_residual));
  }
  sic.fiducial_.residual = std::max(fiducial.residual, actual);
  for (const auto& v : sic.orbit_) {
    const DensityMatrix projector = DensityMatrix::from_ket(v);
    sic.effects_.push_back(projector.matrix() / static_cast<double>(d));
    sic.bloch_dirs_.push_back(to_bloch(projector, basis));
  }

  const double tol = 1e-10 + 10.0 * sic.fiducial_.residual;
  if (sic.identity_error() > tol || sic.overlap_error() > tol || sic.bloch_gram_error() > tol) {
    throw std::runtime_error("constructed effects violate the SIC conditions");
  }
  return sic;
}

RealMatrix SicPovm::overlap_matrix() const {
  const int n = size();
  RealMatrix out(n, n);
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) {
      out(i, j) = (effects_[i] * effects_[j]).trace().real();
    }
  }
  return out;
}

RealMatrix SicPovm::bloch_gram() const {
  const int n = size();
  RealMatrix out(n, n);
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) out(i, j) = bloch_dirs_[i].coords().dot(bloch_dirs_[j].coords());
  }
  return out;
}

double SicPovm::identity_error() const {
  const int d = dim();
  ComplexMatrix sum = ComplexMatrix::Zero(d, d);
  for (const auto& e : effects_) sum += e;
  return max_abs(ComplexMatrix(sum - ComplexMatrix::Identity(d, d)));
}

double SicPovm::overlap_error() const {
  const double d = dim();
  const int n = size();
  RealMatrix expected = RealMatrix::Constant(n, n, 1.0 / (d * d * (d + 1.0)));
  expected.diagonal().array() += d / (d * d * (d + 1.0));
  return max_abs(RealMatrix(overlap_matrix() - expected));
}

double SicPovm::bloch_gram_error() const {
  const double d = dim();
  const int n = size();
  RealMatrix expected = RealMatrix::Constant(n, n, -1.0 / ((d + 1.0) * (d + 1.0)));
  expected.diagonal().array() += d * d / ((d + 1.0) * (d + 1.0));
  return max_abs(RealMatrix(bloch_gram() - expected));
}

SicPovm build_sic(const Fiducial& fiducial, const SuBasis& basis, double max_residual) {
  return SicPovm::build(fiducial, basis, max_residual);
}

}  // namespace sicsimplex
