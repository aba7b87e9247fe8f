#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "sicsimplex/bloch.hpp"
#include "sicsimplex/linalg.hpp"
#include "sicsimplex/su_basis.hpp"

namespace sicsimplex {

/// Weyl-Heisenberg displacement D_{k,l} = tau^{kl} X^k Z^l with
/// X|j> = |j+1 mod d>, Z|j> = omega^j |j>, omega = exp(2 pi i/d), tau = -exp(i pi/d).
ComplexMatrix displacement(int d, int k, int l);

/// D_{k,l}|psi> for k, l in 0..d-1, ordered by index k * d + l.
std::vector<ComplexVector> wh_orbit(const ComplexVector& psi);

/// sum_{i != j} (|<psi_i|psi_j>|^2 - 1/(d+1))^2 over a set of d^2 unit vectors.
double frame_potential(const std::vector<ComplexVector>& orbit);
/// max_{i != j} | |<psi_i|psi_j>|^2 - 1/(d+1) |
double sic_residual(const std::vector<ComplexVector>& orbit);

/// |<psi|D_{k,l}|psi>|^2 - 1/(d+1) for every (k, l) != (0, 0), in orbit order.
/// For a unit psi the overlaps of its orbit are exactly these values, so this
/// vector vanishes iff the orbit is a SIC.
RealVector orbit_overlap_defects(const ComplexVector& psi);

enum class FiducialSource { kBuiltIn, kSearch, kImported };

std::string to_string(FiducialSource source);
FiducialSource fiducial_source_from_string(const std::string& s);

struct SearchConfig {
  int restarts = 50;
  int max_iters = 500;
  double target_residual = 1e-10;
};

struct Fiducial {
  int d = 0;
  ComplexVector psi;
  FiducialSource source = FiducialSource::kImported;
  /// SIC residual of the orbit of psi.
  double residual = 0.0;
  /// Only meaningful for searched fiducials.
  std::uint64_t seed = 0;
  SearchConfig config;
};

/// Normalizes psi, fixes its global phase so the first nonzero entry is real
/// and positive, and computes the orbit residual.
Fiducial make_fiducial(ComplexVector psi, FiducialSource source);

/// Exact qubit fiducial with Bloch direction (1, 1, 1)/sqrt(3); its orbit is
/// the tetrahedral SIC.
Fiducial builtin_qubit_fiducial();

struct SearchOutcome {
  Fiducial fiducial;
  bool converged = false;
  int restarts_run = 0;
};

/// Multi-start minimization of the frame potential over unit vectors in C^d.
/// Restart r starts from a Gaussian vector drawn from seed_seq{seed, r}. The
/// run stops at the first restart whose residual reaches the target;
/// otherwise the lowest-residual fiducial (earliest on ties) is returned with
/// converged = false.
SearchOutcome find_fiducial(int d, std::uint64_t seed, const SearchConfig& config = {});

inline constexpr double kMaxFiducialResidual = 1e-6;

/// d^2 effects E_i = |psi_i><psi_i| / d from a Weyl-Heisenberg fiducial, with
/// their Bloch directions e_i = to_bloch(d E_i).
class SicPovm {
 public:
  /// Throws std::invalid_argument when the fiducial residual exceeds
  /// `max_residual`, and std::runtime_error if the built effects violate the
  /// SIC conditions beyond a residual-scaled tolerance.
  static SicPovm build(const Fiducial& fiducial, const SuBasis& basis,
                       double max_residual = kMaxFiducialResidual);

  int dim() const { return fiducial_.d; }
  int size() const { return static_cast<int>(effects_.size()); }
  const Fiducial& fiducial() const { return fiducial_; }
  const std::vector<ComplexMatrix>& effects() const { return effects_; }
  const std::vector<BlochVector>& bloch_dirs() const { return bloch_dirs_; }
  const std::vector<ComplexVector>& orbit() const { return orbit_; }

  /// Tr(E_i E_j)
  RealMatrix overlap_matrix() const;
  /// e_i . e_j
  RealMatrix bloch_gram() const;
  /// max |(sum_i E_i) - I|
  double identity_error() const;
  /// max |Tr(E_i E_j) - (d delta_ij + 1)/(d^2 (d+1))|
  double overlap_error() const;
  /// max |e_i . e_j - (d^2 delta_ij - 1)/(d+1)^2|
  double bloch_gram_error() const;

 private:
  SicPovm() = default;

  Fiducial fiducial_;
  std::vector<ComplexVector> orbit_;
  std::vector<ComplexMatrix> effects_;
  std::vector<BlochVector> bloch_dirs_;
};

SicPovm build_sic(const Fiducial& fiducial, const SuBasis& basis,
                  double max_residual = kMaxFiducialResidual);

}  // namespace sicsimplex
