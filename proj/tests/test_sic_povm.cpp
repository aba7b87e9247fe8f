#include <cmath>
#include <numbers>

#include <doctest.h>

#include "oracles.hpp"
#include "sicsimplex/sic_povm.hpp"

using namespace sicsimplex;

namespace {

ComplexVector ket0(int d) {
  ComplexVector v = ComplexVector::Zero(d);
  v[0] = 1.0;
  return v;
}

}  // namespace

TEST_CASE("displacements are unitary and follow the documented convention") {
  for (int d = 2; d <= 5; ++d) {
    for (int k = 0; k < d; ++k) {
      for (int l = 0; l < d; ++l) {
        const ComplexMatrix D = displacement(d, k, l);
        CHECK(max_abs(ComplexMatrix(D * D.adjoint() - ComplexMatrix::Identity(d, d))) < 1e-14);
      }
    }
  }
  // D_{1,0} = X and D_{0,1} = Z for d = 3.
  const Complex omega = std::polar(1.0, 2.0 * std::numbers::pi / 3.0);
  const ComplexMatrix x = displacement(3, 1, 0);
  CHECK(std::abs(x(1, 0) - 1.0) < 1e-15);
  CHECK(std::abs(x(0, 2) - 1.0) < 1e-15);
  const ComplexMatrix z = displacement(3, 0, 1);
  CHECK(std::abs(z(2, 2) - omega * omega) < 1e-15);
  // D_{1,1} = tau X Z with tau = -exp(i pi/3)
  const Complex tau = -std::polar(1.0, std::numbers::pi / 3.0);
  CHECK(max_abs(ComplexMatrix(displacement(3, 1, 1) - tau * x * z)) < 1e-14);
}

TEST_CASE("orbit of |0> is not a SIC") {
  const auto orbit = wh_orbit(ket0(2));
  REQUIRE(orbit.size() == 4);
  for (const auto& v : orbit) CHECK(v.norm() == doctest::Approx(1.0));
  // Z|0> = |0>, so the overlap 1 misses the target 1/3 by 2/3.
  CHECK(sic_residual(orbit) == doctest::Approx(2.0 / 3.0).epsilon(1e-14));
  CHECK(frame_potential(orbit) > 0.0);
}

TEST_CASE("built-in qubit fiducial generates a tetrahedron") {
  const Fiducial fid = builtin_qubit_fiducial();
  CHECK(fid.source == FiducialSource::kBuiltIn);
  CHECK(fid.residual < 1e-12);
  const auto orbit = wh_orbit(fid.psi);
  for (std::size_t i = 0; i < orbit.size(); ++i) {
    for (std::size_t j = 0; j < orbit.size(); ++j) {
      if (i != j) CHECK(oracle::overlap(orbit[i], orbit[j]) == doctest::Approx(1.0 / 3.0).epsilon(1e-13));
    }
  }
  // Directions are (1,1,1)/sqrt(3) with two signs flipped.
  const Eigen::Vector3d n0 = oracle::qubit_bloch_direction(orbit[0]);
  CHECK((n0 - Eigen::Vector3d::Ones() / std::sqrt(3.0)).norm() < 1e-14);
  for (std::size_t i = 1; i < orbit.size(); ++i) {
    const Eigen::Vector3d n = oracle::qubit_bloch_direction(orbit[i]);
    CHECK(n.cwiseAbs().minCoeff() == doctest::Approx(1.0 / std::sqrt(3.0)));
    CHECK(n.sum() == doctest::Approx(-1.0 / std::sqrt(3.0)));
  }
  CHECK(frame_potential(orbit) < 1e-24);
}

TEST_CASE("frame potential equals d^2 times the reduced defect norm") {
  std::mt19937_64 rng(8);
  for (int d = 2; d <= 5; ++d) {
    const ComplexVector psi = random_ket(d, rng);
    const auto orbit = wh_orbit(psi);
    const RealVector defects = orbit_overlap_defects(psi);
    CHECK(frame_potential(orbit) == doctest::Approx(d * d * defects.squaredNorm()).epsilon(1e-12));
    CHECK(sic_residual(orbit) == doctest::Approx(defects.cwiseAbs().maxCoeff()).epsilon(1e-12));
  }
}

TEST_CASE("fiducial search reaches machine-precision SICs") {
  for (int d = 2; d <= 5; ++d) {
    CAPTURE(d);
    const SearchOutcome out = find_fiducial(d, 1);
    CHECK(out.converged);
    CHECK(out.fiducial.residual < (d <= 3 ? 1e-10 : 1e-8));
    CHECK(out.fiducial.source == FiducialSource::kSearch);
    CHECK(out.fiducial.psi.norm() == doctest::Approx(1.0).epsilon(1e-12));
    CHECK(sic_residual(wh_orbit(out.fiducial.psi)) == doctest::Approx(out.fiducial.residual));
  }
  CHECK_THROWS_AS(find_fiducial(1, 1), std::invalid_argument);
}

TEST_CASE("fiducial search is deterministic") {
  const SearchOutcome a = find_fiducial(4, 99);
  const SearchOutcome b = find_fiducial(4, 99);
  REQUIRE(a.fiducial.psi.size() == b.fiducial.psi.size());
  for (int i = 0; i < a.fiducial.psi.size(); ++i) {
    CHECK(a.fiducial.psi[i].real() == b.fiducial.psi[i].real());
    CHECK(a.fiducial.psi[i].imag() == b.fiducial.psi[i].imag());
  }
  CHECK(a.fiducial.residual == b.fiducial.residual);
}

TEST_CASE("unreachable target reports best-effort failure") {
  SearchConfig config;
  config.restarts = 2;
  config.max_iters = 1;
  config.target_residual = 1e-300;
  const SearchOutcome out = find_fiducial(3, 5, config);
  CHECK_FALSE(out.converged);
  CHECK(out.restarts_run == 2);
  CHECK(out.fiducial.residual > 0.0);
}

TEST_CASE("qubit SIC from the built-in fiducial") {
  const SuBasis basis(2);
  const SicPovm sic = build_sic(builtin_qubit_fiducial(), basis);
  const RealMatrix overlaps = sic.overlap_matrix();
  for (int i = 0; i < 4; ++i) {
    for (int j = 0; j < 4; ++j) {
      CHECK(overlaps(i, j) == doctest::Approx((i == j ? 3.0 : 1.0) / 12.0).epsilon(1e-14));
    }
  }
  const RealMatrix gram = sic.bloch_gram();
  for (int i = 0; i < 4; ++i) {
    for (int j = 0; j < 4; ++j) {
      CHECK(gram(i, j) == doctest::Approx(i == j ? 1.0 / 3.0 : -1.0 / 9.0).epsilon(1e-14));
    }
  }
  CHECK(sic.identity_error() < 1e-15);
}

TEST_CASE("searched SICs satisfy every defining condition") {
  for (int d = 2; d <= 5; ++d) {
    CAPTURE(d);
    const SuBasis basis(d);
    const StructureConstants sc = structure_constants(basis);
    const SicPovm sic = build_sic(find_fiducial(d, 3).fiducial, basis);
    REQUIRE(sic.size() == d * d);
    CHECK(sic.identity_error() < 1e-10);
    CHECK(sic.overlap_error() < 1e-9);
    CHECK(sic.bloch_gram_error() < 1e-9);
    for (int i = 0; i < sic.size(); ++i) {
      const RealVector eig = hermitian_eigenvalues(d * sic.effects()[i]);
      CHECK(eig[d - 1] == doctest::Approx(1.0).epsilon(1e-10));
      CHECK(std::abs(eig[0]) < 1e-10);
      CHECK(is_pure(sic.bloch_dirs()[i], sc));
      const Complex direct = oracle::trace2(sic.effects()[i], sic.effects()[(i + 1) % sic.size()]);
      CHECK(direct.real() == doctest::Approx(1.0 / (d * d * (d + 1.0))).epsilon(1e-9));
    }
  }
}

TEST_CASE("build_sic refuses poor fiducials") {
  const SuBasis basis(2);
  CHECK_THROWS_AS(build_sic(make_fiducial(ket0(2), FiducialSource::kImported), basis), std::invalid_argument);
  Fiducial fid = builtin_qubit_fiducial();
  fid.residual = 0.1;  // stored residual alone is enough to refuse
  CHECK_THROWS_AS(build_sic(fid, basis), std::invalid_argument);
  CHECK_THROWS_AS(build_sic(builtin_qubit_fiducial(), SuBasis(3)), std::invalid_argument);
}

TEST_CASE("fiducial source names roundtrip") {
  for (FiducialSource s : {FiducialSource::kBuiltIn, FiducialSource::kSearch, FiducialSource::kImported}) {
    CHECK(fiducial_source_from_string(to_string(s)) == s);
  }
  CHECK_THROWS(fiducial_source_from_string("magic"));
}
