#include <cmath>
#include <cstdlib>
#include <filesystem>
#include <limits>

#include <doctest.h>

#include "sicsimplex/json_io.hpp"

using namespace sicsimplex;
using io::json;

namespace {

std::filesystem::path temp_file(const std::string& name) {
  return std::filesystem::temp_directory_path() / ("sicsimplex_io_" + name);
}

}  // namespace

TEST_CASE("basis dump is an array of d x d [re, im] matrices") {
  const json j = io::basis_to_json(SuBasis(2));
  REQUIRE(j.size() == 3);
  CHECK(j[1][0][1] == json::array({0.0, -1.0}));
  CHECK(io::complex_matrix_from_json(j[2]).isApprox(SuBasis(2)[2]));
}

TEST_CASE("frame JSON roundtrip") {
  const SimplexFrame f = build_simplex_frame(8);
  const json j = io::frame_to_json(f);
  CHECK(j.at("n") == 8);
  CHECK(j.at("vertices").size() == 9);
  const SimplexFrame back = io::frame_from_json(j);
  CHECK(max_abs(RealMatrix(back.vertices() - f.vertices())) == 0.0);
}

TEST_CASE("state files") {
  io::StateFile rho{2, io::StateKind::kRho, DensityMatrix::maximally_mixed(2).matrix(), {}};
  const json j = io::state_to_json(rho);
  CHECK(j.at("rho")[0][0] == json::array({0.5, 0.0}));
  const io::StateFile back = io::state_from_json(j);
  CHECK(back.kind == io::StateKind::kRho);
  CHECK(back.rho.isApprox(rho.rho));

  CHECK(io::state_from_json(json{{"d", 3}, {"bloch", std::vector<double>(8, 0.0)}}).kind == io::StateKind::kBloch);
  CHECK(io::state_from_json(json{{"d", 3}, {"probabilities", std::vector<double>(9, 1.0 / 9)}}).kind ==
        io::StateKind::kProbabilities);
  CHECK_THROWS_AS(io::state_from_json(json{{"d", 3}, {"bloch", std::vector<double>(9, 0.0)}}),
                  std::invalid_argument);
  CHECK_THROWS_AS(io::state_from_json(json{{"d", 2}}), std::invalid_argument);
  CHECK_THROWS_AS(io::state_from_json(json{{"d", 2},
                                           {"bloch", std::vector<double>(3, 0.0)},
                                           {"point", std::vector<double>(3, 0.0)}}),
                  std::invalid_argument);
}

TEST_CASE("fiducial entries preserve psi and never understate the residual") {
  Fiducial fid = find_fiducial(3, 2).fiducial;
  const json j = io::fiducial_to_json(fid);
  for (const char* key : {"d", "psi", "residual", "seed", "config"}) CHECK(j.contains(key));
  const Fiducial back = io::fiducial_from_json(j);
  CHECK((back.psi - fid.psi).norm() < 1e-15);
  CHECK(back.source == FiducialSource::kSearch);
  CHECK(back.config.restarts == fid.config.restarts);

  json corrupted = j;
  corrupted["residual"] = 0.1;
  CHECK(io::fiducial_from_json(corrupted).residual == 0.1);

  json wrong_len = j;
  wrong_len["psi"].erase(0);
  CHECK_THROWS_AS(io::fiducial_from_json(wrong_len), std::invalid_argument);
}

TEST_CASE("catalog persistence and lookup") {
  const auto path = temp_file("catalog.json");
  std::filesystem::remove(path);
  CHECK(io::FiducialCatalog::load_or_empty(path).entries().empty());

  io::FiducialCatalog catalog;
  catalog.insert(find_fiducial(3, 1).fiducial);
  catalog.insert(builtin_qubit_fiducial());
  Fiducial worse = find_fiducial(3, 1).fiducial;
  worse.residual = 1.0;
  catalog.insert(worse);
  catalog.save(path);

  const io::FiducialCatalog loaded = io::FiducialCatalog::load(path);
  REQUIRE(loaded.entries().size() == 2);
  CHECK(loaded.entries()[0].d == 2);
  REQUIRE(loaded.find(3).has_value());
  CHECK(loaded.find(3)->residual < 1e-10);
  CHECK_FALSE(loaded.find(4).has_value());

  // A single-entry file is a valid catalog.
  io::write_text_file(path, io::fiducial_to_json(builtin_qubit_fiducial()).dump());
  CHECK(io::FiducialCatalog::load(path).find(2).has_value());
  std::filesystem::remove(path);
}

TEST_CASE("catalog path honours the environment override") {
  ::setenv("SIC_SIMPLEX_CATALOG", "/tmp/elsewhere.json", 1);
  CHECK(io::default_catalog_path() == "/tmp/elsewhere.json");
  ::unsetenv("SIC_SIMPLEX_CATALOG");
  CHECK(io::default_catalog_path() == "sic_catalog.json");
}

TEST_CASE("report and tomography CSV layouts") {
  const io::ReportRow row{geometry_report(3), 1.5e-16};
  CHECK(io::report_csv_header() == "d,R_out,R_in,R_pure,m_pure,sum_p2_pure,max_theorem_deviation");
  const std::string line = io::report_csv_row(row);
  CHECK(line.rfind("3,2.8284271247461903,", 0) == 0);
  CHECK(line.find(",5,") != std::string::npos);
  CHECK(io::report_csv_row({geometry_report(3), std::nullopt}).back() == ',');
  const json j = io::report_to_json(row);
  CHECK(j.at("m_pure") == 5);
  CHECK(j.at("max_theorem_deviation") == 1.5e-16);

  TomographyResult t;
  t.shots = 100;
  t.trace_distance = 0.25;
  t.seed = 9;
  CHECK(io::tomography_csv_header() == "shots,trace_distance,seed");
  CHECK(io::tomography_csv_row(t) == "100,0.25,9");
}

TEST_CASE("non-finite numbers are never emitted") {
  CHECK_THROWS_AS(io::format_number(std::numeric_limits<double>::quiet_NaN()), std::domain_error);
  CHECK_THROWS_AS(io::format_number(std::numeric_limits<double>::infinity()), std::domain_error);
  json j = {{"a", {1.0, std::numeric_limits<double>::infinity()}}};
  CHECK_THROWS_AS(io::require_finite(j), std::domain_error);
  CHECK_NOTHROW(io::require_finite(json{{"a", 1.0}}));
}
