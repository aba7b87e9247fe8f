#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>

#include <doctest.h>

#include "cli_app.hpp"
#include "sicsimplex/json_io.hpp"

using namespace sicsimplex;
using io::json;
namespace fs = std::filesystem;

namespace {

struct Run {
  int code;
  std::string out;
  std::string err;
};

Run run_cli(std::vector<std::string> args) {
  std::ostringstream out, err;
  const int code = cli::run(args, out, err);
  return {code, out.str(), err.str()};
}

fs::path scratch(const std::string& name) {
  const fs::path dir = fs::temp_directory_path() / "sicsimplex_cli_test";
  fs::create_directories(dir);
  return dir / name;
}

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  return {std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>()};
}

void write_json(const fs::path& p, const json& j) { io::write_text_file(p, j.dump()); }

struct CatalogEnv {
  CatalogEnv() {
    path = scratch("catalog.json");
    fs::remove(path);
    ::setenv("SIC_SIMPLEX_CATALOG", path.c_str(), 1);
  }
  ~CatalogEnv() { ::unsetenv("SIC_SIMPLEX_CATALOG"); }
  fs::path path;
};

}  // namespace

TEST_CASE("geometry") {
  const Run r3 = run_cli({"geometry", "--d", "3"});
  CHECK(r3.code == cli::kExitOk);
  CHECK(json::parse(r3.out).at("m_pure") == 5);

  const Run r2 = run_cli({"geometry", "--d", "2"});
  CHECK(json::parse(r2.out).at("pure_sphere_is_inner_sphere") == true);

  const Run csv = run_cli({"geometry", "--d", "4", "--format", "csv"});
  CHECK(csv.out.rfind(io::report_csv_header() + "\n4,", 0) == 0);

  CHECK(run_cli({"geometry", "--d", "1"}).code == cli::kExitUsage);
  CHECK(run_cli({"geometry"}).code == cli::kExitUsage);
  CHECK(run_cli({}).code == cli::kExitUsage);
}

TEST_CASE("find-sic is accurate and byte-for-byte reproducible") {
  for (const char* d : {"2", "3"}) {
    const fs::path a = scratch(std::string("fid_a_") + d + ".json");
    const fs::path b = scratch(std::string("fid_b_") + d + ".json");
    CHECK(run_cli({"find-sic", "--d", d, "--seed", "1", "--out", a.string()}).code == cli::kExitOk);
    CHECK(run_cli({"find-sic", "--d", d, "--seed", "1", "--out", b.string()}).code == cli::kExitOk);
    CHECK(slurp(a) == slurp(b));
    CHECK(json::parse(slurp(a)).at("residual").get<double>() < 1e-10);
  }
  const Run fail = run_cli({"find-sic", "--d", "3", "--restarts", "1", "--max-iters", "1", "--tol", "1e-300"});
  CHECK(fail.code == cli::kExitCheckFailed);
  CHECK(json::parse(fail.out).contains("residual"));
  CHECK(fail.err.find("residual") != std::string::npos);
}

TEST_CASE("find-sic can populate the catalog") {
  CatalogEnv env;
  CHECK(run_cli({"find-sic", "--d", "4", "--save-catalog"}).code == cli::kExitOk);
  CHECK(io::FiducialCatalog::load(env.path).find(4).has_value());
}

TEST_CASE("verify passes and caches searched fiducials") {
  CatalogEnv env;
  const Run r2 = run_cli({"verify", "--d", "2", "--samples", "1000", "--seed", "7"});
  CHECK(r2.code == cli::kExitOk);
  const json rep = json::parse(r2.out);
  CHECK(rep[0].at("max_theorem_deviation").get<double>() < 1e-10);
  CHECK(rep[0].at("pass") == true);

  const Run r5 = run_cli({"verify", "--d", "5", "--samples", "1000", "--seed", "7"});
  CHECK(r5.code == cli::kExitOk);
  CHECK(json::parse(r5.out)[0].at("max_theorem_deviation").get<double>() < 1e-10);
  CHECK(io::FiducialCatalog::load(env.path).find(5).has_value());

  const fs::path out = scratch("verify_all.csv");
  CHECK(run_cli({"verify", "--all", "--samples", "50", "--format", "csv", "--out", out.string()}).code ==
        cli::kExitOk);
  const std::string csv = slurp(out);
  CHECK(std::count(csv.begin(), csv.end(), '\n') == 5);

  CHECK(run_cli({"verify"}).code == cli::kExitUsage);
}

TEST_CASE("verify refuses a corrupted fiducial") {
  json fid = io::fiducial_to_json(find_fiducial(3, 1).fiducial);
  fid["psi"][0] = json::array({0.9, 0.3});
  const fs::path path = scratch("corrupted.json");
  write_json(path, fid);
  const Run r = run_cli({"verify", "--d", "3", "--in", path.string()});
  CHECK(r.code == cli::kExitCheckFailed);
  CHECK(r.err.find("rejected") != std::string::npos);

  json stored = io::fiducial_to_json(builtin_qubit_fiducial());
  stored["residual"] = 0.1;
  write_json(path, stored);
  CHECK(run_cli({"verify", "--d", "2", "--in", path.string()}).code == cli::kExitCheckFailed);
}

TEST_CASE("convert between representations") {
  CatalogEnv env;
  const fs::path mixed = scratch("mixed3.json");
  write_json(mixed, io::state_to_json({3, io::StateKind::kRho, DensityMatrix::maximally_mixed(3).matrix(), {}}));
  const Run probs = run_cli({"convert", "--in", mixed.string(), "--to", "probabilities"});
  REQUIRE(probs.code == cli::kExitOk);
  const auto p = json::parse(probs.out).at("probabilities").get<std::vector<double>>();
  REQUIRE(p.size() == 9);
  for (double x : p) CHECK(x == doctest::Approx(1.0 / 9.0).epsilon(1e-14));

  const fs::path uniform = scratch("uniform3.json");
  write_json(uniform, json{{"d", 3}, {"probabilities", std::vector<double>(9, 1.0 / 9.0)}});
  const Run back = run_cli({"convert", "--in", uniform.string(), "--to", "rho"});
  REQUIRE(back.code == cli::kExitOk);
  const ComplexMatrix rho = io::complex_matrix_from_json(json::parse(back.out).at("rho"));
  CHECK(max_abs(ComplexMatrix(rho - ComplexMatrix::Identity(3, 3) / 3.0)) < 1e-12);

  const fs::path bad = scratch("bad_bloch.json");
  write_json(bad, json{{"d", 2}, {"bloch", {0.0, 0.0, 1.0}}});
  CHECK(run_cli({"convert", "--in", bad.string(), "--to", "rho"}).code == cli::kExitCheckFailed);
  CHECK(run_cli({"convert", "--in", bad.string(), "--to", "nonsense"}).code == cli::kExitUsage);
}

TEST_CASE("tomography CSV") {
  const fs::path zero = scratch("zero2.json");
  write_json(zero, json{{"d", 2}, {"bloch", {0.0, 0.0, 1.0 / std::sqrt(3.0)}}});
  const fs::path out = scratch("tomo.csv");
  const std::vector<std::string> args = {"tomography", "--in", zero.string(), "--shots", "1000000",
                                         "--seed",     "3",  "--out", out.string()};
  CHECK(run_cli(args).code == cli::kExitOk);
  const std::string first = slurp(out);
  CHECK(run_cli(args).code == cli::kExitOk);
  CHECK(slurp(out) == first);

  std::istringstream lines(first);
  std::string header, row;
  std::getline(lines, header);
  std::getline(lines, row);
  CHECK(header == "shots,trace_distance,seed");
  const double td = std::stod(row.substr(row.find(',') + 1));
  CHECK(td < 0.01);

  const Run trials = run_cli({"tomography", "--in", zero.string(), "--shots", "1000", "--trials", "4"});
  CHECK(std::count(trials.out.begin(), trials.out.end(), '\n') == 5);
}
