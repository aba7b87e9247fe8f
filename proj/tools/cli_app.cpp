#include "cli_app.hpp"

#include <algorithm>
#include <cstdint>
#include <filesystem>
#include <optional>
#include <sstream>
#include <stdexcept>

#include <CLI11.hpp>

#include "sicsimplex/json_io.hpp"
#include "sicsimplex/state_simplex.hpp"

namespace sicsimplex::cli {

namespace {

namespace fs = std::filesystem;
using io::json;

struct Options {
  int d = 0;
  bool all = false;
  std::uint64_t seed = 1;
  int samples = 1000;
  std::int64_t shots = 100000;
  int trials = 1;
  double tol = 1e-10;
  std::string in;
  std::string out;
  std::string fiducial;
  std::string format = "json";
  std::string to = "rho";
  bool save_catalog = false;
  SearchConfig search;
};

class CheckFailed : public std::runtime_error {
  using std::runtime_error::runtime_error;
};

void emit(const Options& opt, const std::string& text, std::ostream& out) {
  if (opt.out.empty()) {
    out << text;
  } else {
    io::write_text_file(opt.out, text);
  }
}

std::string dump(const json& j) {
  io::require_finite(j);
  return j.dump(2) + "\n";
}

/// --fiducial file, then the built-in qubit fiducial, then the catalog, then
/// a fresh search that is persisted to the catalog.
Fiducial resolve_fiducial(int d, const std::string& fiducial_path, std::ostream& err) {
  if (!fiducial_path.empty()) {
    Fiducial fid = io::fiducial_from_json(io::read_json_file(fiducial_path));
    if (fid.d != d) throw std::invalid_argument("fiducial file is for d = " + std::to_string(fid.d));
    return fid;
  }
  if (d == 2) return builtin_qubit_fiducial();

  const fs::path catalog_path = io::default_catalog_path();
  io::FiducialCatalog catalog = io::FiducialCatalog::load_or_empty(catalog_path);
  if (auto cached = catalog.find(d); cached && cached->residual <= SearchConfig{}.target_residual) {
    return *cached;
  }
  err << "no catalogued fiducial for d = " << d << ", searching (seed 1)\n";
  const SearchOutcome found = find_fiducial(d, 1, SearchConfig{});
  if (!found.converged) {
    throw CheckFailed("fiducial search for d = " + std::to_string(d) +
                      " did not converge, best residual " + io::format_number(found.fiducial.residual));
  }
  catalog.insert(found.fiducial);
  catalog.save(catalog_path);
  return found.fiducial;
}

QuantumSimplexContext make_context(int d, const std::string& fiducial_path, std::ostream& err) {
  const Fiducial fid = resolve_fiducial(d, fiducial_path, err);
  try {
    return QuantumSimplexContext::from_fiducial(fid);
  } catch (const std::invalid_argument& e) {
    throw CheckFailed(std::string("fiducial rejected: ") + e.what());
  }
}

int cmd_geometry(const Options& opt, std::ostream& out) {
  const io::ReportRow row{geometry_report(opt.d), std::nullopt};
  if (opt.format == "csv") {
    emit(opt, io::report_csv_header() + "\n" + io::report_csv_row(row) + "\n", out);
  } else {
    emit(opt, dump(io::report_to_json(row)), out);
  }
  return kExitOk;
}

int cmd_find_sic(const Options& opt, std::ostream& out, std::ostream& err) {
  const SearchOutcome found = find_fiducial(opt.d, opt.seed, opt.search);
  emit(opt, dump(io::fiducial_to_json(found.fiducial)), out);
  err << "d = " << opt.d << ": residual " << io::format_number(found.fiducial.residual) << " after "
      << found.restarts_run << " restart(s)\n";
  if (!found.converged) {
    err << "search did not reach target residual " << io::format_number(opt.search.target_residual) << "\n";
    return kExitCheckFailed;
  }
  if (opt.save_catalog) {
    const fs::path path = io::default_catalog_path();
    io::FiducialCatalog catalog = io::FiducialCatalog::load_or_empty(path);
    catalog.insert(found.fiducial);
    catalog.save(path);
  }
  return kExitOk;
}

int cmd_verify(const Options& opt, std::ostream& out, std::ostream& err) {
  std::vector<int> dims;
  if (opt.all) {
    dims = {2, 3, 4, 5};
  } else if (opt.d >= 2) {
    dims = {opt.d};
  } else {
    throw CLI::ValidationError("--d", "verify needs --d or --all");
  }
  if (opt.all && !opt.in.empty()) {
    throw CLI::ValidationError("--in", "a fiducial file applies to a single --d");
  }

  bool ok = true;
  json report = json::array();
  std::string csv = io::report_csv_header() + "\n";
  for (int d : dims) {
    const QuantumSimplexContext ctx = make_context(d, opt.in, err);
    const TheoremSweep theorem = verify_bloch_equals_simplex(ctx, opt.samples, opt.seed);
    const PureSphereSweep pure = verify_pure_sphere(ctx, opt.samples, derive_seed(opt.seed, 0x70757265));
    const bool pass = theorem.max_deviation < opt.tol && theorem.max_inverse_error < opt.tol &&
                      pure.max_sum_p2_error < opt.tol && pure.max_norm_error < opt.tol;
    ok = ok && pass;

    const io::ReportRow row{geometry_report(d), theorem.max_deviation};
    json entry = io::report_to_json(row);
    entry["samples"] = opt.samples;
    entry["seed"] = opt.seed;
    entry["fiducial_residual"] = ctx.sic().fiducial().residual;
    entry["max_inverse_map_error"] = theorem.max_inverse_error;
    entry["max_pure_sum_p2_error"] = pure.max_sum_p2_error;
    entry["max_pure_norm_error"] = pure.max_norm_error;
    entry["pass"] = pass;
    report.push_back(std::move(entry));
    csv += io::report_csv_row(row) + "\n";

    err << "d = " << d << ": theorem deviation " << io::format_number(theorem.max_deviation)
        << ", pure sum p^2 error " << io::format_number(pure.max_sum_p2_error) << ", pure norm error "
        << io::format_number(pure.max_norm_error) << (pass ? "  PASS" : "  FAIL") << "\n";
  }
  emit(opt, opt.format == "csv" ? csv : dump(report), out);
  return ok ? kExitOk : kExitCheckFailed;
}

/// Bloch vector of a state file, checked to describe a quantum state.
BlochVector state_bloch(const io::StateFile& state, const SuBasis& basis,
                        const QuantumSimplexContext* ctx) {
  switch (state.kind) {
    case io::StateKind::kRho:
      return to_bloch(DensityMatrix(state.rho), basis);
    case io::StateKind::kBloch:
      return BlochVector(state.d, state.values);
    case io::StateKind::kProbabilities:
      return point_as_bloch(probabilities_to_point(ProbabilityDistribution(state.values), *ctx), *ctx);
    case io::StateKind::kPoint:
      return BlochVector(state.d, state.values);
  }
  throw std::logic_error("unhandled state kind");
}

bool needs_sic(io::StateKind kind) {
  return kind == io::StateKind::kProbabilities || kind == io::StateKind::kPoint;
}

int cmd_convert(const Options& opt, std::ostream& out, std::ostream& err) {
  const io::StateFile state = io::state_from_json(io::read_json_file(opt.in));
  const io::StateKind target = io::state_kind_from_string(opt.to);
  const SuBasis basis(state.d);
  std::optional<QuantumSimplexContext> ctx;
  if (needs_sic(state.kind) || needs_sic(target)) ctx.emplace(make_context(state.d, opt.fiducial, err));

  const BlochVector r = state_bloch(state, basis, ctx ? &*ctx : nullptr);
  const StateCheck check = is_state(r, basis);
  if (!check) {
    throw CheckFailed("input is not a quantum state (min eigenvalue " +
                      io::format_number(check.min_eigenvalue) + ")");
  }

  io::StateFile result;
  result.d = state.d;
  result.kind = target;
  switch (target) {
    case io::StateKind::kRho:
      result.rho = from_bloch(r, basis);
      break;
    case io::StateKind::kBloch:
    case io::StateKind::kPoint:
      result.values = r.coords();
      break;
    case io::StateKind::kProbabilities:
      result.values = bloch_to_probabilities(r, *ctx).values();
      break;
  }
  emit(opt, dump(io::state_to_json(result)), out);
  return kExitOk;
}

int cmd_tomography(const Options& opt, std::ostream& out, std::ostream& err) {
  const io::StateFile state = io::state_from_json(io::read_json_file(opt.in));
  const QuantumSimplexContext ctx = make_context(state.d, opt.fiducial, err);
  const BlochVector r = state_bloch(state, ctx.basis(), &ctx);
  const DensityMatrix rho(from_bloch(r, ctx.basis()));

  std::string csv = io::tomography_csv_header() + "\n";
  for (int t = 0; t < opt.trials; ++t) {
    const std::uint64_t seed = opt.trials == 1 ? opt.seed : derive_seed(opt.seed, t);
    csv += io::tomography_csv_row(simulate_tomography(rho, ctx, opt.shots, seed)) + "\n";
  }
  emit(opt, csv, out);
  return kExitOk;
}

void add_d(CLI::App* sub, Options& opt, bool required) {
  auto* o = sub->add_option("--d", opt.d, "Hilbert space dimension")->check(CLI::Range(2, 16));
  if (required) o->required();
}

void add_format(CLI::App* sub, Options& opt) {
  sub->add_option("--format", opt.format, "Output format")->check(CLI::IsMember({"json", "csv"}));
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  Options opt;
  CLI::App app{"SIC-POVM probability simplex toolkit"};
  app.option_defaults()->always_capture_default();
  app.require_subcommand(1, 1);

  auto* geometry = app.add_subcommand("geometry", "Closed-form geometry of the state body in the SIC simplex");
  add_d(geometry, opt, true);
  geometry->add_option("--out", opt.out, "Output file (default stdout)");
  add_format(geometry, opt);

  auto* find_sic = app.add_subcommand("find-sic", "Search for a Weyl-Heisenberg SIC fiducial");
  add_d(find_sic, opt, true);
  find_sic->add_option("--seed", opt.seed, "Master seed");
  find_sic->add_option("--restarts", opt.search.restarts, "Random restarts")->check(CLI::PositiveNumber);
  find_sic->add_option("--max-iters", opt.search.max_iters, "Iterations per restart")->check(CLI::PositiveNumber);
  find_sic->add_option("--tol", opt.search.target_residual, "Target residual")->check(CLI::PositiveNumber);
  find_sic->add_option("--out", opt.out, "Fiducial file (default stdout)");
  find_sic->add_flag("--save-catalog", opt.save_catalog, "Merge the result into the catalog");

  auto* verify = app.add_subcommand("verify", "Numerically check that Bloch vectors and SIC simplex points coincide");
  add_d(verify, opt, false);
  verify->add_flag("--all", opt.all, "Sweep d = 2..5");
  verify->add_option("--samples", opt.samples, "Random states per dimension")->check(CLI::PositiveNumber);
  verify->add_option("--seed", opt.seed, "Sampling seed");
  verify->add_option("--tol", opt.tol, "Acceptance tolerance")->check(CLI::PositiveNumber);
  verify->add_option("--in", opt.in, "Fiducial file to use instead of the catalog")->check(CLI::ExistingFile);
  verify->add_option("--out", opt.out, "Report file (default stdout)");
  add_format(verify, opt);

  auto* convert = app.add_subcommand("convert", "Convert a state among rho, bloch, probabilities, point");
  convert->add_option("--in", opt.in, "State file")->required()->check(CLI::ExistingFile);
  convert->add_option("--to", opt.to, "Target representation")
      ->check(CLI::IsMember({"rho", "bloch", "probabilities", "point"}));
  convert->add_option("--fiducial", opt.fiducial, "Fiducial file")->check(CLI::ExistingFile);
  convert->add_option("--out", opt.out, "Output file (default stdout)");

  auto* tomography = app.add_subcommand("tomography", "Simulate SIC tomography of a state");
  tomography->add_option("--in", opt.in, "State file")->required()->check(CLI::ExistingFile);
  tomography->add_option("--shots", opt.shots, "Measurement shots per trial")->check(CLI::PositiveNumber);
  tomography->add_option("--seed", opt.seed, "Sampling seed");
  tomography->add_option("--trials", opt.trials, "Independent trials")->check(CLI::PositiveNumber);
  tomography->add_option("--fiducial", opt.fiducial, "Fiducial file")->check(CLI::ExistingFile);
  tomography->add_option("--out", opt.out, "CSV file (default stdout)");

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
    if (*geometry) return cmd_geometry(opt, out);
    if (*find_sic) return cmd_find_sic(opt, out, err);
    if (*verify) return cmd_verify(opt, out, err);
    if (*convert) return cmd_convert(opt, out, err);
    if (*tomography) return cmd_tomography(opt, out, err);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e, out, err);
  } catch (const CLI::ParseError& e) {
    app.exit(e, out, err);
    return kExitUsage;
  } catch (const CheckFailed& e) {
    err << "error: " << e.what() << "\n";
    return kExitCheckFailed;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return kExitCheckFailed;
  }
  return kExitUsage;
}

}  // namespace sicsimplex::cli
