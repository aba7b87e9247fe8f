#include "sicsimplex/json_io.hpp"

#include <cmath>
#include <algorithm>
#include <cstdlib>
#include <fstream>
#include <sstream>
#include <stdexcept>

namespace sicsimplex::io {

namespace {

Complex complex_from_json(const json& j) {
  if (!j.is_array() || j.size() != 2) {
    throw std::invalid_argument("complex numbers must be [re, im] pairs");
  }
  return {j.at(0).get<double>(), j.at(1).get<double>()};
}

json complex_to_json(Complex z) { return json::array({z.real(), z.imag()}); }

}  // namespace

json complex_matrix_to_json(const ComplexMatrix& m) {
  json rows = json::array();
  for (int i = 0; i < m.rows(); ++i) {
    json row = json::array();
    for (int j = 0; j < m.cols(); ++j) row.push_back(complex_to_json(m(i, j)));
    rows.push_back(std::move(row));
  }
  return rows;
}

ComplexMatrix complex_matrix_from_json(const json& j) {
  if (!j.is_array() || j.empty()) throw std::invalid_argument("matrix must be a non-empty array of rows");
  const auto rows = static_cast<Eigen::Index>(j.size());
  const auto cols = static_cast<Eigen::Index>(j.at(0).size());
  ComplexMatrix m(rows, cols);
  for (Eigen::Index r = 0; r < rows; ++r) {
    const json& row = j.at(r);
    if (!row.is_array() || static_cast<Eigen::Index>(row.size()) != cols) {
      throw std::invalid_argument("matrix rows differ in length");
    }
    for (Eigen::Index c = 0; c < cols; ++c) m(r, c) = complex_from_json(row.at(c));
  }
  return m;
}

json complex_vector_to_json(const ComplexVector& v) {
  json out = json::array();
  for (int i = 0; i < v.size(); ++i) out.push_back(complex_to_json(v[i]));
  return out;
}

ComplexVector complex_vector_from_json(const json& j) {
  if (!j.is_array()) throw std::invalid_argument("complex vector must be an array");
  ComplexVector v(static_cast<Eigen::Index>(j.size()));
  for (std::size_t i = 0; i < j.size(); ++i) v[static_cast<Eigen::Index>(i)] = complex_from_json(j[i]);
  return v;
}

json real_vector_to_json(const RealVector& v) {
  return json(std::vector<double>(v.data(), v.data() + v.size()));
}

RealVector real_vector_from_json(const json& j) {
  if (!j.is_array()) throw std::invalid_argument("real vector must be an array");
  const auto values = j.get<std::vector<double>>();
  return Eigen::Map<const RealVector>(values.data(), static_cast<Eigen::Index>(values.size()));
}

json basis_to_json(const SuBasis& basis) {
  json out = json::array();
  for (const auto& m : basis.matrices()) out.push_back(complex_matrix_to_json(m));
  return out;
}

json frame_to_json(const SimplexFrame& frame) {
  json vertices = json::array();
  for (int i = 0; i < frame.vertex_count(); ++i) vertices.push_back(real_vector_to_json(frame.vertex(i)));
  return {{"n", frame.n()}, {"vertices", std::move(vertices)}};
}

SimplexFrame frame_from_json(const json& j) {
  std::vector<RealVector> vertices;
  for (const auto& v : j.at("vertices")) vertices.push_back(real_vector_from_json(v));
  SimplexFrame frame = SimplexFrame::from_vertices(vertices);
  if (frame.n() != j.at("n").get<int>()) throw std::invalid_argument("frame n does not match vertices");
  return frame;
}

std::string to_string(StateKind kind) {
  switch (kind) {
    case StateKind::kRho: return "rho";
    case StateKind::kBloch: return "bloch";
    case StateKind::kProbabilities: return "probabilities";
    case StateKind::kPoint: return "point";
  }
  return "rho";
}

StateKind state_kind_from_string(const std::string& s) {
  if (s == "rho") return StateKind::kRho;
  if (s == "bloch") return StateKind::kBloch;
  if (s == "probabilities") return StateKind::kProbabilities;
  if (s == "point") return StateKind::kPoint;
  throw std::invalid_argument("unknown state representation '" + s + "'");
}

json state_to_json(const StateFile& state) {
  json out = {{"d", state.d}};
  if (state.kind == StateKind::kRho) {
    out["rho"] = complex_matrix_to_json(state.rho);
  } else {
    out[to_string(state.kind)] = real_vector_to_json(state.values);
  }
  return out;
}

StateFile state_from_json(const json& j) {
  StateFile state;
  state.d = j.at("d").get<int>();
  if (state.d < 2) throw std::invalid_argument("state files need d >= 2");
  int found = 0;
  for (StateKind kind : {StateKind::kRho, StateKind::kBloch, StateKind::kProbabilities, StateKind::kPoint}) {
    if (!j.contains(to_string(kind))) continue;
    ++found;
    state.kind = kind;
  }
  if (found != 1) {
    throw std::invalid_argument("state file must contain exactly one of rho, bloch, probabilities, point");
  }
  const json& payload = j.at(to_string(state.kind));
  if (state.kind == StateKind::kRho) {
    state.rho = complex_matrix_from_json(payload);
    if (state.rho.rows() != state.d || state.rho.cols() != state.d) {
      throw std::invalid_argument("rho must be d x d");
    }
    return state;
  }
  state.values = real_vector_from_json(payload);
  const int expected = state.kind == StateKind::kProbabilities ? state.d * state.d : state.d * state.d - 1;
  if (state.values.size() != expected) {
    throw std::invalid_argument(to_string(state.kind) + " must have " + std::to_string(expected) +
                                " entries");
  }
  return state;
}

json fiducial_to_json(const Fiducial& fid) {
  return {
      {"d", fid.d},
      {"psi", complex_vector_to_json(fid.psi)},
      {"residual", fid.residual},
      {"seed", fid.seed},
      {"source", to_string(fid.source)},
      {"config",
       {{"restarts", fid.config.restarts},
        {"max_iters", fid.config.max_iters},
        {"target_residual", fid.config.target_residual}}},
  };
}

Fiducial fiducial_from_json(const json& j) {
  const int d = j.at("d").get<int>();
  ComplexVector psi = complex_vector_from_json(j.at("psi"));
  if (psi.size() != d) throw std::invalid_argument("fiducial psi must have d entries");
  const FiducialSource source =
      j.contains("source") ? fiducial_source_from_string(j.at("source").get<std::string>())
                           : FiducialSource::kImported;
  Fiducial fid = make_fiducial(std::move(psi), source);
  if (j.contains("residual")) {
    const double stored = j.at("residual").get<double>();
    if (!std::isfinite(stored) || stored < 0.0) throw std::invalid_argument("invalid stored residual");
    fid.residual = std::max(fid.residual, stored);
  }
  fid.seed = j.value("seed", std::uint64_t{0});
  if (j.contains("config")) {
    const json& c = j.at("config");
    fid.config.restarts = c.value("restarts", fid.config.restarts);
    fid.config.max_iters = c.value("max_iters", fid.config.max_iters);
    fid.config.target_residual = c.value("target_residual", fid.config.target_residual);
  }
  return fid;
}

FiducialCatalog FiducialCatalog::load(const std::filesystem::path& path) {
  const json j = read_json_file(path);
  FiducialCatalog catalog;
  if (j.is_object()) {
    catalog.insert(fiducial_from_json(j));
  } else if (j.is_array()) {
    for (const auto& entry : j) catalog.insert(fiducial_from_json(entry));
  } else {
    throw std::invalid_argument("catalog must be a fiducial object or an array of them");
  }
  return catalog;
}

FiducialCatalog FiducialCatalog::load_or_empty(const std::filesystem::path& path) {
  if (!std::filesystem::exists(path)) return {};
  return load(path);
}

void FiducialCatalog::save(const std::filesystem::path& path) const {
  json out = json::array();
  for (const auto& fid : entries_) out.push_back(fiducial_to_json(fid));
  write_text_file(path, out.dump(2) + "\n");
}

std::optional<Fiducial> FiducialCatalog::find(int d) const {
  for (const auto& fid : entries_) {
    if (fid.d == d) return fid;
  }
  return std::nullopt;
}

void FiducialCatalog::insert(const Fiducial& fid) {
  for (auto& existing : entries_) {
    if (existing.d != fid.d) continue;
    if (fid.residual < existing.residual) existing = fid;
    return;
  }
  entries_.push_back(fid);
  std::sort(entries_.begin(), entries_.end(), [](const Fiducial& a, const Fiducial& b) { return a.d < b.d; });
}

std::filesystem::path default_catalog_path() {
  if (const char* env = std::getenv("SIC_SIMPLEX_CATALOG"); env != nullptr && *env != '\0') {
    return env;
  }
  return "sic_catalog.json";
}

json report_to_json(const ReportRow& row) {
  const GeometryReport& g = row.geometry;
  json out = {
      {"d", g.d},
      {"n", g.n},
      {"R_out", g.r_out},
      {"R_in", g.r_in},
      {"R_pure", g.r_pure},
      {"m_pure", g.m_pure},
      {"sum_p2_pure", g.sum_p2_pure},
      {"pure_sphere_is_inner_sphere", g.pure_sphere_is_inner_sphere},
      {"facet_distances", g.facet_distances},
  };
  if (row.max_theorem_deviation) out["max_theorem_deviation"] = *row.max_theorem_deviation;
  return out;
}

std::string report_csv_header() { return "d,R_out,R_in,R_pure,m_pure,sum_p2_pure,max_theorem_deviation"; }

std::string report_csv_row(const ReportRow& row) {
  const GeometryReport& g = row.geometry;
  std::ostringstream out;
  out << g.d << ',' << format_number(g.r_out) << ',' << format_number(g.r_in) << ','
      << format_number(g.r_pure) << ',' << g.m_pure << ',' << format_number(g.sum_p2_pure) << ',';
  if (row.max_theorem_deviation) out << format_number(*row.max_theorem_deviation);
  return out.str();
}

std::string tomography_csv_header() { return "shots,trace_distance,seed"; }

std::string tomography_csv_row(const TomographyResult& result) {
  std::ostringstream out;
  out << result.shots << ',' << format_number(result.trace_distance) << ',' << result.seed;
  return out.str();
}

std::string format_number(double x) {
  if (!std::isfinite(x)) throw std::domain_error("refusing to emit a non-finite number");
  std::ostringstream out;
  out.precision(17);
  out << x;
  return out.str();
}

void require_finite(const json& j) {
  if (j.is_number_float() && !std::isfinite(j.get<double>())) {
    throw std::domain_error("refusing to emit a non-finite number");
  }
  if (j.is_structured()) {
    for (const auto& child : j) require_finite(child);
  }
}

json read_json_file(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open " + path.string());
  try {
    return json::parse(in);
  } catch (const json::parse_error& e) {
    throw std::invalid_argument("malformed JSON in " + path.string() + ": " + e.what());
  }
}

void write_text_file(const std::filesystem::path& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw std::runtime_error("cannot write " + path.string());
  out << text;
  if (!out) throw std::runtime_error("write failed for " + path.string());
}

}  // namespace sicsimplex::io
