#pragma once

#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "sicsimplex/bloch.hpp"
#include "sicsimplex/sic_povm.hpp"
#include "sicsimplex/simplex_geometry.hpp"
#include "sicsimplex/state_simplex.hpp"
#include "sicsimplex/su_basis.hpp"

namespace sicsimplex::io {

using json = nlohmann::json;

/// Complex numbers are [re, im] pairs; matrices are arrays of rows.
json complex_matrix_to_json(const ComplexMatrix& m);
ComplexMatrix complex_matrix_from_json(const json& j);
json complex_vector_to_json(const ComplexVector& v);
ComplexVector complex_vector_from_json(const json& j);
json real_vector_to_json(const RealVector& v);
RealVector real_vector_from_json(const json& j);

/// Array of d x d matrices.
json basis_to_json(const SuBasis& basis);

/// { "n": int, "vertices": [[...], ...] }
json frame_to_json(const SimplexFrame& frame);
SimplexFrame frame_from_json(const json& j);

/// The four interchangeable descriptions of a state a file may carry.
enum class StateKind { kRho, kBloch, kProbabilities, kPoint };

std::string to_string(StateKind kind);
StateKind state_kind_from_string(const std::string& s);

/// { "d": int, <key>: payload } with key one of rho, bloch, probabilities,
/// point. Exactly one key must be present.
struct StateFile {
  int d = 0;
  StateKind kind = StateKind::kRho;
  ComplexMatrix rho;
  RealVector values;
};

json state_to_json(const StateFile& state);
StateFile state_from_json(const json& j);

/// { "d", "psi", "residual", "seed", "config": {...}, "source" }
json fiducial_to_json(const Fiducial& fid);
/// The residual of the result is the larger of the stored value and the one
/// recomputed from psi.
Fiducial fiducial_from_json(const json& j);

/// Fiducials keyed by dimension, persisted as a JSON array of fiducial
/// entries. A file holding a single entry object is also accepted.
class FiducialCatalog {
 public:
  static FiducialCatalog load(const std::filesystem::path& path);
  /// Empty catalog when the file does not exist.
  static FiducialCatalog load_or_empty(const std::filesystem::path& path);
  void save(const std::filesystem::path& path) const;

  std::optional<Fiducial> find(int d) const;
  /// Replaces any entry of the same dimension with a higher residual.
  void insert(const Fiducial& fid);
  const std::vector<Fiducial>& entries() const { return entries_; }

 private:
  std::vector<Fiducial> entries_;
};

/// $SIC_SIMPLEX_CATALOG, or "sic_catalog.json" in the working directory.
std::filesystem::path default_catalog_path();

struct ReportRow {
  GeometryReport geometry;
  std::optional<double> max_theorem_deviation;
};

json report_to_json(const ReportRow& row);
/// Header: d,R_out,R_in,R_pure,m_pure,sum_p2_pure,max_theorem_deviation.
/// The last cell is empty when no theorem sweep was run.
std::string report_csv_header();
std::string report_csv_row(const ReportRow& row);

/// Header: shots,trace_distance,seed.
std::string tomography_csv_header();
std::string tomography_csv_row(const TomographyResult& result);

/// Formats with 17 significant digits; throws on NaN or infinity.
std::string format_number(double x);

/// Throws std::domain_error if any number in `j` is NaN or infinite.
void require_finite(const json& j);

json read_json_file(const std::filesystem::path& path);
void write_text_file(const std::filesystem::path& path, const std::string& text);

}  // namespace sicsimplex::io
