#pragma once

#include <optional>
#include <vector>

#include "sicsimplex/linalg.hpp"

namespace sicsimplex {

/// Tolerance on the [0, 1] bounds and on the unit sum of a probability vector.
inline constexpr double kProbabilityTol = 1e-12;

/// Vertices t_1..t_{n+1} of a regular simplex in R^n, origin-centred and scaled
/// so that t_i . t_j = (n + 1) delta_ij - 1.
class SimplexFrame {
 public:
  /// Deterministic frame: rows of the Cholesky factor of the n x n Gram
  /// matrix give t_1..t_n, and t_{n+1} = -(t_1 + ... + t_n).
  static SimplexFrame regular(int n);

  /// Adopts externally supplied vertices; throws if their Gram matrix differs
  /// from (n + 1) I - J by more than `tol` in any entry.
  static SimplexFrame from_vertices(const std::vector<RealVector>& vertices, double tol = 1e-10);

  int n() const { return static_cast<int>(vertices_.cols()); }
  int vertex_count() const { return static_cast<int>(vertices_.rows()); }
  RealVector vertex(int i) const { return vertices_.row(i).transpose(); }
  /// (n + 1) x n, one vertex per row.
  const RealMatrix& vertices() const { return vertices_; }

  RealMatrix gram() const { return vertices_ * vertices_.transpose(); }
  /// max |t_i . t_j - ((n + 1) delta_ij - 1)|
  double gram_error() const;

 private:
  explicit SimplexFrame(RealMatrix vertices) : vertices_(std::move(vertices)) {}
  RealMatrix vertices_;
};

SimplexFrame build_simplex_frame(int n);

/// A point of the probability simplex P_{n+1}.
class ProbabilityDistribution {
 public:
  /// Throws std::invalid_argument unless every entry is in [0, 1] and the
  /// entries sum to one, both within `tol`.
  explicit ProbabilityDistribution(RealVector p, double tol = kProbabilityTol);

  static ProbabilityDistribution uniform(int outcomes);

  int size() const { return static_cast<int>(p_.size()); }
  double operator[](int i) const { return p_[i]; }
  const RealVector& values() const { return p_; }

  double sum_of_squares() const { return p_.squaredNorm(); }

 private:
  RealVector p_;
};

struct SimplexPoint {
  RealVector coords;

  int n() const { return static_cast<int>(coords.size()); }
};

/// f: p -> s = sum_i p_i t_i
SimplexPoint to_point(const ProbabilityDistribution& p, const SimplexFrame& frame);

/// Result of f^-1. `inside` is false when some p_i leaves [0, 1] by more
/// than kProbabilityTol, i.e. the point lies outside the simplex.
struct RecoveredProbabilities {
  RealVector p;
  bool inside = false;

  double min() const { return p.minCoeff(); }
  double max() const { return p.maxCoeff(); }
  /// The validated distribution, or nothing when the point is outside.
  std::optional<ProbabilityDistribution> distribution() const;
};

/// f^-1: s -> p_i = (s . t_i + 1) / (n + 1). Never throws for points outside
/// the simplex; they are flagged instead.
RecoveredProbabilities to_probabilities(const SimplexPoint& s, const SimplexFrame& frame);

/// Distance from the centre to every m-facet, sqrt((n - m) / (m + 1)).
double facet_distance(int n, int m);

/// Radius of the smallest origin-centred sphere containing the simplex, sqrt(n).
double outer_radius(int n);
/// Radius of the largest origin-centred sphere inside the simplex, 1 / sqrt(n).
double inner_radius(int n);

/// sum_i p_i^2 = (|s|^2 + 1) / (n + 1), evaluated from s alone.
double sum_p_squared(const SimplexPoint& s);

}  // namespace sicsimplex
