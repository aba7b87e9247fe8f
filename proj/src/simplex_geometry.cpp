#include "sicsimplex/simplex_geometry.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

namespace sicsimplex {

SimplexFrame SimplexFrame::regular(int n) {
  if (n < 1) {
    throw std::invalid_argument("simplex dimension must be >= 1, got " + std::to_string(n));
  }
  const RealMatrix gram = (n + 1.0) * RealMatrix::Identity(n, n) - RealMatrix::Ones(n, n);
  Eigen::LLT<RealMatrix> llt(gram);
  if (llt.info() != Eigen::Success) {
    throw std::runtime_error("simplex Gram matrix is not positive definite");
  }
  RealMatrix vertices(n + 1, n);
  vertices.topRows(n) = llt.matrixL();
  vertices.row(n) = -vertices.topRows(n).colwise().sum();
  return SimplexFrame(std::move(vertices));
}

SimplexFrame SimplexFrame::from_vertices(const std::vector<RealVector>& vertices, double tol) {
  if (vertices.size() < 2) {
    throw std::invalid_argument("a simplex frame needs at least two vertices");
  }
  const int n = static_cast<int>(vertices.size()) - 1;
  RealMatrix m(n + 1, n);
  for (int i = 0; i <= n; ++i) {
    if (vertices[i].size() != n) {
      throw std::invalid_argument("vertex " + std::to_string(i) + " has length " +
                                  std::to_string(vertices[i].size()) + ", expected " +
                                  std::to_string(n));
    }
    m.row(i) = vertices[i].transpose();
  }
  SimplexFrame frame(std::move(m));
  const double err = frame.gram_error();
  if (!(err <= tol)) {
    throw std::invalid_argument("vertices do not form a regular simplex frame (Gram error " +
                                std::to_string(err) + ")");
  }
  return frame;
}

double SimplexFrame::gram_error() const {
  const int count = vertex_count();
  const RealMatrix expected =
      static_cast<double>(count) * RealMatrix::Identity(count, count) - RealMatrix::Ones(count, count);
  return max_abs(RealMatrix(gram() - expected));
}

SimplexFrame build_simplex_frame(int n) { return SimplexFrame::regular(n); }

ProbabilityDistribution::ProbabilityDistribution(RealVector p, double tol) : p_(std::move(p)) {
  if (p_.size() < 1) throw std::invalid_argument("empty probability vector");
  if (!p_.allFinite()) throw std::invalid_argument("probability vector has non-finite entries");
  if (p_.minCoeff() < -tol || p_.maxCoeff() > 1.0 + tol) {
    throw std::invalid_argument("probability entries outside [0, 1]");
  }
  if (std::abs(p_.sum() - 1.0) > tol) {
    throw std::invalid_argument("probabilities sum to " + std::to_string(p_.sum()));
  }
}

ProbabilityDistribution ProbabilityDistribution::uniform(int outcomes) {
  if (outcomes < 1) throw std::invalid_argument("need at least one outcome");
  return ProbabilityDistribution(RealVector::Constant(outcomes, 1.0 / outcomes));
}

SimplexPoint to_point(const ProbabilityDistribution& p, const SimplexFrame& frame) {
  if (p.size() != frame.vertex_count()) {
    throw std::invalid_argument("distribution has " + std::to_string(p.size()) +
                                " outcomes, frame has " + std::to_string(frame.vertex_count()) +
                                " vertices");
  }
  return SimplexPoint{frame.vertices().transpose() * p.values()};
}

std::optional<ProbabilityDistribution> RecoveredProbabilities::distribution() const {
  if (!inside) return std::nullopt;
  return ProbabilityDistribution(p);
}

RecoveredProbabilities to_probabilities(const SimplexPoint& s, const SimplexFrame& frame) {
  if (s.n() != frame.n()) {
    throw std::invalid_argument("point has dimension " + std::to_string(s.n()) + ", frame has " +
                                std::to_string(frame.n()));
  }
  RecoveredProbabilities out;
  out.p = (frame.vertices() * s.coords).array() + 1.0;
  out.p /= static_cast<double>(frame.vertex_count());
  out.inside = out.p.allFinite() && out.p.minCoeff() >= -kProbabilityTol &&
               out.p.maxCoeff() <= 1.0 + kProbabilityTol;
  return out;
}

double facet_distance(int n, int m) {
  if (n < 1 || m < 0 || m > n) {
    throw std::invalid_argument("facet dimension " + std::to_string(m) + " out of range for n = " +
                                std::to_string(n));
  }
  return std::sqrt(static_cast<double>(n - m) / (m + 1));
}

double outer_radius(int n) { return facet_distance(n, 0); }
double inner_radius(int n) { return facet_distance(n, n - 1); }

double sum_p_squared(const SimplexPoint& s) {
  return (s.coords.squaredNorm() + 1.0) / (s.n() + 1.0);
}

}  // namespace sicsimplex
