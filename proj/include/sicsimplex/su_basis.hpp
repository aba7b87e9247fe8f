#pragma once

#include <vector>

#include "sicsimplex/linalg.hpp"

namespace sicsimplex {

/// Generalized Gell-Mann basis of su(d), normalized to Tr(s_a s_b) = 2 delta_ab.
///
/// Ordering: the d(d-1)/2 symmetric matrices E_jk + E_kj (j < k, lexicographic),
/// then the d(d-1)/2 antisymmetric matrices -i(E_jk - E_kj) in the same order,
/// then the d-1 diagonal matrices sqrt(2/(l(l+1))) (sum_{m<=l} E_mm - l E_{l+1,l+1}).
/// For d = 2 this is (sigma_x, sigma_y, sigma_z).
class SuBasis {
 public:
  explicit SuBasis(int d);

  int dim() const { return d_; }
  /// Number of generators, d^2 - 1.
  int size() const { return static_cast<int>(matrices_.size()); }

  const ComplexMatrix& operator[](int a) const { return matrices_[a]; }
  const std::vector<ComplexMatrix>& matrices() const { return matrices_; }

  /// sum_a c_a s_a
  ComplexMatrix combine(const RealVector& coeffs) const;

  /// Coefficients Tr(H s_a) / 2, so that H = combine(expand(H)) for traceless Hermitian H.
  RealVector expand(const ComplexMatrix& h) const;

 private:
  int d_;
  std::vector<ComplexMatrix> matrices_;
};

SuBasis build_su_basis(int d);

/// Dense real rank-3 array of extent n in every index.
class Tensor3 {
 public:
  Tensor3() = default;
  explicit Tensor3(int n) : n_(n), data_(static_cast<std::size_t>(n) * n * n, 0.0) {}

  int extent() const { return n_; }
  double& operator()(int a, int b, int c) { return data_[index(a, b, c)]; }
  double operator()(int a, int b, int c) const { return data_[index(a, b, c)]; }

 private:
  std::size_t index(int a, int b, int c) const {
    return (static_cast<std::size_t>(a) * n_ + b) * n_ + c;
  }

  int n_ = 0;
  std::vector<double> data_;
};

/// f_abc (totally antisymmetric) and d_abc (totally symmetric) defined by
/// Tr(s_a s_b s_c) = 2 d_abc + 2i f_abc.
struct StructureConstants {
  int d = 0;
  Tensor3 f;
  Tensor3 dsym;

  int size() const { return f.extent(); }
};

StructureConstants structure_constants(const SuBasis& basis);

/// (r1 * r2)_c = d_abc r1_a r2_b.
RealVector star_product(const RealVector& r1, const RealVector& r2, const StructureConstants& sc);

}  // namespace sicsimplex
