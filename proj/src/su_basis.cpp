#include "sicsimplex/su_basis.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

namespace sicsimplex {

RealVector hermitian_eigenvalues(const ComplexMatrix& m) {
  Eigen::SelfAdjointEigenSolver<ComplexMatrix> solver(m, Eigen::EigenvaluesOnly);
  if (solver.info() != Eigen::Success) {
    throw std::runtime_error("hermitian eigensolver did not converge");
  }
  return solver.eigenvalues();
}

SuBasis::SuBasis(int d) : d_(d) {
  if (d < 2) {
    throw std::invalid_argument("su(d) basis needs d >= 2, got " + std::to_string(d));
  }
  const Complex i_unit(0.0, 1.0);
  matrices_.reserve(static_cast<std::size_t>(d) * d - 1);

  for (int j = 0; j < d; ++j) {
    for (int k = j + 1; k < d; ++k) {
      ComplexMatrix m = ComplexMatrix::Zero(d, d);
      m(j, k) = 1.0;
      m(k, j) = 1.0;
      matrices_.push_back(std::move(m));
    }
  }
  for (int j = 0; j < d; ++j) {
    for (int k = j + 1; k < d; ++k) {
      ComplexMatrix m = ComplexMatrix::Zero(d, d);
      m(j, k) = -i_unit;
      m(k, j) = i_unit;
      matrices_.push_back(std::move(m));
    }
  }
  for (int l = 1; l < d; ++l) {
    const double scale = std::sqrt(2.0 / (l * (l + 1.0)));
    ComplexMatrix m = ComplexMatrix::Zero(d, d);
    for (int k = 0; k < l; ++k) m(k, k) = scale;
    m(l, l) = -scale * l;
    matrices_.push_back(std::move(m));
  }
}

ComplexMatrix SuBasis::combine(const RealVector& coeffs) const {
  if (coeffs.size() != size()) {
    throw std::invalid_argument("coefficient vector has length " + std::to_string(coeffs.size()) +
                                ", expected " + std::to_string(size()));
  }
  ComplexMatrix out = ComplexMatrix::Zero(d_, d_);
  for (int a = 0; a < size(); ++a) out += coeffs[a] * matrices_[a];
  return out;
}

RealVector SuBasis::expand(const ComplexMatrix& h) const {
  if (h.rows() != d_ || h.cols() != d_) {
    throw std::invalid_argument("matrix dimension does not match basis");
  }
  RealVector out(size());
  for (int a = 0; a < size(); ++a) {
    // Tr(H s_a) = sum_ij H_ij (s_a)_ji
    out[a] = 0.5 * (h.transpose().cwiseProduct(matrices_[a])).sum().real();
  }
  return out;
}

SuBasis build_su_basis(int d) { return SuBasis(d); }

StructureConstants structure_constants(const SuBasis& basis) {
  const int n = basis.size();
  StructureConstants sc{basis.dim(), Tensor3(n), Tensor3(n)};
  for (int a = 0; a < n; ++a) {
    for (int b = 0; b < n; ++b) {
      const ComplexMatrix ab = basis[a] * basis[b];
      for (int c = 0; c < n; ++c) {
        const Complex tr = ab.transpose().cwiseProduct(basis[c]).sum();
        sc.dsym(a, b, c) = 0.5 * tr.real();
        sc.f(a, b, c) = 0.5 * tr.imag();
      }
    }
  }
  return sc;
}

RealVector star_product(const RealVector& r1, const RealVector& r2, const StructureConstants& sc) {
  const int n = sc.size();
  if (r1.size() != n || r2.size() != n) {
    throw std::invalid_argument("star product operands must have length " + std::to_string(n));
  }
  RealVector out = RealVector::Zero(n);
  for (int a = 0; a < n; ++a) {
    if (r1[a] == 0.0) continue;
    for (int b = 0; b < n; ++b) {
      const double w = r1[a] * r2[b];
      for (int c = 0; c < n; ++c) out[c] += sc.dsym(a, b, c) * w;
    }
  }
  return out;
}

}  // namespace sicsimplex
