#pragma once

#include <algorithm>
#include <complex>
#include <numbers>

#include <Eigen/Dense>

namespace zakframe {

using Complex = std::complex<double>;
using Vector = Eigen::VectorXcd;
using Matrix = Eigen::MatrixXcd;

namespace linalg {

inline Complex unit_root(long long numerator, long long denominator) {
  numerator = ((numerator % denominator) + denominator) % denominator;
  if ((4 * numerator) % denominator == 0) {
    switch ((4 * numerator) / denominator) {
      case 0: return {1.0, 0.0};
      case 1: return {0.0, 1.0};
      case 2: return {-1.0, 0.0};
      default: return {0.0, -1.0};
    }
  }
  const double angle = 2.0 * std::numbers::pi * static_cast<double>(numerator) /
                       static_cast<double>(denominator);
  return {std::cos(angle), std::sin(angle)};
}

inline Eigen::VectorXd singular_values(const Matrix& m) {
  if (m.size() == 0) return {};
  Eigen::JacobiSVD<Matrix> svd(m);
  return svd.singularValues();
}

/// Largest singular value, from a full SVD (deterministic, no power iteration).
inline double operator_norm(const Matrix& m) {
  if (m.size() == 0) return 0.0;
  return singular_values(m)(0);
}

/// Threshold below which singular values of `m` are treated as zero.
/// `scale` <= 0 means "relative to m's own largest singular value".
inline double rank_cutoff(const Eigen::VectorXd& sv, double rank_tol, double scale) {
  const double ref = scale > 0 ? scale : (sv.size() ? sv(0) : 0.0);
  return rank_tol * ref;
}

struct RangeBasis {
  Matrix basis;  // orthonormal columns spanning the numerical column space
  Eigen::Index rank = 0;
  Eigen::VectorXd singular_values;
};

inline RangeBasis range_basis(const Matrix& m, double rank_tol, double scale = 0.0) {
  RangeBasis out;
  if (m.size() == 0) {
    out.basis = Matrix(m.rows(), 0);
    return out;
  }
  Eigen::JacobiSVD<Matrix> svd(m, Eigen::ComputeThinU);
  out.singular_values = svd.singularValues();
  const double cut = rank_cutoff(out.singular_values, rank_tol, scale);
  Eigen::Index r = 0;
  while (r < out.singular_values.size() && out.singular_values(r) > cut && out.singular_values(r) > 0) ++r;
  out.rank = r;
  out.basis = svd.matrixU().leftCols(r);
  return out;
}

/// Moore-Penrose pseudo-inverse with the same rank rule as range_basis.
inline Matrix pseudo_inverse(const Matrix& m, double rank_tol, double scale = 0.0) {
  if (m.size() == 0) return Matrix::Zero(m.cols(), m.rows());
  Eigen::JacobiSVD<Matrix> svd(m, Eigen::ComputeThinU | Eigen::ComputeThinV);
  const Eigen::VectorXd& sv = svd.singularValues();
  const double cut = rank_cutoff(sv, rank_tol, scale);
  Eigen::VectorXd inv = Eigen::VectorXd::Zero(sv.size());
  for (Eigen::Index i = 0; i < sv.size(); ++i)
    if (sv(i) > cut && sv(i) > 0) inv(i) = 1.0 / sv(i);
  return svd.matrixV() * inv.cast<Complex>().asDiagonal() * svd.matrixU().adjoint();
}

/// Eigenvalues of a Hermitian matrix in ascending order.
inline Eigen::VectorXd hermitian_eigenvalues(const Matrix& h) {
  if (h.size() == 0) return {};
  Eigen::SelfAdjointEigenSolver<Matrix> es(h, Eigen::EigenvaluesOnly);
  return es.eigenvalues();
}

inline Matrix projector(const Matrix& orthonormal_columns) {
  return orthonormal_columns * orthonormal_columns.adjoint();
}

}  // namespace linalg
}  // namespace zakframe
