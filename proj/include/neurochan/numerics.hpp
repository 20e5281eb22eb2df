#pragma once

// Small dense kernels shared by the rest of the library: matrix exponential,
// spectra, Hurwitz margins, controllability Gramians and rank/nullspace.

#include <algorithm>
#include <cmath>
#include <complex>
#include <string>
#include <vector>

#include <Eigen/Dense>
#include <Eigen/Eigenvalues>
#include <Eigen/SVD>

#include "neurochan/errors.hpp"

namespace neurochan {

using Matrix = Eigen::MatrixXd;
using Vector = Eigen::VectorXd;

/// Relative singular-value threshold used for every rank decision.
inline constexpr double kRankTolerance = 1e-9;

/// A matrix is treated as Hurwitz iff its spectral abscissa is below this.
inline constexpr double kHurwitzTolerance = -1e-9;

struct Spectrum {
  std::vector<std::complex<double>> eigenvalues;  // sorted by (real, imag)
  double max_real_part = 0.0;
};

namespace detail {

inline void require_square(const Matrix& M, const char* what) {
  if (M.rows() != M.cols()) {
    throw DimensionError(std::string(what) + ": matrix must be square, got " + std::to_string(M.rows()) + "x" +
                         std::to_string(M.cols()));
  }
}

inline void require_finite(const Matrix& M, const char* what) {
  if (!M.allFinite()) throw DomainError(std::string(what) + ": matrix has non-finite entries");
}

// Pade(13,13) coefficients for exp, Higham (2005).
inline constexpr double kPade13[] = {64764752532480000.0,
                                     32382376266240000.0,
                                     7771770303897600.0,
                                     1187353796428800.0,
                                     129060195264000.0,
                                     10559470521600.0,
                                     670442572800.0,
                                     33522128640.0,
                                     1323241920.0,
                                     40840800.0,
                                     960960.0,
                                     16380.0,
                                     182.0,
                                     1.0};

}  // namespace detail

/// exp(M t) by scaling and squaring with a degree-13 Pade approximant.
inline Matrix mat_exp(const Matrix& M, double t = 1.0) {
  detail::require_square(M, "mat_exp");
  detail::require_finite(M, "mat_exp");
  const Eigen::Index n = M.rows();
  if (n == 0) return Matrix(0, 0);

  Matrix X = M * t;
  const double norm1 = X.cwiseAbs().colwise().sum().maxCoeff();
  constexpr double theta13 = 5.371920351148152;
  int squarings = 0;
  if (norm1 > theta13) {
    squarings = static_cast<int>(std::ceil(std::log2(norm1 / theta13)));
    X /= std::ldexp(1.0, squarings);
  }

  const auto& b = detail::kPade13;
  const Matrix I = Matrix::Identity(n, n);
  const Matrix X2 = X * X;
  const Matrix X4 = X2 * X2;
  const Matrix X6 = X4 * X2;
  const Matrix U =
      X * (X6 * (b[13] * X6 + b[11] * X4 + b[9] * X2) + b[7] * X6 + b[5] * X4 + b[3] * X2 + b[1] * I);
  const Matrix V = X6 * (b[12] * X6 + b[10] * X4 + b[8] * X2) + b[6] * X6 + b[4] * X4 + b[2] * X2 + b[0] * I;
  Matrix E = (V - U).partialPivLu().solve(V + U);
  for (int i = 0; i < squarings; ++i) E = E * E;
  return E;
}

inline Spectrum eigenvalues(const Matrix& M) {
  detail::require_square(M, "eigenvalues");
  detail::require_finite(M, "eigenvalues");
  Spectrum s;
  if (M.rows() == 0) return s;
  Eigen::EigenSolver<Matrix> solver(M, /*computeEigenvectors=*/false);
  if (solver.info() != Eigen::Success) throw Error("eigenvalues: QR iteration did not converge");
  const auto& ev = solver.eigenvalues();
  s.eigenvalues.assign(ev.data(), ev.data() + ev.size());
  std::sort(s.eigenvalues.begin(), s.eigenvalues.end(), [](const auto& a, const auto& b) {
    return a.real() != b.real() ? a.real() < b.real() : a.imag() < b.imag();
  });
  s.max_real_part = s.eigenvalues.back().real();
  for (const auto& z : s.eigenvalues) s.max_real_part = std::max(s.max_real_part, z.real());
  return s;
}

/// Spectral abscissa max Re(lambda). Compare against kHurwitzTolerance.
inline double hurwitz_margin(const Matrix& M) { return eigenvalues(M).max_real_part; }

inline bool is_hurwitz(const Matrix& M) { return hurwitz_margin(M) < kHurwitzTolerance; }

inline Vector singular_values(const Matrix& M) {
  if (M.size() == 0) return Vector(0);
  return Eigen::JacobiSVD<Matrix>(M).singularValues();
}

/// Rank with the shared relative threshold on singular values.
inline int numerical_rank(const Matrix& M) {
  const Vector sv = singular_values(M);
  if (sv.size() == 0 || sv(0) <= 0.0) return 0;
  const double tol = kRankTolerance * sv(0);
  return static_cast<int>((sv.array() > tol).count());
}

/// Kalman matrix [B, AB, ..., A^{n-1}B].
inline Matrix controllability_matrix(const Matrix& A, const Matrix& B) {
  detail::require_square(A, "controllability_matrix");
  if (A.rows() != B.rows()) throw DimensionError("controllability_matrix: A and B row counts differ");
  const Eigen::Index n = A.rows();
  const Eigen::Index m = B.cols();
  Matrix C(n, n * m);
  if (m == 0) return C;
  C.leftCols(m) = B;
  for (Eigen::Index i = 1; i < n; ++i) C.middleCols(i * m, m) = A * C.middleCols((i - 1) * m, m);
  return C;
}

inline int ctrb_rank(const Matrix& A, const Matrix& B) { return numerical_rank(controllability_matrix(A, B)); }

/// Orthonormal basis of the right nullspace of M.
inline std::vector<Vector> nullspace(const Matrix& M) {
  std::vector<Vector> basis;
  const Eigen::Index cols = M.cols();
  if (cols == 0) return basis;
  if (M.rows() == 0) {
    for (Eigen::Index j = 0; j < cols; ++j) basis.push_back(Vector::Unit(cols, j));
    return basis;
  }
  Eigen::JacobiSVD<Matrix> svd(M, Eigen::ComputeFullV);
  const Vector& sv = svd.singularValues();
  int rank = 0;
  if (sv.size() > 0 && sv(0) > 0.0) rank = static_cast<int>((sv.array() > kRankTolerance * sv(0)).count());
  for (Eigen::Index j = rank; j < cols; ++j) basis.push_back(svd.matrixV().col(j));
  return basis;
}

/// W = int_0^T e^{A(T-s)} Q e^{A^T(T-s)} ds via one exponential of the Van Loan block
/// [[-A, Q], [0, A^T]].
inline Matrix gramian_from_weight(const Matrix& A, const Matrix& Q, double T) {
  detail::require_square(A, "gramian");
  if (Q.rows() != A.rows() || Q.cols() != A.cols()) throw DimensionError("gramian: weight must be n x n");
  if (!(T > 0.0)) throw DomainError("gramian: horizon T must be positive");
  const Eigen::Index n = A.rows();
  Matrix block = Matrix::Zero(2 * n, 2 * n);
  block.topLeftCorner(n, n) = -A;
  block.topRightCorner(n, n) = Q;
  block.bottomRightCorner(n, n) = A.transpose();
  const Matrix E = mat_exp(block, T);
  Matrix W = E.bottomRightCorner(n, n).transpose() * E.topRightCorner(n, n);
  return 0.5 * (W + W.transpose());
}

/// Gramian of (A, B P) where P is the m x m channel projection.
inline Matrix gramian(const Matrix& A, const Matrix& B, const Matrix& P, double T) {
  if (B.rows() != A.rows() || P.rows() != B.cols() || P.cols() != B.cols()) {
    throw DimensionError("gramian: A, B, P dimensions do not conform");
  }
  return gramian_from_weight(A, B * P * B.transpose(), T);
}

inline double min_singular_value(const Matrix& M) {
  const Vector sv = singular_values(M);
  return sv.size() == 0 ? 0.0 : sv(sv.size() - 1);
}

}  // namespace neurochan
