#pragma once

// Lifted parameters: solutions Ahat (m x n) of B * Ahat = A, the nullspace
// family around a particular solution, and lifts that vanish on dropped
// channels (P_I * Ahat = Ahat).

#include <string>
#include <vector>

#include "neurochan/io.hpp"
#include "neurochan/lattice.hpp"
#include "neurochan/numerics.hpp"
#include "neurochan/plant.hpp"

namespace neurochan {

/// particular + span(basis) is the full solution set of B * X = A.
struct LiftFamily {
  Matrix particular;
  std::vector<Matrix> basis;
  int dim = 0;

  /// particular + sum_i coeffs[i] * basis[i]
  Matrix member(const Vector& coeffs) const {
    if (coeffs.size() != dim) throw DimensionError("LiftFamily::member: coefficient count differs from dim");
    Matrix X = particular;
    for (int i = 0; i < dim; ++i) X += coeffs(i) * basis[static_cast<std::size_t>(i)];
    return X;
  }

  io::json to_json() const {
    io::json j;
    j["particular"] = io::to_json(particular);
    j["basis"] = io::json::array();
    for (const auto& N : basis) j["basis"].push_back(io::to_json(N));
    j["dim"] = dim;
    return j;
  }

  static LiftFamily from_json(const io::json& j) {
    LiftFamily f;
    f.particular = io::matrix_from_json(j.at("particular"), "particular");
    for (const auto& N : j.at("basis")) f.basis.push_back(io::matrix_from_json(N, "basis"));
    f.dim = j.at("dim").get<int>();
    if (f.dim != static_cast<int>(f.basis.size())) throw DimensionError("LiftFamily: dim differs from basis size");
    return f;
  }
};

/// Minimum-norm solution B^T (B B^T)^{-1} A.
inline Matrix lift_particular(const Plant& plant) {
  const Matrix& B = plant.B();
  const Matrix BBt = B * B.transpose();
  Eigen::LDLT<Matrix> ldlt(BBt);
  if (ldlt.info() != Eigen::Success || numerical_rank(BBt) != plant.n()) {
    throw RankError("lift_particular: B B^T is numerically singular");
  }
  return B.transpose() * ldlt.solve(plant.A());
}

/// Basis E_jk of the nullspace of X -> B X: nullspace vector n_j of B placed
/// in column k, zeros elsewhere. Ordered j-major.
inline LiftFamily lift_nullspace_basis(const Plant& plant) {
  LiftFamily f;
  f.particular = lift_particular(plant);
  const auto null_vectors = nullspace(plant.B());
  for (const Vector& nv : null_vectors) {
    for (int k = 0; k < plant.n(); ++k) {
      Matrix E = Matrix::Zero(plant.m(), plant.n());
      E.col(k) = nv;
      f.basis.push_back(std::move(E));
    }
  }
  f.dim = static_cast<int>(f.basis.size());
  return f;
}

/// The lift supported on the rows in I: those rows are B_I^T (B_I B_I^T)^{-1} A,
/// every other row is exactly zero. Throws InfeasibleError when rank(B P_I) < n.
inline Matrix lift_invariant(const Plant& plant, const ChannelSet& I) {
  if (I.m() != plant.m()) throw DimensionError("lift_invariant: channel set built for a different m");
  const Matrix BI = I.columns_of(plant.B());
  if (I.size() < plant.n() || numerical_rank(BI) != plant.n()) {
    throw InfeasibleError("lift_invariant: rank(B P_I) < n for I = " + I.to_string() +
                          ", no P_I-invariant lift exists");
  }
  const Matrix rows = BI.transpose() * (BI * BI.transpose()).ldlt().solve(plant.A());
  Matrix Ahat = Matrix::Zero(plant.m(), plant.n());
  for (int j = 0; j < I.size(); ++j) Ahat.row(I.indices()[static_cast<std::size_t>(j)] - 1) = rows.row(j);
  return Ahat;
}

/// Dimension n(m - n - k) of the lifts invariant under a projection dropping k channels.
inline int invariant_family_dim(const Plant& plant, int k) {
  const int slack = plant.m() - plant.n();
  if (k < 0 || k > slack) throw DomainError("invariant_family_dim: need 0 <= k <= m - n");
  return plant.n() * (slack - k);
}

inline double lift_residual(const Plant& plant, const Matrix& Ahat) {
  if (Ahat.rows() != plant.m() || Ahat.cols() != plant.n()) throw DimensionError("lift_residual: Ahat must be m x n");
  return (plant.B() * Ahat - plant.A()).norm();
}

}  // namespace neurochan
