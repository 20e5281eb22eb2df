#pragma once

// Steady-state error under additive channel noise. With the perturbed offset
// equation (Ahat + K) x_g + v + n = 0, the limit x_inf satisfies
//   (A + BK) x_inf + B (v + n) = 0   and   (A + BK) x_g + B v = 0,
// hence x_inf - x_g = -(A + BK)^{-1} B n and
//   E||x_inf - x_g||^2 = tr[M B Sigma B^T M^T],  M = (A + BK)^{-1}.

#include <cmath>
#include <cstdint>
#include <random>

#include "neurochan/design.hpp"
#include "neurochan/numerics.hpp"
#include "neurochan/plant.hpp"

namespace neurochan {

/// Covariance of the per-channel offset perturbation (identity by default).
struct NoiseModel {
  Matrix sigma;

  static NoiseModel identity(int m) { return NoiseModel{Matrix::Identity(m, m)}; }

  void validate(int m) const {
    if (sigma.rows() != m || sigma.cols() != m) throw DimensionError("NoiseModel: sigma must be m x m");
    if ((sigma - sigma.transpose()).norm() > 1e-12 * (1.0 + sigma.norm())) {
      throw DomainError("NoiseModel: sigma must be symmetric");
    }
    if (m > 0) {
      Eigen::SelfAdjointEigenSolver<Matrix> es(sigma);
      if (es.eigenvalues().minCoeff() < -1e-12 * (1.0 + sigma.norm())) {
        throw DomainError("NoiseModel: sigma must be positive semidefinite");
      }
    }
  }

  /// Symmetric square root, used to draw N(0, sigma) samples.
  Matrix sqrt() const {
    Eigen::SelfAdjointEigenSolver<Matrix> es(sigma);
    const Vector root = es.eigenvalues().cwiseMax(0.0).cwiseSqrt();
    return es.eigenvectors() * root.asDiagonal() * es.eigenvectors().transpose();
  }
};

struct SteadyStateError {
  Matrix covariance;
  double mse = 0.0;
};

namespace detail {

inline Eigen::PartialPivLU<Matrix> closed_loop_lu(const Matrix& closed) {
  if (numerical_rank(closed) != closed.rows()) throw DomainError("steady_state_error: A + BK is singular");
  return closed.partialPivLu();
}

}  // namespace detail

inline SteadyStateError steady_state_error(const Matrix& A, const Matrix& B, const Matrix& K, const Matrix& sigma) {
  const Matrix closed = A + B * K;
  const auto lu = detail::closed_loop_lu(closed);
  const Matrix MB = lu.solve(B);
  SteadyStateError out;
  out.covariance = MB * sigma * MB.transpose();
  out.covariance = (0.5 * (out.covariance + out.covariance.transpose())).eval();
  out.mse = out.covariance.trace();
  return out;
}

inline SteadyStateError steady_state_error(const Plant& plant, const GainDesign& design, const NoiseModel& noise) {
  noise.validate(plant.m());
  return steady_state_error(plant.A(), plant.B(), design.K, noise.sigma);
}

struct ChannelAugmentation {
  double new_mse = 0.0;
  double old_mse = 0.0;
};

/// Appends channel b with gain row k = -alpha_eff b^T and zero offset, and compares the
/// unit-covariance steady-state errors before and after.
inline ChannelAugmentation augment_channel(const Plant& plant, const GainDesign& design, const Vector& b) {
  if (b.size() != plant.n()) throw DimensionError("augment_channel: b must have length n");
  const int m = plant.m();
  Matrix B_aug(plant.n(), m + 1);
  B_aug << plant.B(), b;
  Matrix K_aug(m + 1, plant.n());
  K_aug << design.K, -design.alpha_eff * b.transpose();
  ChannelAugmentation out;
  out.old_mse = steady_state_error(plant.A(), plant.B(), design.K, Matrix::Identity(m, m)).mse;
  out.new_mse = steady_state_error(plant.A(), B_aug, K_aug, Matrix::Identity(m + 1, m + 1)).mse;
  return out;
}

struct MonteCarloEstimate {
  double mse = 0.0;
  double standard_error = 0.0;
  std::size_t trials = 0;
};

/// Draws n ~ N(0, sigma), forms x_inf - x_g = -(A + BK)^{-1} B n and averages the squared norm.
inline MonteCarloEstimate monte_carlo_sse(const Plant& plant, const GainDesign& design, const NoiseModel& noise,
                                          std::size_t trials, std::uint64_t seed) {
  if (trials < 1000) throw DomainError("monte_carlo_sse: need at least 1000 trials");
  noise.validate(plant.m());
  const auto lu = detail::closed_loop_lu(plant.A() + plant.B() * design.K);
  const Matrix map = -lu.solve(plant.B()) * noise.sqrt();

  std::mt19937_64 rng(seed);
  std::normal_distribution<double> normal(0.0, 1.0);
  Vector z(plant.m());
  double sum = 0.0, sum_sq = 0.0;
  for (std::size_t t = 0; t < trials; ++t) {
    for (int i = 0; i < plant.m(); ++i) z(i) = normal(rng);
    const double e2 = (map * z).squaredNorm();
    sum += e2;
    sum_sq += e2 * e2;
  }
  const double n = static_cast<double>(trials);
  MonteCarloEstimate est;
  est.trials = trials;
  est.mse = sum / n;
  const double var = std::max(0.0, (sum_sq - n * est.mse * est.mse) / (n - 1.0));
  est.standard_error = std::sqrt(var / n);
  return est;
}

}  // namespace neurochan
