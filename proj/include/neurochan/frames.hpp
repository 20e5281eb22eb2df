#pragma once

// Unit-norm frames for the input matrix: evenly spaced circle frames and
// parametrically regular sphere frames built from generalized Euler angles.

#include <cmath>
#include <cstdint>
#include <numbers>
#include <random>
#include <vector>

#include "neurochan/numerics.hpp"

namespace neurochan {

/// n = 2 uses m directly; n >= 3 uses counts N_1..N_{n-1}, each > 2.
struct FrameSpec {
  int n = 2;
  int m = 0;
  std::vector<int> counts;

  void validate() const {
    if (n < 2) throw DomainError("FrameSpec: n must be at least 2");
    if (n == 2) {
      if (m <= 2) throw DomainError("FrameSpec: circle frames need m > 2");
      return;
    }
    if (static_cast<int>(counts.size()) != n - 1) throw DimensionError("FrameSpec: need n - 1 angle counts");
    for (int c : counts) {
      if (c <= 2) throw DomainError("FrameSpec: every angle count must exceed 2");
    }
  }

  /// (N_1 + 1) N_2 ... N_{n-1} for n >= 3.
  int columns() const {
    if (n == 2) return m;
    int cols = counts[0] + 1;
    for (std::size_t k = 1; k < counts.size(); ++k) cols *= counts[k];
    return cols;
  }

  /// (N_1 + 2)/2 N_2 ... N_{n-1} for n >= 3, m/2 for n = 2.
  double predicted_max_eigenvalue() const {
    if (n == 2) return m / 2.0;
    double v = (counts[0] + 2) / 2.0;
    for (std::size_t k = 1; k < counts.size(); ++k) v *= counts[k];
    return v;
  }
};

/// Columns (cos 2k pi/m, sin 2k pi/m), k = 1..m. B B^T = (m/2) I.
inline Matrix circle_frame(int m) {
  if (m <= 2) throw DomainError("circle_frame: need m > 2");
  Matrix B(2, m);
  for (int k = 1; k <= m; ++k) {
    const double th = 2.0 * std::numbers::pi * k / m;
    B(0, k - 1) = std::cos(th);
    B(1, k - 1) = std::sin(th);
  }
  return B;
}

/// Circle frame with each angle perturbed uniformly by at most max_jitter radians.
inline Matrix jittered_circle_frame(int m, double max_jitter, std::uint64_t seed) {
  if (m <= 2) throw DomainError("jittered_circle_frame: need m > 2");
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> jitter(-max_jitter, max_jitter);
  Matrix B(2, m);
  for (int k = 1; k <= m; ++k) {
    const double th = 2.0 * std::numbers::pi * k / m + jitter(rng);
    B(0, k - 1) = std::cos(th);
    B(1, k - 1) = std::sin(th);
  }
  return B;
}

/// Point on S^{n-1} from angles theta_1..theta_{n-1}:
///   x_1 = sin t1 ... sin t_{n-1},  x_k = sin t1 ... sin t_{n-k} cos t_{n-k+1} (k >= 2),  x_n = cos t1.
inline Vector sphere_point(const std::vector<double>& theta) {
  const int n = static_cast<int>(theta.size()) + 1;
  Vector x(n);
  double sin_prod = 1.0;
  for (double t : theta) sin_prod *= std::sin(t);
  x(0) = sin_prod;
  for (int k = 2; k <= n; ++k) {
    double p = 1.0;
    for (int j = 0; j < n - k; ++j) p *= std::sin(theta[static_cast<std::size_t>(j)]);
    x(k - 1) = p * std::cos(theta[static_cast<std::size_t>(n - k)]);
  }
  return x;
}

/// Parametrically regular frame: theta_1 = j pi / N_1 (j = 0..N_1) and
/// theta_k = 2 j pi / N_k (j = 1..N_k). Pole columns repeat and are kept.
inline Matrix sphere_frame(const FrameSpec& spec) {
  spec.validate();
  if (spec.n < 3) throw DomainError("sphere_frame: need n >= 3 (use circle_frame for n = 2)");
  const int n = spec.n;
  Matrix B(n, spec.columns());
  std::vector<int> j(static_cast<std::size_t>(n - 1), 0);
  for (std::size_t k = 1; k < j.size(); ++k) j[k] = 1;
  std::vector<double> theta(static_cast<std::size_t>(n - 1));
  for (int col = 0; col < B.cols(); ++col) {
    theta[0] = std::numbers::pi * j[0] / spec.counts[0];
    for (std::size_t k = 1; k < j.size(); ++k) theta[k] = 2.0 * std::numbers::pi * j[k] / spec.counts[k];
    B.col(col) = sphere_point(theta);
    // odometer over (j_1 in 0..N_1, j_k in 1..N_k), last angle fastest
    for (int k = n - 2; k >= 0; --k) {
      auto idx = static_cast<std::size_t>(k);
      const int hi = spec.counts[idx];
      if (j[idx] < hi) {
        ++j[idx];
        break;
      }
      j[idx] = k == 0 ? 0 : 1;
    }
  }
  return B;
}

/// Eigenvalues of B B^T, descending.
inline Vector frame_spectrum(const Matrix& B) {
  Eigen::SelfAdjointEigenSolver<Matrix> es(B * B.transpose(), Eigen::EigenvaluesOnly);
  return es.eigenvalues().reverse();
}

}  // namespace neurochan
