#pragma once

#include <cmath>
#include <string>
#include <vector>

#include "neurochan/numerics.hpp"

namespace neurochan {

/// Linear plant dx/dt = A x + B u with more input channels than states.
class Plant {
 public:
  /// Validates m > n, finite entries and rank(B) = n.
  static Plant make(Matrix A, Matrix B) {
    detail::require_square(A, "Plant");
    detail::require_finite(A, "Plant");
    detail::require_finite(B, "Plant");
    if (B.rows() != A.rows()) throw DimensionError("Plant: B must have as many rows as A");
    if (B.cols() <= B.rows()) {
      throw DimensionError("Plant: need more input channels than states (m > n), got n=" +
                           std::to_string(B.rows()) + " m=" + std::to_string(B.cols()));
    }
    if (numerical_rank(B) != B.rows()) throw RankError("Plant: B must have full row rank n");
    return Plant(std::move(A), std::move(B));
  }

  const Matrix& A() const { return a_; }
  const Matrix& B() const { return b_; }
  int n() const { return static_cast<int>(a_.rows()); }
  int m() const { return static_cast<int>(b_.cols()); }

  /// True when every n x n column submatrix of B has |det| > tol. Only checked for m <= 10.
  bool minors_nonzero(double tol = 1e-9) const {
    if (m() > 10) throw CapacityError("Plant::minors_nonzero: checked only for m <= 10");
    const int n_ = n();
    std::vector<int> idx(n_);
    for (int i = 0; i < n_; ++i) idx[i] = i;
    while (true) {
      Matrix sub(n_, n_);
      for (int j = 0; j < n_; ++j) sub.col(j) = b_.col(idx[j]);
      if (std::abs(sub.determinant()) <= tol) return false;
      int i = n_ - 1;
      while (i >= 0 && idx[i] == m() - n_ + i) --i;
      if (i < 0) return true;
      ++idx[i];
      for (int j = i + 1; j < n_; ++j) idx[j] = idx[j - 1] + 1;
    }
  }

 private:
  Plant(Matrix A, Matrix B) : a_(std::move(A)), b_(std::move(B)) {}

  Matrix a_;
  Matrix b_;
};

}  // namespace neurochan
