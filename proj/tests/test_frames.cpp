#include <gtest/gtest.h>

#include <numbers>

#include "test_support.hpp"

namespace neurochan {
namespace {

double off_diagonal_max(const Matrix& M) {
  Matrix off = M;
  off.diagonal().setZero();
  return off.cwiseAbs().maxCoeff();
}

TEST(CircleFrame, TightForSeveralSizes) {
  for (int m : {3, 4, 5, 7, 12, 360}) {
    const Matrix B = circle_frame(m);
    const Matrix G = B * B.transpose();
    EXPECT_LT(off_diagonal_max(G), 1e-12 * m);
    EXPECT_NEAR(G(0, 0), m / 2.0, 1e-12 * m);
    EXPECT_NEAR(G(1, 1), m / 2.0, 1e-12 * m);
    EXPECT_NEAR(frame_spectrum(B)(0), m / 2.0, 1e-9);
    EXPECT_LT((B.colwise().norm().array() - 1.0).abs().maxCoeff(), 1e-15);
  }
}

TEST(CircleFrame, FirstColumns) {
  const Matrix B = circle_frame(4);
  // k = 1..m: the first column is at angle pi/2, the last at 2 pi.
  EXPECT_NEAR(B(0, 0), 0.0, 1e-15);
  EXPECT_NEAR(B(1, 0), 1.0, 1e-15);
  EXPECT_NEAR(B(0, 3), 1.0, 1e-15);
  EXPECT_THROW(circle_frame(2), DomainError);
}

TEST(SpherePoint, UnitNormAndPoles) {
  const Vector north = sphere_point({0.0, 1.234});
  EXPECT_NEAR(north(2), 1.0, 1e-15);
  EXPECT_NEAR(north.head(2).norm(), 0.0, 1e-15);
  const double t1 = 0.7, t2 = 2.1, t3 = 4.0;
  const Vector x = sphere_point({t1, t2, t3});
  EXPECT_NEAR(x.norm(), 1.0, 1e-15);
  EXPECT_NEAR(x(0), std::sin(t1) * std::sin(t2) * std::sin(t3), 1e-15);
  EXPECT_NEAR(x(1), std::sin(t1) * std::sin(t2) * std::cos(t3), 1e-15);
  EXPECT_NEAR(x(2), std::sin(t1) * std::cos(t2), 1e-15);
  EXPECT_NEAR(x(3), std::cos(t1), 1e-15);
}

TEST(SphereFrame, FourByFour) {
  const FrameSpec spec{3, 0, {4, 4}};
  const Matrix B = sphere_frame(spec);
  ASSERT_EQ(B.cols(), 20);
  Matrix expected = Matrix::Zero(3, 3);
  expected.diagonal() << 4, 4, 12;
  EXPECT_LT((B * B.transpose() - expected).norm(), 1e-9);
  EXPECT_NEAR(frame_spectrum(B)(0), 12.0, 1e-9);
  EXPECT_DOUBLE_EQ(spec.predicted_max_eigenvalue(), 12.0);
}

TEST(SphereFrame, FormulaMatchesConstruction) {
  const std::vector<std::vector<int>> cases = {{3, 4}, {4, 4}, {5, 3}, {6, 7}, {4, 4, 4}, {3, 5, 4}, {4, 3, 3, 5}};
  for (const auto& counts : cases) {
    const FrameSpec spec{static_cast<int>(counts.size()) + 1, 0, counts};
    const Matrix B = sphere_frame(spec);
    EXPECT_EQ(B.cols(), spec.columns());
    EXPECT_LT((B.colwise().norm().array() - 1.0).abs().maxCoeff(), 1e-12);
    const Matrix G = B * B.transpose();
    EXPECT_LT(off_diagonal_max(G), 1e-9);
    EXPECT_NEAR(G.diagonal().maxCoeff(), spec.predicted_max_eigenvalue(), 1e-9);
    // Diagonal sums to the column count because every column is a unit vector.
    EXPECT_NEAR(G.trace(), spec.columns(), 1e-9);
  }
  EXPECT_EQ((FrameSpec{4, 0, {4, 4, 4}}.columns()), 80);
  EXPECT_DOUBLE_EQ((FrameSpec{4, 0, {4, 4, 4}}.predicted_max_eigenvalue()), 48.0);
  EXPECT_DOUBLE_EQ((FrameSpec{3, 0, {3, 4}}.predicted_max_eigenvalue()), 10.0);
}

TEST(SphereFrame, PoleColumnsRepeat) {
  const Matrix B = sphere_frame(FrameSpec{3, 0, {4, 4}});
  // theta_1 = 0 is the first block of N_2 columns.
  for (int c = 0; c < 4; ++c) EXPECT_LT((B.col(c) - Vector{{0.0, 0.0, 1.0}}).norm(), 1e-15);
}

TEST(SphereFrame, Validation) {
  EXPECT_THROW(sphere_frame(FrameSpec{3, 0, {2, 4}}), DomainError);
  EXPECT_THROW(sphere_frame(FrameSpec{3, 0, {4}}), DimensionError);
  EXPECT_THROW(sphere_frame(FrameSpec{2, 5, {}}), DomainError);
  EXPECT_THROW((FrameSpec{1, 3, {}}.validate()), DomainError);
  EXPECT_THROW((FrameSpec{2, 2, {}}.validate()), DomainError);
}

TEST(JitteredFrame, SpectralRadiusNearPrediction) {
  for (int m : {8, 20, 50, 200}) {
    for (std::uint64_t seed = 0; seed < 10; ++seed) {
      const Matrix B = jittered_circle_frame(m, 0.5 / m, seed);
      EXPECT_NEAR(frame_spectrum(B)(0), m / 2.0, 0.1 * m / 2.0);
    }
  }
  EXPECT_EQ(jittered_circle_frame(10, 0.0, 1), circle_frame(10));
}

TEST(FrameSpectrum, Descending) {
  const Vector s = frame_spectrum(sphere_frame(FrameSpec{3, 0, {4, 4}}));
  EXPECT_NEAR(s(0), 12.0, 1e-9);
  EXPECT_NEAR(s(1), 4.0, 1e-9);
  EXPECT_NEAR(s(2), 4.0, 1e-9);
}

}  // namespace
}  // namespace neurochan
