#include <gtest/gtest.h>

#include <complex>
#include <random>

#include "test_support.hpp"

namespace neurochan {
namespace {

using testing::example1_A;
using testing::example1_B;
using testing::example1_plant;
using testing::example3_Ahat;
using testing::random_plant;
using Complex = std::complex<double>;

// Roots of lambda^2 - tr lambda + det, sorted by (re, im).
std::vector<Complex> roots2(const Matrix& M) {
  const auto [tr, det] = testing::trace_det(M);
  const Complex disc = std::sqrt(Complex(tr * tr - 4.0 * det, 0.0));
  std::vector<Complex> r = {(tr - disc) / 2.0, (tr + disc) / 2.0};
  std::sort(r.begin(), r.end(), [](Complex a, Complex b) { return a.real() != b.real() ? a.real() < b.real() : a.imag() < b.imag(); });
  return r;
}

TEST(Alpha, Scaling) {
  EXPECT_EQ(effective_alpha(2.0, AlphaScaling::fixed, 2, 3), 2.0);
  EXPECT_DOUBLE_EQ(effective_alpha(3.0, AlphaScaling::inverse_m, 2, 6), 1.0);
  EXPECT_EQ(alpha_scaling_from_string("inverse_m"), AlphaScaling::inverse_m);
  EXPECT_EQ(to_string(AlphaScaling::fixed), "fixed");
  EXPECT_THROW(alpha_scaling_from_string("sqrt"), DomainError);
}

TEST(MakeGain, Example3) {
  const auto d = make_gain(example1_plant(), example3_Ahat(), 2.0);
  Matrix K(3, 2);
  K << 0, -2, -2, -1, -2, -2;
  EXPECT_EQ(d.K, K);
  Matrix closed(2, 2);
  closed << -4, -2, -2, -4;
  EXPECT_LT((example1_A() + example1_B() * d.K - closed).norm(), 1e-12);
  const auto s = eigenvalues(closed);
  EXPECT_NEAR(s.eigenvalues[0].real(), -6.0, 1e-12);
  EXPECT_NEAR(s.eigenvalues[1].real(), -2.0, 1e-12);
  EXPECT_EQ(d.v, Vector::Zero(3));
}

TEST(MakeGain, DriftFreeIsNegativeTranspose) {
  const Plant p = Plant::make(Matrix::Zero(2, 2), example1_B());
  const auto d = make_gain(p, Matrix::Zero(3, 2), 1.0);
  EXPECT_EQ(d.K, Matrix(-example1_B().transpose()));
  EXPECT_TRUE(is_hurwitz(p.B() * d.K));
}

TEST(MakeGain, OffsetMakesGoalAnEquilibrium) {
  Vector xg(2);
  xg << 1, 1;
  const auto d = make_gain(example1_plant(), example3_Ahat(), 2.0, xg);
  EXPECT_LT((d.v + (d.Ahat + d.K) * xg).norm(), 1e-12);
  EXPECT_LT(goal_equilibrium_check(example1_plant(), d, ChannelSet::full(3)), 1e-12);
}

TEST(MakeGain, Errors) {
  const Plant p = example1_plant();
  EXPECT_THROW(make_gain(p, Matrix::Zero(3, 2), 1.0), InvalidLiftError);
  EXPECT_THROW(make_gain(p, example3_Ahat(), 0.0), DomainError);
  EXPECT_THROW(make_gain(p, example3_Ahat(), 1.0, Vector::Zero(3)), DimensionError);
  EXPECT_THROW(make_gain(p, Matrix::Zero(2, 2), 1.0), DimensionError);
}

TEST(MakeGain, ClosedLoopIdentityOnRandomPlants) {
  std::mt19937_64 rng(41);
  std::uniform_real_distribution<double> alpha(0.1, 5.0);
  for (int trial = 0; trial < 200; ++trial) {
    const int n = 1 + trial % 3, m = n + 1 + trial % 3;
    const Plant p = random_plant(rng, n, m);
    const auto family = lift_nullspace_basis(p);
    const Matrix Ahat = family.member(testing::random_vector(rng, family.dim));
    const auto scaling = trial % 2 ? AlphaScaling::inverse_m : AlphaScaling::fixed;
    const auto d = make_gain(p, Ahat, alpha(rng), testing::random_vector(rng, n), scaling);
    const Matrix residual = p.A() + p.B() * d.K + d.alpha_eff * p.B() * p.B().transpose();
    EXPECT_LT(residual.norm(), 1e-9);
    EXPECT_LT(hurwitz_margin(p.A() + p.B() * d.K), 0.0);
    EXPECT_EQ(d.K, Matrix(-d.alpha_eff * p.B().transpose() - Ahat));
  }
}

TEST(Certify, Example3FlagsLeafRank) {
  const Plant p = example1_plant();
  const auto d = make_gain(p, example3_Ahat(), 2.0);
  const auto cert = certify_resilience(p, d, ChannelSet(3, {2}));
  EXPECT_FALSE(cert.all_pass.has_value());
  ASSERT_EQ(cert.verified.size(), 4u);
  EXPECT_EQ(cert.verified[0].set, ChannelSet(3, {2}));
  EXPECT_FALSE(cert.verified[0].rank_ok);
  EXPECT_FALSE(cert.verified[0].pass());
  for (std::size_t i = 1; i < 4; ++i) {
    EXPECT_TRUE(cert.verified[i].rank_ok);
    EXPECT_TRUE(cert.verified[i].pass()) << cert.verified[i].set.to_string();
  }
  ASSERT_FALSE(cert.diagnostics.empty());
  EXPECT_NE(cert.diagnostics.front().find("{2}"), std::string::npos);
}

TEST(Certify, FullSetSingleCheck) {
  const Plant p = example1_plant();
  const auto cert = certify_resilience(p, make_gain(p, lift_particular(p), 1.0), ChannelSet::full(3));
  ASSERT_EQ(cert.verified.size(), 1u);
  EXPECT_EQ(cert.all_pass, std::optional<bool>(true));
}

TEST(Certify, NonInvariantLiftIsFlagged) {
  const Plant p = example1_plant();
  const auto d = make_gain(p, lift_particular(p), 1.0);
  const auto cert = certify_resilience(p, d, ChannelSet(3, {1, 3}));
  EXPECT_FALSE(cert.all_pass.has_value());
  EXPECT_NE(cert.diagnostics.front().find("invariance"), std::string::npos);
  EXPECT_EQ(cert.verified.size(), 2u);
}

TEST(Certify, RandomTwoByFour) {
  std::mt19937_64 rng(42);
  for (int trial = 0; trial < 20; ++trial) {
    const Plant p = random_plant(rng, 2, 4);
    const ChannelSet I = testing::random_subset(rng, 4, 3);
    const auto d = make_gain(p, testing::random_invariant_lift(rng, p, I), 1.5);
    EXPECT_EQ(certify_resilience(p, d, I).all_pass, std::optional<bool>(true));
  }
}

TEST(Certify, EverySupersetIsStable) {
  std::mt19937_64 rng(43);
  std::uniform_real_distribution<double> alpha(0.05, 4.0);
  int checked = 0;
  for (int trial = 0; trial < 200; ++trial) {
    const int n = 1 + trial % 3;
    const int m = n + 1 + trial % (7 - n);
    const Plant p = random_plant(rng, n, m);
    const ChannelSet I = testing::random_subset(rng, m, n);
    const Matrix Ahat = testing::random_invariant_lift(rng, p, I);
    const auto d = make_gain(p, Ahat, alpha(rng), testing::random_vector(rng, n), AlphaScaling::inverse_m);
    const auto cert = certify_resilience(p, d, I);
    ASSERT_TRUE(cert.all_pass.has_value()) << cert.diagnostics.front();
    EXPECT_TRUE(*cert.all_pass);
    for (const auto& c : cert.verified) {
      EXPECT_TRUE(I.is_subset_of(c.set));
      EXPECT_LT(c.margin, -1e-9);
      // On every surviving set the closed loop collapses to -alpha_eff B P_L B^T.
      const Matrix BP = p.B() * c.set.projection();
      EXPECT_LT((closed_loop(p, d.K, c.set) + d.alpha_eff * BP * p.B().transpose()).norm(), 1e-9);
      EXPECT_LT(goal_equilibrium_check(p, d, c.set), 1e-9 * (1.0 + d.v.norm()));
      ++checked;
    }
  }
  EXPECT_GT(checked, 200);
}

TEST(Certify, CsvColumns) {
  const Plant p = example1_plant();
  const auto cert = certify_resilience(p, make_gain(p, example3_Ahat(), 2.0), ChannelSet(3, {2}));
  const std::string csv = cert.to_csv();
  EXPECT_EQ(csv.substr(0, csv.find('\n')), "subset,margin,pass");
  EXPECT_NE(csv.find("\n{2},"), std::string::npos);
  EXPECT_EQ(std::count(csv.begin(), csv.end(), '\n'), 5);
}

TEST(GoalEquilibrium, Example3WithGoal) {
  Vector xg(2);
  xg << 1, 1;
  const Plant p = example1_plant();
  const auto d = make_gain(p, example3_Ahat(), 2.0, xg);
  for (const auto& L : supersets_of(ChannelSet(3, {2}))) EXPECT_LT(goal_equilibrium_check(p, d, L), 1e-9);
  // Dropping channel 2, where the lift is nonzero, moves the equilibrium.
  EXPECT_GT(goal_equilibrium_check(p, d, ChannelSet(3, {1, 3})), 1e-3);
}

TEST(GoalEquilibrium, NonInvariantLiftCounterexample) {
  Vector xg(2);
  xg << 1, 1;
  const Plant p = example1_plant();
  const auto d = make_gain(p, lift_particular(p), 1.0, xg);
  for (const auto& L : enumerate_subsets(3, 2, 2)) EXPECT_GT(goal_equilibrium_check(p, d, L), 1e-3);
}

TEST(ProblemA, FirstReferenceGain) {
  const Plant p = example1_plant();
  const Matrix K = testing::example2_first_gain();
  for (const auto& I : enumerate_subsets(3, 2, 2)) {
    const auto r = roots2(closed_loop(p, K, I));
    for (const auto& z : r) EXPECT_LT(std::abs(z - Complex(-1.0, 0.0)), 1e-7) << I.to_string();
    // Repeated root: the characteristic polynomial is exactly (lambda + 1)^2.
    const auto [tr, det] = testing::trace_det(closed_loop(p, K, I));
    EXPECT_NEAR(tr, -2.0, 1e-12);
    EXPECT_NEAR(det, 1.0, 1e-12);
  }
  const auto full = roots2(closed_loop(p, K, ChannelSet::full(3)));
  EXPECT_LT(std::abs(full[0] - Complex(-1.5, -0.5)), 1e-12);
  EXPECT_LT(std::abs(full[1] - Complex(-1.5, 0.5)), 1e-12);

  const auto report = problem_a_scan(p, K, 2);
  ASSERT_EQ(report.records.size(), 4u);
  EXPECT_TRUE(report.failures().empty());
  EXPECT_EQ(report.summary.at(2).hurwitz, 3);
}

TEST(ProblemA, SecondReferenceGain) {
  const Plant p = example1_plant();
  const Matrix K = testing::example2_second_gain();
  const std::vector<std::pair<std::vector<int>, std::pair<double, double>>> expected = {
      {{1, 2}, {-3.95, -0.05}}, {{1, 3}, {-3.19, -0.31}}, {{2, 3}, {-1.0, -0.5}}, {{1, 2, 3}, {-4.57, 0.066}}};
  for (const auto& [idx, pair] : expected) {
    const auto r = roots2(closed_loop(p, K, ChannelSet(3, idx)));
    EXPECT_NEAR(r[0].real(), pair.first, 0.01);
    EXPECT_NEAR(r[1].real(), pair.second, 0.01);
    EXPECT_EQ(r[0].imag(), 0.0);
  }
  const auto failures = problem_a_scan(p, K, 2).failures();
  ASSERT_EQ(failures.size(), 1u);
  EXPECT_EQ(failures[0], ChannelSet::full(3));
}

TEST(ProblemA, NegativeTransposeOnDriftFree) {
  std::mt19937_64 rng(44);
  for (int trial = 0; trial < 10; ++trial) {
    const Plant raw = random_plant(rng, 2, 5);
    const Plant p = Plant::make(Matrix::Zero(2, 2), raw.B());
    const auto report = problem_a_scan(p, -p.B().transpose(), 2);
    EXPECT_TRUE(report.failures().empty());
  }
}

TEST(ProblemA, Errors) {
  const Plant p = example1_plant();
  EXPECT_THROW(problem_a_scan(p, testing::example2_first_gain(), 1), DomainError);
  EXPECT_THROW(problem_a_scan(p, Matrix::Zero(2, 2), 2), DimensionError);
}

std::map<ChannelSet, EigenPair> all_minus_one() {
  std::map<ChannelSet, EigenPair> t;
  for (const auto& I : enumerate_subsets(3, 2, 2)) t[I] = EigenPair{-1.0, -1.0};
  return t;
}

TEST(ProblemB, AllMinusOne) {
  const Plant p = example1_plant();
  const auto K = problem_b_solve(p, all_minus_one(), ProblemBOptions{3});
  ASSERT_TRUE(K.has_value());
  for (const auto& I : enumerate_subsets(3, 2, 2)) {
    const auto [tr, det] = testing::trace_det(closed_loop(p, *K, I));
    EXPECT_NEAR(tr, -2.0, 1e-7);
    EXPECT_NEAR(det, 1.0, 1e-7);
  }
}

TEST(ProblemB, ReproducesSecondGainSpectra) {
  const Plant p = example1_plant();
  std::map<ChannelSet, EigenPair> targets;
  for (const auto& I : enumerate_subsets(3, 2, 2)) {
    const auto r = roots2(closed_loop(p, testing::example2_second_gain(), I));
    targets[I] = EigenPair{r[0], r[1]};
  }
  const auto K = problem_b_solve(p, targets, ProblemBOptions{5});
  ASSERT_TRUE(K.has_value());
  for (const auto& [I, pair] : targets) {
    const auto [tr, det] = testing::trace_det(closed_loop(p, *K, I));
    EXPECT_NEAR(tr, pair.trace(), 1e-7);
    EXPECT_NEAR(det, pair.det(), 1e-7);
  }
}

TEST(ProblemB, ComplexPairTargets) {
  const Plant p = example1_plant();
  std::map<ChannelSet, EigenPair> targets;
  for (const auto& I : enumerate_subsets(3, 2, 2)) targets[I] = EigenPair{Complex(-1, 2), Complex(-1, -2)};
  const auto K = problem_b_solve(p, targets, ProblemBOptions{6});
  ASSERT_TRUE(K.has_value());
  for (const auto& I : enumerate_subsets(3, 2, 2)) {
    const auto r = roots2(closed_loop(p, *K, I));
    EXPECT_LT(std::abs(r[0] - Complex(-1, -2)), 1e-6);
  }
}

TEST(ProblemB, Deterministic) {
  const Plant p = example1_plant();
  EXPECT_EQ(*problem_b_solve(p, all_minus_one(), ProblemBOptions{9}),
            *problem_b_solve(p, all_minus_one(), ProblemBOptions{9}));
}

TEST(ProblemB, Errors) {
  std::mt19937_64 rng(45);
  EXPECT_THROW(problem_b_solve(random_plant(rng, 2, 4), {}), UnsupportedError);
  const Plant p = example1_plant();
  EXPECT_THROW(problem_b_solve(p, {}), DomainError);
  EXPECT_THROW(problem_b_solve(p, {{ChannelSet(3, {1}), EigenPair{-1.0, -1.0}}}), DomainError);
  EXPECT_THROW(problem_b_solve(p, {{ChannelSet(3, {1, 2}), EigenPair{Complex(-1, 1), -1.0}}}), DomainError);
}

TEST(GainDesign, Json) {
  const auto d = make_gain(example1_plant(), example3_Ahat(), 2.0);
  const auto j = io::json::parse(d.to_json().dump());
  EXPECT_EQ(j.at("scaling"), "fixed");
  EXPECT_EQ(io::matrix_from_json(j.at("K"), "K"), d.K);
  EXPECT_EQ(io::matrix_from_json(j.at("Ahat"), "Ahat"), d.Ahat);
}

}  // namespace
}  // namespace neurochan
