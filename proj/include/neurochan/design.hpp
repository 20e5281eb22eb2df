#pragma once

// Resilient gains K = -alpha_eff B^T - Ahat, set-point offsets, certificates
// over the lattice of supersets of an invariance set, and the resilient
// eigenvalue-placement problems for small systems.

#include <complex>
#include <cstdint>
#include <map>
#include <optional>
#include <random>
#include <string>
#include <vector>

#include "neurochan/io.hpp"
#include "neurochan/lattice.hpp"
#include "neurochan/lifting.hpp"
#include "neurochan/numerics.hpp"
#include "neurochan/plant.hpp"

namespace neurochan {

enum class AlphaScaling { fixed, inverse_m };

inline std::string to_string(AlphaScaling s) { return s == AlphaScaling::fixed ? "fixed" : "inverse_m"; }

inline AlphaScaling alpha_scaling_from_string(const std::string& s) {
  if (s == "fixed") return AlphaScaling::fixed;
  if (s == "inverse_m") return AlphaScaling::inverse_m;
  throw DomainError("unknown alpha scaling '" + s + "' (expected fixed or inverse_m)");
}

/// alpha for fixed scaling, alpha * n / m for inverse_m.
inline double effective_alpha(double alpha, AlphaScaling scaling, int n, int m) {
  return scaling == AlphaScaling::fixed ? alpha : alpha * static_cast<double>(n) / static_cast<double>(m);
}

struct GainDesign {
  double alpha = 1.0;
  AlphaScaling alpha_scaling = AlphaScaling::fixed;
  double alpha_eff = 1.0;
  Matrix Ahat;
  Matrix K;
  Vector x_g;
  Vector v;

  io::json to_json() const {
    return {{"alpha", alpha},
            {"scaling", to_string(alpha_scaling)},
            {"alpha_eff", alpha_eff},
            {"Ahat", io::to_json(Ahat)},
            {"K", io::to_json(K)},
            {"x_g", io::to_json(x_g)},
            {"v", io::to_json(v)}};
  }
};

/// Tolerance on ||B Ahat - A|| accepted by make_gain.
inline constexpr double kLiftTolerance = 1e-9;

/// K = -alpha_eff B^T - Ahat and v = -(Ahat + K) x_g, so that A + B K = -alpha_eff B B^T
/// and (A + BK) x_g + B v = 0.
inline GainDesign make_gain(const Plant& plant, const Matrix& Ahat, double alpha, const Vector& x_g,
                            AlphaScaling scaling = AlphaScaling::fixed) {
  if (!(alpha > 0.0)) throw DomainError("make_gain: alpha must be positive");
  if (x_g.size() != plant.n()) throw DimensionError("make_gain: x_g must have length n");
  const double residual = lift_residual(plant, Ahat);
  if (residual > kLiftTolerance * (1.0 + plant.A().norm())) {
    throw InvalidLiftError("make_gain: ||B Ahat - A|| = " + io::fmt(residual) + " exceeds tolerance");
  }
  GainDesign d;
  d.alpha = alpha;
  d.alpha_scaling = scaling;
  d.alpha_eff = effective_alpha(alpha, scaling, plant.n(), plant.m());
  d.Ahat = Ahat;
  d.K = -d.alpha_eff * plant.B().transpose() - Ahat;
  d.x_g = x_g;
  d.v = -(Ahat + d.K) * x_g;
  return d;
}

inline GainDesign make_gain(const Plant& plant, const Matrix& Ahat, double alpha,
                            AlphaScaling scaling = AlphaScaling::fixed) {
  return make_gain(plant, Ahat, alpha, Vector::Zero(plant.n()), scaling);
}

/// A + B P_L K
inline Matrix closed_loop(const Plant& plant, const Matrix& K, const ChannelSet& L) {
  if (K.rows() != plant.m() || K.cols() != plant.n()) throw DimensionError("closed_loop: K must be m x n");
  return plant.A() + plant.B() * L.projection() * K;
}

struct CertifiedSubset {
  ChannelSet set;
  double margin = 0.0;
  bool rank_ok = false;  // rank(B P_L) = n
  bool pass() const { return margin < kHurwitzTolerance; }
};

struct ResilienceCertificate {
  ChannelSet root_set;
  std::vector<CertifiedSubset> verified;
  /// Empty when the invariance or rank hypotheses fail at the root set.
  std::optional<bool> all_pass;
  std::vector<std::string> diagnostics;

  /// Columns: subset, margin, pass.
  std::string to_csv() const {
    std::string out = io::csv_row({"subset", "margin", "pass"});
    for (const auto& c : verified) out += io::csv_row({c.set.to_string(), io::fmt(c.margin), c.pass() ? "1" : "0"});
    return out;
  }
};

/// Checks that A + B P_L K is Hurwitz for every L containing I. With P_I Ahat = Ahat
/// and rank(B P_I) = n the closed loop on L is -alpha_eff B P_L B^T, hence stable.
inline ResilienceCertificate certify_resilience(const Plant& plant, const GainDesign& design, const ChannelSet& I) {
  if (I.m() != plant.m()) throw DimensionError("certify_resilience: channel set built for a different m");
  ResilienceCertificate cert;
  cert.root_set = I;

  bool hypotheses = true;
  const double invariance_defect = (I.projection() * design.Ahat - design.Ahat).norm();
  if (invariance_defect > 1e-12 * (1.0 + design.Ahat.norm())) {
    hypotheses = false;
    cert.diagnostics.push_back("invariance hypothesis fails: ||P_I Ahat - Ahat|| = " + io::fmt(invariance_defect));
  }

  const auto lattice = supersets_of(I);
  cert.verified.resize(lattice.size());
  parallel_for(lattice.size(), [&](std::size_t i) {
    const ChannelSet& L = lattice[i];
    auto& c = cert.verified[i];
    c.set = L;
    c.rank_ok = numerical_rank(plant.B() * L.projection()) == plant.n();
    c.margin = hurwitz_margin(closed_loop(plant, design.K, L));
  });
  for (const auto& c : cert.verified) {
    if (!c.rank_ok) {
      if (c.set == I) hypotheses = false;
      cert.diagnostics.push_back("rank hypothesis fails at " + c.set.to_string() + ": rank(B P_L) < n");
    }
  }

  if (hypotheses) {
    bool ok = true;
    for (const auto& c : cert.verified) ok = ok && c.pass();
    cert.all_pass = ok;
  }
  return cert;
}

/// ||(A + B P_L K) x_g + B P_L v||; zero when x_g stays an equilibrium after dropping
/// the channels outside L.
inline double goal_equilibrium_check(const Plant& plant, const GainDesign& design, const ChannelSet& L) {
  const Matrix BP = plant.B() * L.projection();
  return ((plant.A() + BP * design.K) * design.x_g + BP * design.v).norm();
}

/// Target closed-loop spectrum for one principal subsystem; must be real or a conjugate pair.
struct EigenPair {
  std::complex<double> first;
  std::complex<double> second;

  double trace() const { return (first + second).real(); }
  double det() const { return (first * second).real(); }
};

struct ProblemBOptions {
  std::uint64_t seed = 0;
  int restarts = 100;
  int max_iterations = 60;
  double tolerance = 1e-7;  // per-coefficient match of the characteristic polynomial
};

namespace detail {

// Trace and determinant residuals of A + B P_I K against each target.
inline Vector problem_b_residual(const Plant& plant, const std::vector<std::pair<Matrix, EigenPair>>& targets,
                                 const Matrix& K) {
  Vector r(2 * static_cast<Eigen::Index>(targets.size()));
  for (std::size_t t = 0; t < targets.size(); ++t) {
    const Matrix M = plant.A() + targets[t].first * K;
    r(2 * t) = M.trace() - targets[t].second.trace();
    r(2 * t + 1) = M.determinant() - targets[t].second.det();
  }
  return r;
}

}  // namespace detail

/// Gain K placing the spectrum of A + B P_I K at each target, for the 2-state,
/// 3-channel case. Newton on the trace/determinant equations with seeded random
/// restarts in [-3, 3]^6; returns nullopt when no restart converges.
inline std::optional<Matrix> problem_b_solve(const Plant& plant, const std::map<ChannelSet, EigenPair>& targets,
                                             const ProblemBOptions& opts = {}) {
  if (plant.n() != 2 || plant.m() != 3) {
    throw UnsupportedError("problem_b_solve: only the n = 2, m = 3 case is solvable in general");
  }
  if (targets.empty()) throw DomainError("problem_b_solve: no targets given");
  std::vector<std::pair<Matrix, EigenPair>> eqs;
  for (const auto& [I, pair] : targets) {
    if (I.m() != plant.m() || I.size() != plant.n()) {
      throw DomainError("problem_b_solve: targets must be keyed by n-element channel sets");
    }
    if (std::abs((pair.first + pair.second).imag()) > 1e-12 || std::abs((pair.first * pair.second).imag()) > 1e-12) {
      throw DomainError("problem_b_solve: target eigenvalues must be real or a conjugate pair");
    }
    eqs.emplace_back(plant.B() * I.projection(), pair);
  }

  const int unknowns = plant.m() * plant.n();
  std::mt19937_64 rng(opts.seed);
  std::uniform_real_distribution<double> start(-3.0, 3.0);
  auto unpack = [&](const Vector& k) { return Eigen::Map<const Matrix>(k.data(), plant.m(), plant.n()).eval(); };

  for (int attempt = 0; attempt < opts.restarts; ++attempt) {
    Vector k(unknowns);
    for (int i = 0; i < unknowns; ++i) k(i) = start(rng);
    for (int iter = 0; iter < opts.max_iterations; ++iter) {
      const Vector r = detail::problem_b_residual(plant, eqs, unpack(k));
      if (r.cwiseAbs().maxCoeff() < 1e-13) break;
      // Residuals are affine in each single entry of K, so central differences are exact up to rounding.
      Matrix J(r.size(), unknowns);
      constexpr double step = 1e-4;
      for (int i = 0; i < unknowns; ++i) {
        Vector kp = k, km = k;
        kp(i) += step;
        km(i) -= step;
        J.col(i) = (detail::problem_b_residual(plant, eqs, unpack(kp)) -
                    detail::problem_b_residual(plant, eqs, unpack(km))) /
                   (2 * step);
      }
      const Vector dk = J.completeOrthogonalDecomposition().solve(-r);
      if (!dk.allFinite()) break;
      k += dk;
      if (k.cwiseAbs().maxCoeff() > 1e6) break;
    }
    const Vector r = detail::problem_b_residual(plant, eqs, unpack(k));
    if (r.allFinite() && r.cwiseAbs().maxCoeff() < opts.tolerance) return unpack(k);
  }
  return std::nullopt;
}

/// Hurwitz margin of A + B P_I K for every I with |I| >= j_min (Problem A check).
inline LatticeReport problem_a_scan(const Plant& plant, const Matrix& K, int j_min) {
  if (j_min < plant.n() || j_min > plant.m()) throw DomainError("problem_a_scan: need n <= j_min <= m");
  if (K.rows() != plant.m() || K.cols() != plant.n()) throw DimensionError("problem_a_scan: K must be m x n");
  const auto subsets = enumerate_subsets(plant.m(), j_min, plant.m());
  LatticeReport report;
  report.records.resize(subsets.size());
  parallel_for(subsets.size(), [&](std::size_t i) {
    const ChannelSet& I = subsets[i];
    const Matrix BP = plant.B() * I.projection();
    auto& rec = report.records[i];
    rec.set = I;
    rec.controllable = ctrb_rank(plant.A(), BP) == plant.n();
    rec.gramian_min_singular_value = min_singular_value(gramian(plant.A(), plant.B(), I, 1.0));
    rec.hurwitz_margin = hurwitz_margin(plant.A() + BP * K);
  });
  report.summarize();
  return report;
}

}  // namespace neurochan
