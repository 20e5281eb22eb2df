#pragma once

// Sampled-data and first-order discretizations, and quantized (+-1, optionally
// 0) inputs chosen state by state so that A x + B u tracks a target field H x.

#include <array>
#include <cmath>
#include <cstdint>
#include <limits>
#include <sstream>
#include <string>
#include <vector>

#include "neurochan/io.hpp"
#include "neurochan/lifting.hpp"
#include "neurochan/numerics.hpp"
#include "neurochan/parallel.hpp"
#include "neurochan/plant.hpp"

namespace neurochan {

enum class DiscretizationOrder { exact, euler };

struct Discretization {
  double h = 0.0;
  Matrix F;
  Matrix G;
  DiscretizationOrder order = DiscretizationOrder::exact;

  Vector step(const Vector& x, const Vector& u) const { return F * x + G * u; }
};

/// exact: F = e^{Ah}, G = int_0^h e^{A(h-s)} ds B (one block exponential).
/// euler: F = I + h B Ahat with Ahat the minimum-norm lift, G = h B.
inline Discretization discretize(const Plant& plant, double h, DiscretizationOrder order) {
  if (!(h > 0.0)) throw DomainError("discretize: step h must be positive");
  const int n = plant.n();
  const int m = plant.m();
  Discretization d;
  d.h = h;
  d.order = order;
  if (order == DiscretizationOrder::exact) {
    Matrix block = Matrix::Zero(n + m, n + m);
    block.topLeftCorner(n, n) = plant.A();
    block.topRightCorner(n, m) = plant.B();
    const Matrix E = mat_exp(block, h);
    d.F = E.topLeftCorner(n, n);
    d.G = E.topRightCorner(n, m);
  } else {
    d.F = Matrix::Identity(n, n) + h * plant.B() * lift_particular(plant);
    d.G = h * plant.B();
  }
  return d;
}

enum class Alphabet { pm_one, pm_one_or_off };

inline Alphabet alphabet_from_string(const std::string& s) {
  if (s == "pm_one") return Alphabet::pm_one;
  if (s == "pm_one_or_off") return Alphabet::pm_one_or_off;
  throw DomainError("unknown alphabet '" + s + "' (expected pm_one or pm_one_or_off)");
}

inline constexpr int kMaxBinaryChannels = 20;
inline constexpr int kMaxTernaryChannels = 12;

struct EmulationTarget {
  Matrix H;
  double h = 0.01;
  Alphabet alphabet = Alphabet::pm_one;
  /// Per-channel column scaling; empty means scale every column to unit norm.
  Vector column_weights;

  void validate(const Plant& plant) const {
    if (H.rows() != plant.n() || H.cols() != plant.n()) throw DimensionError("EmulationTarget: H must be n x n");
    if (!is_hurwitz(H)) throw DomainError("EmulationTarget: H must be Hurwitz");
    if (!(h > 0.0)) throw DomainError("EmulationTarget: h must be positive");
    if (column_weights.size() != 0) {
      if (column_weights.size() != plant.m()) throw DimensionError("EmulationTarget: need one weight per channel");
      if ((column_weights.array() <= 0.0).any()) throw DomainError("EmulationTarget: weights must be positive");
    }
  }

  /// B diag(w).
  Matrix effective_input_matrix(const Plant& plant) const {
    Matrix Bw = plant.B();
    for (int j = 0; j < plant.m(); ++j) {
      double w = 1.0;
      if (column_weights.size() != 0) {
        w = column_weights(j);
      } else if (const double nrm = plant.B().col(j).norm(); nrm > 0.0) {
        w = 1.0 / nrm;
      }
      Bw.col(j) *= w;
    }
    return Bw;
  }
};

struct SelectionResult {
  Vector u;
  double residual = 0.0;
  int tie_count = 0;
  std::uint64_t label = 0;  // enumeration index of u (u_1 most significant digit)
};

/// "-", "0", "+" per channel.
inline std::string input_label(const Vector& u) {
  std::string s;
  for (Eigen::Index i = 0; i < u.size(); ++i) s += u(i) < 0 ? '-' : (u(i) > 0 ? '+' : '0');
  return s;
}

namespace detail {

// Exhaustive argmin of ||target - Bw u|| over levels^m in lexicographic order of u
// (-1 < 0 < +1); the first minimizer wins, near-equal residuals count as ties.
// residual is the smallest value among the tied candidates.
inline SelectionResult exhaustive_select(const Matrix& Bw, const Vector& target, const std::vector<double>& levels) {
  const auto m = static_cast<int>(Bw.cols());
  const auto base = static_cast<std::uint64_t>(levels.size());
  std::uint64_t count = 1;
  for (int i = 0; i < m; ++i) count *= base;

  std::vector<std::size_t> digit(static_cast<std::size_t>(m), 0);
  Vector u = Vector::Constant(m, levels[0]);
  SelectionResult best;
  double best_sq = std::numeric_limits<double>::infinity();
  double min_sq = best_sq;
  for (std::uint64_t idx = 0; idx < count; ++idx) {
    const double sq = (target - Bw * u).squaredNorm();
    const double tol = idx == 0 ? 0.0 : 1e-12 * (1.0 + best_sq);
    if (idx == 0 || sq < best_sq - tol) {
      best_sq = sq;
      min_sq = sq;
      best.label = idx;
      best.tie_count = 1;
      best.u = u;
    } else if (std::abs(sq - best_sq) <= tol) {
      ++best.tie_count;
      min_sq = std::min(min_sq, sq);
    }
    // odometer; channel m is the least significant digit
    for (int j = m - 1; j >= 0; --j) {
      auto& d = digit[static_cast<std::size_t>(j)];
      if (d + 1 < base) {
        u(j) = levels[++d];
        break;
      }
      d = 0;
      u(j) = levels[0];
    }
  }
  best.residual = std::sqrt(min_sq);
  return best;
}

inline std::vector<double> levels_of(Alphabet a) {
  return a == Alphabet::pm_one ? std::vector<double>{-1.0, 1.0} : std::vector<double>{-1.0, 0.0, 1.0};
}

}  // namespace detail

/// Quantized u in the target's alphabet minimizing ||H x - (A x + B_w u)||.
inline SelectionResult select_input(const EmulationTarget& target, const Plant& plant, const Vector& x) {
  target.validate(plant);
  if (x.size() != plant.n()) throw DimensionError("select_input: x must have length n");
  const int limit = target.alphabet == Alphabet::pm_one ? kMaxBinaryChannels : kMaxTernaryChannels;
  if (plant.m() > limit) throw CapacityError("select_input: too many channels for exhaustive search");
  const Vector goal = target.H * x - plant.A() * x;
  return detail::exhaustive_select(target.effective_input_matrix(plant), goal, detail::levels_of(target.alphabet));
}

/// Same criterion over {-1, 0, +1}^m; a 0 entry is a channel switched off by the gate.
inline SelectionResult select_gated(const EmulationTarget& target, const Plant& plant, const Vector& x) {
  target.validate(plant);
  if (x.size() != plant.n()) throw DimensionError("select_gated: x must have length n");
  if (plant.m() > kMaxTernaryChannels) throw CapacityError("select_gated: too many channels for exhaustive search");
  const Vector goal = target.H * x - plant.A() * x;
  return detail::exhaustive_select(target.effective_input_matrix(plant), goal,
                                   detail::levels_of(Alphabet::pm_one_or_off));
}

struct EmulationTrajectory {
  std::vector<Vector> states;  // steps + 1 entries
  std::vector<Vector> inputs;  // steps entries
  std::vector<double> residuals;

  /// Columns: k, x1..xn, label, residual (last row has no input).
  std::string to_csv() const {
    const auto n = states.empty() ? 0 : states.front().size();
    std::vector<std::string> header = {"k"};
    for (Eigen::Index i = 0; i < n; ++i) header.push_back("x" + std::to_string(i + 1));
    header.push_back("label");
    header.push_back("residual");
    std::string out = io::csv_row(header);
    for (std::size_t k = 0; k < states.size(); ++k) {
      std::vector<std::string> row = {std::to_string(k)};
      for (Eigen::Index i = 0; i < n; ++i) row.push_back(io::fmt(states[k](i)));
      row.push_back(k < inputs.size() ? input_label(inputs[k]) : "");
      row.push_back(k < residuals.size() ? io::fmt(residuals[k]) : "");
      out += io::csv_row(row);
    }
    return out;
  }
};

inline constexpr double kDivergenceBound = 1e6;

/// x(k+1) = x(k) + h (A x(k) + B_w u(k)) with u(k) = select_input(x(k)).
inline EmulationTrajectory simulate_emulation(const EmulationTarget& target, const Plant& plant, const Vector& x0,
                                              int steps) {
  if (steps < 1) throw DomainError("simulate_emulation: need at least one step");
  target.validate(plant);
  if (x0.size() != plant.n()) throw DimensionError("simulate_emulation: x0 must have length n");
  const Matrix Bw = target.effective_input_matrix(plant);
  EmulationTrajectory traj;
  traj.states.reserve(static_cast<std::size_t>(steps) + 1);
  Vector x = x0;
  traj.states.push_back(x);
  for (int k = 0; k < steps; ++k) {
    const auto sel = select_input(target, plant, x);
    x = x + target.h * (plant.A() * x + Bw * sel.u);
    if (!x.allFinite() || x.norm() > kDivergenceBound) {
      throw DivergenceError("simulate_emulation: ||x|| exceeded 1e6 at step " + std::to_string(k + 1));
    }
    traj.inputs.push_back(sel.u);
    traj.residuals.push_back(sel.residual);
    traj.states.push_back(x);
  }
  return traj;
}

/// Uniform grid [x_min, x_max] x [y_min, y_max] with nx * ny nodes (row-major, y outer).
struct GridSpec {
  double x_min = -2.0;
  double x_max = 2.0;
  double y_min = -2.0;
  double y_max = 2.0;
  int nx = 101;
  int ny = 101;

  double x(int i) const { return nx == 1 ? x_min : x_min + (x_max - x_min) * i / (nx - 1); }
  double y(int j) const { return ny == 1 ? y_min : y_min + (y_max - y_min) * j / (ny - 1); }
};

struct CellMap {
  GridSpec grid;
  std::vector<SelectionResult> cells;  // index j * nx + i

  const SelectionResult& at(int i, int j) const { return cells[static_cast<std::size_t>(j * grid.nx + i)]; }

  /// Columns: x1, x2, label.
  std::string to_csv() const {
    std::string out = io::csv_row({"x1", "x2", "label"});
    for (int j = 0; j < grid.ny; ++j) {
      for (int i = 0; i < grid.nx; ++i) {
        out += io::csv_row({io::fmt(grid.x(i)), io::fmt(grid.y(j)), input_label(at(i, j).u)});
      }
    }
    return out;
  }

  /// One colored square per node.
  std::string to_svg(int cell_px = 4) const {
    static constexpr std::array<const char*, 12> palette = {"#1f77b4", "#ff7f0e", "#2ca02c", "#d62728",
                                                            "#9467bd", "#8c564b", "#e377c2", "#7f7f7f",
                                                            "#bcbd22", "#17becf", "#393b79", "#637939"};
    std::ostringstream os;
    os << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << grid.nx * cell_px << "\" height=\""
       << grid.ny * cell_px << "\">\n";
    for (int j = 0; j < grid.ny; ++j) {
      for (int i = 0; i < grid.nx; ++i) {
        const auto label = at(i, j).label;
        os << "<rect x=\"" << i * cell_px << "\" y=\"" << (grid.ny - 1 - j) * cell_px << "\" width=\"" << cell_px
           << "\" height=\"" << cell_px << "\" fill=\"" << palette[label % palette.size()] << "\"/>\n";
      }
    }
    os << "</svg>\n";
    return os.str();
  }
};

/// Evaluates the selection function on every grid node (planar states only).
inline CellMap cell_map(const EmulationTarget& target, const Plant& plant, const GridSpec& grid, bool gated = false) {
  if (plant.n() != 2) throw UnsupportedError("cell_map: only planar (n = 2) state spaces are supported");
  if (grid.nx < 1 || grid.ny < 1) throw DomainError("cell_map: grid needs at least one node per axis");
  CellMap map;
  map.grid = grid;
  map.cells.resize(static_cast<std::size_t>(grid.nx) * static_cast<std::size_t>(grid.ny));
  parallel_for(map.cells.size(), [&](std::size_t idx) {
    const int i = static_cast<int>(idx % static_cast<std::size_t>(grid.nx));
    const int j = static_cast<int>(idx / static_cast<std::size_t>(grid.nx));
    const Vector x = Vector{{grid.x(i), grid.y(j)}};
    map.cells[idx] = gated ? select_gated(target, plant, x) : select_input(target, plant, x);
  });
  return map;
}

}  // namespace neurochan
