#pragma once

// Channels that switch between available and unavailable according to
// independent two-state continuous-time Markov chains, and the switched
// closed loop dx/dt = (A + B P(t) K) x + B P(t) v they induce.

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <random>
#include <string>
#include <vector>

#include "neurochan/design.hpp"
#include "neurochan/io.hpp"
#include "neurochan/lattice.hpp"
#include "neurochan/parallel.hpp"
#include "neurochan/plant.hpp"

namespace neurochan {

/// Availability chain with generator [[-delta, epsilon], [delta, -epsilon]] acting on
/// (p_unavailable, p_available): an unavailable channel recovers at rate delta and an
/// available channel drops at rate epsilon.
struct MarkovChannelModel {
  double delta = 1.0;
  double epsilon = 1.0;

  void validate() const {
    if (!(delta > 0.0) || !(epsilon > 0.0)) throw DomainError("MarkovChannelModel: rates must be positive");
  }

  double stationary_availability() const { return delta / (delta + epsilon); }

  Matrix generator() const {
    Matrix Q(2, 2);
    Q << -delta, epsilon, delta, -epsilon;
    return Q;
  }

  double exit_rate(bool available) const { return available ? epsilon : delta; }
};

/// Piecewise-constant set of active channels on [0, horizon].
struct ChannelPath {
  int m = 0;
  double horizon = 0.0;
  std::vector<double> starts;      // segment start times, starts[0] = 0
  std::vector<ChannelSet> active;  // active channels on [starts[i], starts[i+1])

  double segment_end(std::size_t i) const { return i + 1 < starts.size() ? starts[i + 1] : horizon; }

  const ChannelSet& active_at(double t) const {
    auto it = std::upper_bound(starts.begin(), starts.end(), t);
    const auto i = static_cast<std::size_t>(std::max<std::ptrdiff_t>(0, (it - starts.begin()) - 1));
    return active[i];
  }

  /// Fraction of channel-time during which channels were available.
  double availability_fraction() const {
    double up = 0.0;
    for (std::size_t i = 0; i < starts.size(); ++i) up += active[i].size() * (segment_end(i) - starts[i]);
    return m == 0 || horizon <= 0.0 ? 0.0 : up / (m * horizon);
  }

  static ChannelPath constant(const ChannelSet& set, double horizon) {
    return ChannelPath{set.m(), horizon, {0.0}, {set}};
  }
};

/// Exact event-time sampling of independent per-channel chains. Initial states are
/// drawn from the stationary distribution. Deterministic for a given seed.
inline ChannelPath sample_availability(const std::vector<MarkovChannelModel>& models, double horizon,
                                       std::uint64_t seed) {
  if (!(horizon > 0.0)) throw DomainError("sample_availability: horizon must be positive");
  const int m = static_cast<int>(models.size());
  if (m > 64) throw CapacityError("sample_availability: at most 64 channels");
  for (const auto& mdl : models) mdl.validate();

  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  struct Event {
    double time;
    int channel;
  };
  std::vector<Event> events;
  std::uint64_t mask = 0;
  for (int c = 0; c < m; ++c) {
    const auto& mdl = models[static_cast<std::size_t>(c)];
    bool available = unit(rng) < mdl.stationary_availability();
    if (available) mask |= std::uint64_t{1} << c;
    double t = 0.0;
    while (true) {
      std::exponential_distribution<double> hold(mdl.exit_rate(available));
      t += hold(rng);
      if (t >= horizon) break;
      events.push_back({t, c});
      available = !available;
    }
  }
  std::sort(events.begin(), events.end(), [](const Event& a, const Event& b) {
    return a.time != b.time ? a.time < b.time : a.channel < b.channel;
  });

  ChannelPath path;
  path.m = m;
  path.horizon = horizon;
  path.starts.push_back(0.0);
  path.active.push_back(ChannelSet::from_mask(m, mask));
  for (const auto& e : events) {
    mask ^= std::uint64_t{1} << e.channel;
    if (e.time == path.starts.back()) {
      path.active.back() = ChannelSet::from_mask(m, mask);
    } else {
      path.starts.push_back(e.time);
      path.active.push_back(ChannelSet::from_mask(m, mask));
    }
  }
  return path;
}

inline ChannelPath sample_availability(const MarkovChannelModel& model, int m, double horizon, std::uint64_t seed) {
  return sample_availability(std::vector<MarkovChannelModel>(static_cast<std::size_t>(m), model), horizon, seed);
}

struct Trajectory {
  std::vector<double> times;
  std::vector<Vector> states;
  std::vector<ChannelSet> active;  // channels active on [times[i], times[i+1])
  std::vector<Vector> inputs;      // P(t) (K x + v) at times[i]; zero on inactive channels
  int refined_segments = 0;        // segments shorter than 4 dt, integrated with 4 substeps

  double final_norm() const { return states.empty() ? 0.0 : states.back().norm(); }

  /// True if ||x|| grew over at least one integration step.
  bool norm_increase_observed() const {
    for (std::size_t i = 1; i < states.size(); ++i) {
      if (states[i].norm() > states[i - 1].norm() * (1.0 + 1e-12)) return true;
    }
    return false;
  }

  /// Columns: t, x1..xn, mask (bit i-1 set when channel i is active).
  std::string to_csv() const {
    std::vector<std::string> header = {"t"};
    const auto n = states.empty() ? 0 : states.front().size();
    for (Eigen::Index i = 0; i < n; ++i) header.push_back("x" + std::to_string(i + 1));
    header.push_back("mask");
    std::string out = io::csv_row(header);
    for (std::size_t k = 0; k < times.size(); ++k) {
      std::vector<std::string> row = {io::fmt(times[k])};
      for (Eigen::Index i = 0; i < n; ++i) row.push_back(io::fmt(states[k](i)));
      row.push_back(std::to_string(active[k].mask()));
      out += io::csv_row(row);
    }
    return out;
  }
};

inline constexpr double kDefaultStep = 1e-3;

/// Fixed-step RK4 of the switched closed loop. Switch events split the integration
/// exactly; each segment uses ceil(length/dt) equal steps, and never fewer than 4.
inline Trajectory simulate_switched(const Plant& plant, const GainDesign& design, const ChannelPath& path,
                                    const Vector& x0, double dt = kDefaultStep) {
  if (!(dt > 0.0)) throw DomainError("simulate_switched: dt must be positive");
  if (x0.size() != plant.n()) throw DimensionError("simulate_switched: x0 must have length n");
  if (path.m != plant.m()) throw DimensionError("simulate_switched: path built for a different m");

  Trajectory traj;
  Vector x = x0;
  for (std::size_t s = 0; s < path.starts.size(); ++s) {
    const double t0 = path.starts[s];
    const double length = path.segment_end(s) - t0;
    if (length <= 0.0) continue;
    const ChannelSet& L = path.active[s];
    const Matrix P = L.projection();
    const Matrix M = plant.A() + plant.B() * P * design.K;
    const Vector c = plant.B() * P * design.v;
    auto f = [&](const Vector& y) -> Vector { return M * y + c; };

    auto steps = static_cast<long>(std::ceil(length / dt - 1e-9));
    if (steps < 4) {
      ++traj.refined_segments;
      steps = 4;
    }
    const double h = length / static_cast<double>(steps);
    for (long k = 0; k < steps; ++k) {
      traj.times.push_back(t0 + static_cast<double>(k) * h);
      traj.states.push_back(x);
      traj.active.push_back(L);
      traj.inputs.push_back(P * (design.K * x + design.v));
      const Vector k1 = f(x);
      const Vector k2 = f(x + 0.5 * h * k1);
      const Vector k3 = f(x + 0.5 * h * k2);
      const Vector k4 = f(x + h * k3);
      x += h / 6.0 * (k1 + 2.0 * k2 + 2.0 * k3 + k4);
    }
  }
  const ChannelSet& last = path.active.back();
  traj.times.push_back(path.horizon);
  traj.states.push_back(x);
  traj.active.push_back(last);
  traj.inputs.push_back(last.projection() * (design.K * x + design.v));
  return traj;
}

struct IntermittencyRun {
  std::uint64_t seed = 0;
  double final_norm = 0.0;
  double contraction_ratio = 0.0;  // ||x(horizon) - x_g|| / ||x(0) - x_g||
  bool norm_increase_observed = false;
  double availability_fraction = 0.0;
};

/// One run per seed, evaluated concurrently; row i always belongs to seeds[i].
inline std::vector<IntermittencyRun> run_intermittency_batch(const Plant& plant, const GainDesign& design,
                                                             const MarkovChannelModel& model, const Vector& x0,
                                                             double horizon, double dt,
                                                             const std::vector<std::uint64_t>& seeds) {
  std::vector<IntermittencyRun> runs(seeds.size());
  const double start_error = (x0 - design.x_g).norm();
  parallel_for(seeds.size(), [&](std::size_t i) {
    const auto path = sample_availability(model, plant.m(), horizon, seeds[i]);
    const auto traj = simulate_switched(plant, design, path, x0, dt);
    auto& r = runs[i];
    r.seed = seeds[i];
    r.final_norm = traj.final_norm();
    r.contraction_ratio = start_error > 0.0 ? (traj.states.back() - design.x_g).norm() / start_error : 0.0;
    r.norm_increase_observed = traj.norm_increase_observed();
    r.availability_fraction = path.availability_fraction();
  });
  return runs;
}

/// Columns: seed, final_norm, contraction_ratio.
inline std::string batch_summary_csv(const std::vector<IntermittencyRun>& runs) {
  std::string out = io::csv_row({"seed", "final_norm", "contraction_ratio"});
  for (const auto& r : runs) out += io::csv_row({std::to_string(r.seed), io::fmt(r.final_norm), io::fmt(r.contraction_ratio)});
  return out;
}

}  // namespace neurochan
