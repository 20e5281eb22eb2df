#pragma once

// Batch experiment driver. A JSON config names an experiment kind, a plant and
// kind-specific parameters; running it writes CSV/JSON/SVG artifacts.
//
//   {
//     "kind": "certify",
//     "seed": 42,
//     "output_dir": "out/example3_certify",
//     "plant": {"A": [[0, 1], [0, 0]], "B": [[0, 1, 1], [1, 0, 1]]},
//     "params": {"alpha": 2, "lift": {"Ahat": [[0, 0], [0, 1], [0, 0]]}, "invariant_set": [2]}
//   }
//
// "plant" may also be a path (relative to the config file) to a JSON file
// holding {"A": ..., "B": ...}.

#include <cstdint>
#include <filesystem>
#include <fstream>
#include <map>
#include <optional>
#include <ostream>
#include <string>
#include <vector>

#include "neurochan/design.hpp"
#include "neurochan/frames.hpp"
#include "neurochan/intermittency.hpp"
#include "neurochan/io.hpp"
#include "neurochan/lattice.hpp"
#include "neurochan/lifting.hpp"
#include "neurochan/quantize.hpp"
#include "neurochan/uncertainty.hpp"

namespace neurochan::experiment {

namespace fs = std::filesystem;
using io::json;

/// The config is malformed or inconsistent; maps to exit status 1.
class ConfigError : public Error {
 public:
  using Error::Error;
};

enum ExitStatus : int { kOk = 0, kValidationError = 1, kNumericalFailure = 2 };

inline const std::vector<std::string>& experiment_kinds() {
  static const std::vector<std::string> kinds = {"classify",    "design", "certify", "intermittency",
                                                 "uncertainty", "frames", "emulate"};
  return kinds;
}

struct ExperimentConfig {
  std::string kind;
  std::optional<Plant> plant;
  json params = json::object();
  std::optional<std::uint64_t> seed;
  fs::path output_dir;
  fs::path source;  // config file, when loaded from disk
};

namespace detail {

/// Field access that reports the dotted path of whatever is missing or mistyped.
class Fields {
 public:
  Fields(const json& j, std::string prefix) : j_(j), prefix_(std::move(prefix)) {}

  bool has(const std::string& key) const { return j_.is_object() && j_.contains(key) && !j_.at(key).is_null(); }

  std::string name(const std::string& key) const { return prefix_.empty() ? key : prefix_ + "." + key; }

  const json& at(const std::string& key) const {
    if (!has(key)) throw ConfigError("missing required field '" + name(key) + "'");
    return j_.at(key);
  }

  double number(const std::string& key) const {
    const json& v = at(key);
    if (!v.is_number()) throw ConfigError("field '" + name(key) + "' must be a number");
    return v.get<double>();
  }

  double number_or(const std::string& key, double fallback) const { return has(key) ? number(key) : fallback; }

  long integer(const std::string& key) const {
    const json& v = at(key);
    if (!v.is_number_integer()) throw ConfigError("field '" + name(key) + "' must be an integer");
    return v.get<long>();
  }

  long integer_or(const std::string& key, long fallback) const { return has(key) ? integer(key) : fallback; }

  std::string string_or(const std::string& key, const std::string& fallback) const {
    if (!has(key)) return fallback;
    const json& v = at(key);
    if (!v.is_string()) throw ConfigError("field '" + name(key) + "' must be a string");
    return v.get<std::string>();
  }

  Matrix matrix(const std::string& key) const {
    try {
      return io::matrix_from_json(at(key), name(key));
    } catch (const DimensionError& e) {
      throw ConfigError(e.what());
    }
  }

  Vector vector(const std::string& key) const {
    try {
      return io::vector_from_json(at(key), name(key));
    } catch (const DimensionError& e) {
      throw ConfigError(e.what());
    }
  }

  ChannelSet channel_set(const std::string& key, int m) const {
    const json& v = at(key);
    if (!v.is_array()) throw ConfigError("field '" + name(key) + "' must be an array of channel indices");
    std::vector<int> idx;
    for (const auto& e : v) {
      if (!e.is_number_integer()) throw ConfigError("field '" + name(key) + "' must hold integers");
      idx.push_back(e.get<int>());
    }
    try {
      return ChannelSet(m, std::move(idx));
    } catch (const Error& e) {
      throw ConfigError("field '" + name(key) + "': " + e.what());
    }
  }

  Fields sub(const std::string& key) const { return Fields(at(key), name(key)); }

 private:
  const json& j_;
  std::string prefix_;
};

inline json read_json_file(const fs::path& path, const std::string& field) {
  std::ifstream in(path);
  if (!in) throw ConfigError("field '" + field + "': cannot open file " + path.string());
  try {
    return json::parse(in);
  } catch (const json::parse_error& e) {
    throw ConfigError("field '" + field + "': " + path.string() + " is not valid JSON: " + e.what());
  }
}

inline Plant parse_plant(const json& j, const fs::path& base_dir) {
  json doc = j;
  if (j.is_string()) doc = read_json_file(base_dir / j.get<std::string>(), "plant");
  if (!doc.is_object()) throw ConfigError("field 'plant' must be an object with A and B, or a file path");
  Fields f(doc, "plant");
  const Matrix A = f.matrix("A");
  const Matrix B = f.matrix("B");
  try {
    return Plant::make(A, B);
  } catch (const Error& e) {
    throw ConfigError(std::string("field 'plant': ") + e.what());
  }
}

}  // namespace detail

inline ExperimentConfig parse_config(const json& doc, const fs::path& source = {}) {
  if (!doc.is_object()) throw ConfigError("config must be a JSON object");
  detail::Fields f(doc, "");
  ExperimentConfig cfg;
  cfg.source = source;
  cfg.kind = f.string_or("kind", "");
  if (cfg.kind.empty()) throw ConfigError("missing required field 'kind'");
  const auto& kinds = experiment_kinds();
  if (std::find(kinds.begin(), kinds.end(), cfg.kind) == kinds.end()) {
    throw ConfigError("field 'kind': unknown experiment kind '" + cfg.kind + "'");
  }
  if (f.has("seed")) {
    const json& s = f.at("seed");
    if (!s.is_number_unsigned() && !(s.is_number_integer() && s.get<long>() >= 0)) {
      throw ConfigError("field 'seed' must be a non-negative integer");
    }
    cfg.seed = s.get<std::uint64_t>();
  }
  if (f.has("params")) {
    cfg.params = f.at("params");
    if (!cfg.params.is_object()) throw ConfigError("field 'params' must be an object");
  }
  const fs::path base = source.empty() ? fs::current_path() : source.parent_path();
  if (cfg.kind != "frames") cfg.plant = detail::parse_plant(f.at("plant"), base);
  const std::string out = f.string_or("output_dir", "");
  if (!out.empty()) {
    cfg.output_dir = out;
  } else {
    cfg.output_dir = fs::path("out") / (source.empty() ? cfg.kind : source.stem().string());
  }
  return cfg;
}

inline ExperimentConfig load_config(const fs::path& path) {
  if (!fs::exists(path)) throw ConfigError("config file not found: " + path.string());
  return parse_config(detail::read_json_file(path, "config"), path);
}

struct RunOptions {
  std::optional<fs::path> output_dir;
  std::optional<std::uint64_t> seed;
  bool expect_pass = false;
};

struct RunResult {
  int status = kOk;
  std::vector<fs::path> artifacts;
  std::vector<std::string> messages;
};

namespace detail {

class Runner {
 public:
  Runner(const ExperimentConfig& cfg, const RunOptions& opts)
      : cfg_(cfg), opts_(opts), params_(cfg.params, "params") {
    out_dir_ = opts.output_dir ? *opts.output_dir : cfg.output_dir;
    if (opts.seed) seed_ = opts.seed;
    else seed_ = cfg.seed;
  }

  RunResult run() {
    if (cfg_.kind == "classify") classify();
    else if (cfg_.kind == "design") design();
    else if (cfg_.kind == "certify") certify();
    else if (cfg_.kind == "intermittency") intermittency();
    else if (cfg_.kind == "uncertainty") uncertainty();
    else if (cfg_.kind == "frames") frames();
    else if (cfg_.kind == "emulate") emulate();
    return std::move(result_);
  }

 private:
  const Plant& plant() const { return *cfg_.plant; }

  std::uint64_t require_seed() const {
    if (!seed_) throw ConfigError("missing required field 'seed' (stochastic experiment)");
    return *seed_;
  }

  void write(const std::string& name, const std::string& contents) {
    const fs::path path = out_dir_ / name;
    io::write_file_atomic(path, contents);
    result_.artifacts.push_back(path);
  }

  void note(std::string msg) { result_.messages.push_back(std::move(msg)); }

  // "lift": "particular" | {"Ahat": [[...]]} | {"invariant_set": [..]}; absent -> particular,
  // or the invariant lift of params.invariant_set when that is given.
  Matrix lift() const {
    if (!params_.has("lift")) {
      if (params_.has("invariant_set")) return invariant_lift(params_.channel_set("invariant_set", plant().m()));
      return lift_particular(plant());
    }
    const json& l = params_.at("lift");
    if (l.is_string()) {
      if (l.get<std::string>() == "particular") return lift_particular(plant());
      throw ConfigError("field 'params.lift' must be \"particular\" or an object");
    }
    const Fields lf = params_.sub("lift");
    if (lf.has("Ahat")) {
      Matrix Ahat = lf.matrix("Ahat");
      if (Ahat.rows() != plant().m() || Ahat.cols() != plant().n()) {
        throw ConfigError("field 'params.lift.Ahat' must be m x n");
      }
      return Ahat;
    }
    if (lf.has("invariant_set")) return invariant_lift(lf.channel_set("invariant_set", plant().m()));
    throw ConfigError("field 'params.lift' needs 'Ahat' or 'invariant_set'");
  }

  Matrix invariant_lift(const ChannelSet& I) const {
    try {
      return lift_invariant(plant(), I);
    } catch (const InfeasibleError& e) {
      throw ConfigError(std::string("field 'params.invariant_set': ") + e.what());
    }
  }

  GainDesign gain() const {
    const double alpha = params_.number("alpha");
    if (!(alpha > 0.0)) throw ConfigError("field 'params.alpha' must be positive");
    AlphaScaling scaling;
    try {
      scaling = alpha_scaling_from_string(params_.string_or("scaling", "fixed"));
    } catch (const DomainError& e) {
      throw ConfigError(std::string("field 'params.scaling': ") + e.what());
    }
    Vector x_g = Vector::Zero(plant().n());
    if (params_.has("x_g")) x_g = params_.vector("x_g");
    if (x_g.size() != plant().n()) throw ConfigError("field 'params.x_g' must have length n");
    try {
      return make_gain(plant(), lift(), alpha, x_g, scaling);
    } catch (const InvalidLiftError& e) {
      throw ConfigError(std::string("field 'params.lift': ") + e.what());
    }
  }

  void classify() {
    const double T = params_.number_or("T", 1.0);
    if (!(T > 0.0)) throw ConfigError("field 'params.T' must be positive");
    const int m = plant().m();
    const auto k_min = static_cast<int>(params_.integer_or("k_min", 0));
    const auto k_max = static_cast<int>(params_.integer_or("k_max", m));
    if (k_min < 0 || k_min > k_max || k_max > m) throw ConfigError("fields 'params.k_min'/'params.k_max' out of range");
    const auto report = classify_controllability(plant().A(), plant().B(), T, k_min, k_max);
    write("classification.csv", report.to_csv());
    json summary = json::object();
    for (const auto& [k, s] : report.summary) {
      summary[std::to_string(k)] = {{"total", s.total}, {"controllable", s.controllable}};
    }
    write("summary.json", summary.dump(2) + "\n");
  }

  void design() {
    if (params_.has("alpha")) {
      const GainDesign d = gain();
      write("design.json", d.to_json().dump(2) + "\n");
      write("lift_family.json", lift_nullspace_basis(plant()).to_json().dump(2) + "\n");
      std::string eq = io::csv_row({"subset", "residual"});
      ChannelSet root = ChannelSet::empty(plant().m());
      if (params_.has("invariant_set")) root = params_.channel_set("invariant_set", plant().m());
      for (const auto& L : supersets_of(root)) {
        if (L.size() < plant().n()) continue;
        eq += io::csv_row({L.to_string(), io::fmt(goal_equilibrium_check(plant(), d, L))});
      }
      write("goal_equilibrium.csv", eq);
    }

    if (params_.has("problem_b_targets")) {
      std::map<ChannelSet, EigenPair> targets;
      const json& arr = params_.at("problem_b_targets");
      if (!arr.is_array()) throw ConfigError("field 'params.problem_b_targets' must be an array");
      for (std::size_t i = 0; i < arr.size(); ++i) {
        const Fields t(arr[i], "params.problem_b_targets[" + std::to_string(i) + "]");
        const Matrix ev = t.matrix("eigenvalues");  // rows: (re, im)
        if (ev.rows() != 2 || ev.cols() != 2) throw ConfigError(t.name("eigenvalues") + " must be [[re, im], [re, im]]");
        targets[t.channel_set("set", plant().m())] = EigenPair{{ev(0, 0), ev(0, 1)}, {ev(1, 0), ev(1, 1)}};
      }
      ProblemBOptions pb;
      pb.seed = seed_.value_or(0);
      std::optional<Matrix> K;
      try {
        K = problem_b_solve(plant(), targets, pb);
      } catch (const UnsupportedError& e) {
        throw ConfigError(std::string("field 'params.problem_b_targets': ") + e.what());
      }
      json out = {{"feasible", K.has_value()}};
      if (K) {
        out["K"] = io::to_json(*K);
        const auto scan = problem_a_scan(plant(), *K, plant().n());
        write("problem_b_scan.csv", scan.to_csv());
      }
      write("problem_b.json", out.dump(2) + "\n");
      if (!K) {
        note("problem B: no restart converged");
        result_.status = kNumericalFailure;
      }
    }

    if (params_.has("problem_a_gains")) {
      const json& arr = params_.at("problem_a_gains");
      if (!arr.is_array()) throw ConfigError("field 'params.problem_a_gains' must be an array of matrices");
      const auto j_min = static_cast<int>(params_.integer_or("j_min", plant().n()));
      if (j_min < plant().n() || j_min > plant().m()) throw ConfigError("field 'params.j_min' out of range");
      for (std::size_t i = 0; i < arr.size(); ++i) {
        const std::string field = "params.problem_a_gains[" + std::to_string(i) + "]";
        Matrix K;
        try {
          K = io::matrix_from_json(arr[i], field);
        } catch (const DimensionError& e) {
          throw ConfigError(e.what());
        }
        if (K.rows() != plant().m() || K.cols() != plant().n()) throw ConfigError("field '" + field + "' must be m x n");
        const auto scan = problem_a_scan(plant(), K, j_min);
        write("problem_a_" + std::to_string(i) + ".csv", scan.to_csv());
        if (!scan.failures().empty()) note("problem A gain " + std::to_string(i) + ": not Hurwitz on every subset");
      }
    }
  }

  void certify() {
    const GainDesign d = gain();
    const ChannelSet I = params_.channel_set("invariant_set", plant().m());
    const auto cert = certify_resilience(plant(), d, I);
    write("design.json", d.to_json().dump(2) + "\n");
    write("certificate.csv", cert.to_csv());
    json summary = {{"root_set", I.to_string()}, {"diagnostics", cert.diagnostics}};
    summary["all_pass"] = cert.all_pass ? json(*cert.all_pass) : json(nullptr);
    write("certificate.json", summary.dump(2) + "\n");
    if (opts_.expect_pass && cert.all_pass != true) {
      note("certificate did not pass for root set " + I.to_string());
      result_.status = kNumericalFailure;
    }
  }

  void intermittency() {
    const std::uint64_t seed = require_seed();
    const GainDesign d = gain();
    MarkovChannelModel model{params_.number("delta"), params_.number("epsilon")};
    if (!(model.delta > 0.0) || !(model.epsilon > 0.0)) {
      throw ConfigError("fields 'params.delta' and 'params.epsilon' must be positive");
    }
    const Vector x0 = params_.vector("x0");
    if (x0.size() != plant().n()) throw ConfigError("field 'params.x0' must have length n");
    const double horizon = params_.number_or("horizon", 10.0);
    const double dt = params_.number_or("dt", kDefaultStep);
    const long runs = params_.integer_or("runs", 100);
    if (!(horizon > 0.0) || !(dt > 0.0) || runs < 1) {
      throw ConfigError("fields 'params.horizon', 'params.dt' and 'params.runs' must be positive");
    }

    const auto path = sample_availability(model, plant().m(), horizon, seed);
    const auto traj = simulate_switched(plant(), d, path, x0, dt);
    write("trajectory.csv", traj.to_csv());

    io::SvgSeries norm_series;
    for (std::size_t k = 0; k < traj.times.size(); k += 10) {
      norm_series.x.push_back(traj.times[k]);
      norm_series.y.push_back(traj.states[k].norm());
    }
    write("trajectory.svg", io::svg_plot({norm_series}, "||x(t)||, seed " + std::to_string(seed)));

    std::vector<std::uint64_t> seeds;
    for (long i = 0; i < runs; ++i) seeds.push_back(seed + static_cast<std::uint64_t>(i));
    const auto batch = run_intermittency_batch(plant(), d, model, x0, horizon, dt, seeds);
    write("batch_summary.csv", batch_summary_csv(batch));
  }

  void uncertainty() {
    const std::uint64_t seed = require_seed();
    const GainDesign d = gain();
    NoiseModel noise = NoiseModel::identity(plant().m());
    if (params_.has("sigma")) noise.sigma = params_.matrix("sigma");
    try {
      noise.validate(plant().m());
    } catch (const Error& e) {
      throw ConfigError(std::string("field 'params.sigma': ") + e.what());
    }
    const long trials = params_.integer_or("trials", 100000);
    if (trials < 1000) throw ConfigError("field 'params.trials' must be at least 1000");

    std::string csv = io::csv_row({"config_id", "closed_form_mse", "empirical_mse", "stderr"});
    const auto closed = steady_state_error(plant(), d, noise);
    const auto mc = monte_carlo_sse(plant(), d, noise, static_cast<std::size_t>(trials), seed);
    csv += io::csv_row({"base", io::fmt(closed.mse), io::fmt(mc.mse), io::fmt(mc.standard_error)});

    if (params_.has("augment")) {
      const json& arr = params_.at("augment");
      if (!arr.is_array()) throw ConfigError("field 'params.augment' must be an array of vectors");
      for (std::size_t i = 0; i < arr.size(); ++i) {
        const std::string field = "params.augment[" + std::to_string(i) + "]";
        Vector b;
        try {
          b = io::vector_from_json(arr[i], field);
        } catch (const DimensionError& e) {
          throw ConfigError(e.what());
        }
        if (b.size() != plant().n()) throw ConfigError("field '" + field + "' must have length n");
        const auto aug = augment_channel(plant(), d, b);
        Matrix B_aug(plant().n(), plant().m() + 1);
        B_aug << plant().B(), b;
        const Plant p_aug = Plant::make(plant().A(), B_aug);
        GainDesign d_aug = d;
        d_aug.K.conservativeResize(plant().m() + 1, Eigen::NoChange);
        d_aug.K.row(plant().m()) = -d.alpha_eff * b.transpose();
        const auto mc_aug = monte_carlo_sse(p_aug, d_aug, NoiseModel::identity(plant().m() + 1),
                                            static_cast<std::size_t>(trials), seed + i + 1);
        csv += io::csv_row({"augmented_" + std::to_string(i), io::fmt(aug.new_mse), io::fmt(mc_aug.mse),
                            io::fmt(mc_aug.standard_error)});
      }
    }
    write("uncertainty.csv", csv);
  }

  void frames() {
    json spectra = json::object();
    auto export_frame = [&](const std::string& name, const Matrix& B, double predicted) {
      std::vector<std::string> header = {"column"};
      for (Eigen::Index i = 0; i < B.rows(); ++i) header.push_back("x" + std::to_string(i + 1));
      std::string csv = io::csv_row(header);
      for (Eigen::Index c = 0; c < B.cols(); ++c) {
        std::vector<std::string> row = {std::to_string(c + 1)};
        for (Eigen::Index i = 0; i < B.rows(); ++i) row.push_back(io::fmt(B(i, c)));
        csv += io::csv_row(row);
      }
      write("frame_" + name + ".csv", csv);
      const Matrix G = B * B.transpose();
      spectra[name] = {{"columns", B.cols()},
                       {"eigenvalues", io::to_json(Vector(frame_spectrum(B)))},
                       {"gram_diagonal", io::to_json(Vector(G.diagonal()))},
                       {"max_offdiagonal", (G - Matrix(G.diagonal().asDiagonal())).cwiseAbs().maxCoeff()},
                       {"predicted_max_eigenvalue", predicted}};
    };
    if (params_.has("circle")) {
      for (const auto& e : params_.at("circle")) {
        if (!e.is_number_integer()) throw ConfigError("field 'params.circle' must hold integers");
        const int m = e.get<int>();
        if (m <= 2) throw ConfigError("field 'params.circle': circle frames need m > 2");
        export_frame("circle_m" + std::to_string(m), circle_frame(m), m / 2.0);
      }
    }
    if (params_.has("sphere")) {
      for (const auto& e : params_.at("sphere")) {
        if (!e.is_array()) throw ConfigError("field 'params.sphere' must hold arrays of angle counts");
        FrameSpec spec;
        spec.counts = e.get<std::vector<int>>();
        spec.n = static_cast<int>(spec.counts.size()) + 1;
        try {
          spec.validate();
        } catch (const Error& err) {
          throw ConfigError(std::string("field 'params.sphere': ") + err.what());
        }
        std::string name = "sphere";
        for (int c : spec.counts) name += "_" + std::to_string(c);
        export_frame(name, sphere_frame(spec), spec.predicted_max_eigenvalue());
      }
    }
    write("spectra.json", spectra.dump(2) + "\n");
  }

  void emulate() {
    EmulationTarget target;
    target.H = params_.matrix("H");
    target.h = params_.number_or("h", 0.01);
    try {
      target.alphabet = alphabet_from_string(params_.string_or("alphabet", "pm_one"));
    } catch (const DomainError& e) {
      throw ConfigError(std::string("field 'params.alphabet': ") + e.what());
    }
    if (params_.has("column_weights")) target.column_weights = params_.vector("column_weights");
    try {
      target.validate(plant());
    } catch (const Error& e) {
      throw ConfigError(std::string("field 'params': ") + e.what());
    }
    const Vector x0 = params_.vector("x0");
    if (x0.size() != plant().n()) throw ConfigError("field 'params.x0' must have length n");
    const long steps = params_.integer_or("steps", 5000);
    if (steps < 1) throw ConfigError("field 'params.steps' must be positive");

    const auto traj = simulate_emulation(target, plant(), x0, static_cast<int>(steps));
    write("trajectory.csv", traj.to_csv());

    if (plant().n() == 2) {
      GridSpec grid;
      if (params_.has("grid")) {
        const Fields g = params_.sub("grid");
        grid.x_min = g.number_or("x_min", grid.x_min);
        grid.x_max = g.number_or("x_max", grid.x_max);
        grid.y_min = g.number_or("y_min", grid.y_min);
        grid.y_max = g.number_or("y_max", grid.y_max);
        grid.nx = static_cast<int>(g.integer_or("nx", grid.nx));
        grid.ny = static_cast<int>(g.integer_or("ny", grid.ny));
        if (grid.nx < 1 || grid.ny < 1) throw ConfigError("fields 'params.grid.nx'/'params.grid.ny' must be positive");
      }
      const auto cells = cell_map(target, plant(), grid);
      write("cell_map.csv", cells.to_csv());
      write("cell_map.svg", cells.to_svg());
      if (plant().m() <= kMaxTernaryChannels) {
        const auto gated = cell_map(target, plant(), grid, /*gated=*/true);
        write("cell_map_gated.csv", gated.to_csv());
      }
      io::SvgSeries path;
      for (const auto& x : traj.states) {
        path.x.push_back(x(0));
        path.y.push_back(x(1));
      }
      write("trajectory.svg", io::svg_plot({path}, "quantized emulation path"));
    }
  }

  const ExperimentConfig& cfg_;
  RunOptions opts_;
  Fields params_;
  fs::path out_dir_;
  std::optional<std::uint64_t> seed_;
  RunResult result_;
};

}  // namespace detail

/// Runs a parsed config. Config problems throw ConfigError; library failures propagate.
inline RunResult run_experiment(const ExperimentConfig& cfg, const RunOptions& opts = {}) {
  return detail::Runner(cfg, opts).run();
}

/// Loads and runs a config file, mapping failures to exit statuses and logging to `log`.
inline int run(const fs::path& config_path, const RunOptions& opts, std::ostream& log) {
  try {
    const auto cfg = load_config(config_path);
    const auto result = run_experiment(cfg, opts);
    for (const auto& p : result.artifacts) log << "wrote " << p.string() << '\n';
    for (const auto& m : result.messages) log << m << '\n';
    return result.status;
  } catch (const ConfigError& e) {
    log << "error: " << e.what() << '\n';
    return kValidationError;
  } catch (const Error& e) {
    log << "numerical failure: " << e.what() << '\n';
    return kNumericalFailure;
  } catch (const std::exception& e) {
    log << "error: " << e.what() << '\n';
    return kValidationError;
  }
}

}  // namespace neurochan::experiment
