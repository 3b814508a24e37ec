#pragma once

// Configuration-driven numerical studies. Each runner validates its config,
// derives one seed per trial from the master seed, runs trials (optionally on
// several threads) and aggregates them in trial order, so the output depends
// only on (config, seed).

#include <Eigen/Dense>

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cmath>
#include <cstdint>
#include <exception>
#include <limits>
#include <map>
#include <mutex>
#include <optional>
#include <set>
#include <string>
#include <thread>
#include <vector>

#include "gsp/config.hpp"
#include "gsp/graph.hpp"
#include "gsp/localization.hpp"
#include "gsp/random.hpp"
#include "gsp/sampling.hpp"
#include "gsp/sparse_noise.hpp"
#include "gsp/spectral.hpp"
#include "gsp/strategies.hpp"
#include "gsp/table.hpp"
#include "gsp/uncertainty.hpp"

namespace gsp {

inline constexpr const char* kVersion = "gsl 1.0.0";

enum class Experiment {
  SpilloverBandwidth,
  VanishingEntries,
  L1Threshold,
  StrategyComparison,
  FrameRadiusSweep,
  UncertaintyBoundary
};

inline const char* to_string(Experiment e) {
  switch (e) {
    case Experiment::SpilloverBandwidth: return "spillover-bandwidth";
    case Experiment::VanishingEntries: return "vanishing-entries";
    case Experiment::L1Threshold: return "l1-threshold";
    case Experiment::StrategyComparison: return "strategy-comparison";
    case Experiment::FrameRadiusSweep: return "frame-radius-sweep";
    case Experiment::UncertaintyBoundary: return "uncertainty-boundary";
  }
  return "unknown";
}

inline std::optional<Experiment> parse_experiment(std::string_view s) {
  for (auto e : {Experiment::SpilloverBandwidth, Experiment::VanishingEntries, Experiment::L1Threshold,
                 Experiment::StrategyComparison, Experiment::FrameRadiusSweep, Experiment::UncertaintyBoundary})
    if (s == to_string(e)) return e;
  return std::nullopt;
}

struct ExperimentConfig {
  Experiment experiment = Experiment::UncertaintyBoundary;
  Config params;
  int trials = 1;
  std::uint64_t master_seed = 1;
  int threads = 1;
  std::string output_path;
};

/// Reads the shared keys (trials, seed, threads). A seed given here wins
/// over the file.
inline ExperimentConfig make_experiment_config(Experiment e, Config params, int default_trials,
                                               std::optional<std::uint64_t> seed_override = std::nullopt) {
  ExperimentConfig cfg;
  cfg.experiment = e;
  if (seed_override) params.set("seed", std::to_string(*seed_override));
  cfg.trials = static_cast<int>(params.get_int("trials", default_trials));
  cfg.master_seed = params.get_seed("seed", 1);
  cfg.threads = static_cast<int>(params.get_int("threads", 1));
  if (cfg.trials < 1) throw Error(ErrorCode::ConfigError, "trials must be >= 1");
  if (cfg.threads < 1) throw Error(ErrorCode::ConfigError, "threads must be >= 1");
  cfg.params = std::move(params);
  return cfg;
}

namespace detail {

/// Calls f(t) for t in [0, trials) on up to `threads` workers and returns
/// the results in trial order. The lowest-index failure is rethrown.
template <class F>
auto run_trials(int trials, int threads, F f) -> std::vector<decltype(f(0))> {
  using R = decltype(f(0));
  std::vector<std::optional<R>> slots(static_cast<std::size_t>(trials));
  std::vector<std::exception_ptr> errors(static_cast<std::size_t>(trials));
  std::atomic<int> next{0};
  auto worker = [&] {
    for (int t = next++; t < trials; t = next++) {
      try {
        slots[static_cast<std::size_t>(t)].emplace(f(t));
      } catch (...) {
        errors[static_cast<std::size_t>(t)] = std::current_exception();
      }
    }
  };
  const int nworkers = std::min(threads, trials);
  if (nworkers <= 1) {
    worker();
  } else {
    std::vector<std::thread> pool;
    for (int i = 0; i < nworkers; ++i) pool.emplace_back(worker);
    for (auto& th : pool) th.join();
  }
  for (auto& e : errors)
    if (e) std::rethrow_exception(e);
  std::vector<R> out;
  out.reserve(slots.size());
  for (auto& s : slots) out.push_back(std::move(*s));
  return out;
}

inline double mean(const std::vector<double>& v) {
  if (v.empty()) return std::nan("");
  double s = 0.0;
  for (double x : v) s += x;
  return s / static_cast<double>(v.size());
}

/// Standard error of the mean; 0 for fewer than two values.
inline double sem(const std::vector<double>& v) {
  if (v.size() < 2) return 0.0;
  const double m = mean(v);
  double ss = 0.0;
  for (double x : v) ss += (x - m) * (x - m);
  return std::sqrt(ss / static_cast<double>(v.size() - 1) / static_cast<double>(v.size()));
}

inline void require(bool ok, const std::string& what) {
  if (!ok) throw Error(ErrorCode::ConfigError, what);
}

inline ResultTable start_table(const ExperimentConfig& cfg, std::vector<std::string> columns) {
  ResultTable t(std::move(columns));
  t.add_metadata("experiment", to_string(cfg.experiment));
  t.add_metadata("version", kVersion);
  for (const auto& [k, v] : cfg.params.resolved())
    if (k != "threads") t.add_metadata(k, v);
  return t;
}

/// Seed for sub-stream `stream` of trial `trial`.
inline std::uint64_t trial_seed(std::uint64_t master, int trial, std::uint64_t stream) {
  return derive_seed(derive_seed(master, static_cast<std::uint64_t>(trial)), stream);
}

inline Graph make_graph(const std::string& kind, int n, double r0, int attach, std::uint64_t seed) {
  if (kind == "rgg") return generate_rgg_torus(n, r0, seed);
  if (kind == "sf") return generate_scale_free(n, attach, seed);
  throw Error(ErrorCode::ConfigError, "graph must be 'rgg' or 'sf'");
}

/// 1 - sigma_max^2 of U[S, 0:k].
inline double spill_over(const Matrix& u_rows, int k) {
  const Matrix g = u_rows.leftCols(k);
  const Matrix gram = g.rows() <= g.cols() ? Matrix(g * g.transpose()) : Matrix(g.transpose() * g);
  Eigen::SelfAdjointEigenSolver<Matrix> es(gram, Eigen::EigenvaluesOnly);
  return 1.0 - std::min(1.0, es.eigenvalues().maxCoeff());
}

}  // namespace detail

/// Tolerance applied to the spill-over test, so eps2 = 0 means numerically
/// perfect localization.
inline constexpr double kSpillTol = 1e-9;

/// Balls S of growing radius around a random vertex of a torus RGG; for each
/// eps2 the smallest k with 1 - sigma_max^2(B D) <= eps2 for F = {0..k-1}.
/// One row per (|S|, eps2), aggregated over all (trial, radius) instances
/// with that |S|.
inline ResultTable run_spillover_bandwidth(const ExperimentConfig& cfg) {
  const Config& c = cfg.params;
  c.require_known({"trials", "seed", "threads", "n", "r0", "eps2", "radius_steps"});
  const int n = static_cast<int>(c.get_int("n", 100));
  const double r0 = c.get_double("r0", 0.25);
  const std::vector<double> eps2 = c.get_doubles("eps2", {0.0, 1e-3, 1e-2, 5e-2, 1e-1});
  const int steps = static_cast<int>(c.get_int("radius_steps", 20));
  detail::require(n >= 2, "n must be >= 2");
  detail::require(r0 > 0.0, "r0 must be > 0");
  detail::require(steps >= 1, "radius_steps must be >= 1");
  detail::require(!eps2.empty(), "eps2 list must be nonempty");
  for (double e : eps2) detail::require(e >= 0.0 && e < 1.0, "eps2 values must lie in [0, 1)");

  struct Instance {
    int s_size;
    std::vector<int> k;
  };
  const auto per_trial = detail::run_trials(cfg.trials, cfg.threads, [&](int t) {
    const Graph g = generate_rgg_torus(n, r0, detail::trial_seed(cfg.master_seed, t, 0));
    const SpectralBasis basis = graph_basis(g);
    Rng rng(detail::trial_seed(cfg.master_seed, t, 1));
    const int center = static_cast<int>(rng.below(static_cast<std::uint64_t>(n)));
    const auto& pts = g.coordinates();
    std::vector<Instance> out;
    int last = 0;
    for (int step = 1; step <= steps; ++step) {
      const double radius = kMaxTorusDistance * step / steps;
      std::vector<int> s;
      for (int v = 0; v < n; ++v)
        if (torus_distance(pts[static_cast<std::size_t>(center)], pts[static_cast<std::size_t>(v)]) <= radius)
          s.push_back(v);
      if (static_cast<int>(s.size()) == last) continue;
      last = static_cast<int>(s.size());
      const Matrix rows = detail::select_rows(basis.U, s);
      std::map<int, double> cache;
      auto spill = [&](int k) {
        auto it = cache.find(k);
        if (it == cache.end()) it = cache.emplace(k, detail::spill_over(rows, k)).first;
        return it->second;
      };
      Instance inst{last, {}};
      for (double e : eps2) {
        int lo = 1, hi = n;
        while (lo < hi) {
          const int mid = (lo + hi) / 2;
          if (spill(mid) <= e + kSpillTol) hi = mid;
          else lo = mid + 1;
        }
        inst.k.push_back(lo);
      }
      out.push_back(std::move(inst));
    }
    return out;
  });

  std::map<int, std::vector<std::vector<double>>> by_size;  // |S| -> per eps2 list of k
  for (const auto& trial : per_trial)
    for (const auto& inst : trial) {
      auto& slot = by_size[inst.s_size];
      slot.resize(eps2.size());
      for (std::size_t e = 0; e < eps2.size(); ++e) slot[e].push_back(inst.k[e]);
    }
  ResultTable table = detail::start_table(cfg, {"s_size", "eps2", "k_mean", "k_min", "k_max", "count"});
  for (const auto& [size, lists] : by_size)
    for (std::size_t e = 0; e < eps2.size(); ++e) {
      const auto& ks = lists[e];
      table.add_row({double(size), eps2[e], detail::mean(ks), *std::min_element(ks.begin(), ks.end()),
                     *std::max_element(ks.begin(), ks.end()), double(ks.size())});
    }
  return table;
}

/// Percentage of |U_ij| below `threshold` for torus RGGs over an r0 grid.
inline ResultTable run_vanishing_entries(const ExperimentConfig& cfg) {
  const Config& c = cfg.params;
  c.require_known({"trials", "seed", "threads", "n", "r0", "threshold"});
  const int n = static_cast<int>(c.get_int("n", 100));
  const std::vector<double> radii =
      c.get_doubles("r0", {0.0, 0.05, 0.1, 0.15, 0.2, 0.25, 0.3, 0.4, 0.5, 0.6, 0.7, 0.75});
  const double threshold = c.get_double("threshold", 1e-10);
  detail::require(n >= 1, "n must be >= 1");
  detail::require(!radii.empty(), "r0 list must be nonempty");
  for (double r : radii) detail::require(r >= 0.0, "r0 values must be >= 0");
  detail::require(threshold > 0.0, "threshold must be > 0");

  const auto per_trial = detail::run_trials(cfg.trials, cfg.threads, [&](int t) {
    std::vector<double> pct;
    for (std::size_t i = 0; i < radii.size(); ++i) {
      const Graph g = generate_rgg_torus(n, radii[i], detail::trial_seed(cfg.master_seed, t, i));
      const SpectralBasis basis = graph_basis(g);
      const auto count = (basis.U.array().abs() < threshold).count();
      pct.push_back(100.0 * static_cast<double>(count) / static_cast<double>(basis.U.size()));
    }
    return pct;
  });

  ResultTable table = detail::start_table(cfg, {"r0", "vanishing_pct_mean", "vanishing_pct_sem"});
  for (std::size_t i = 0; i < radii.size(); ++i) {
    std::vector<double> v;
    for (const auto& trial : per_trial) v.push_back(trial[i]);
    table.add_row({radii[i], detail::mean(v), detail::sem(v)});
  }
  return table;
}

/// MSE of l1_recover on scale-free graphs versus the number of corrupted
/// vertices. Within a trial the corrupted sets are nested (prefixes of one
/// random permutation) and shared across bandwidths.
inline ResultTable run_l1_threshold(const ExperimentConfig& cfg) {
  const Config& c = cfg.params;
  c.require_known({"trials", "seed", "threads", "n", "attach", "bandwidths", "max_corrupted", "corrupted_step",
                   "amplitude_factor", "exact_tol"});
  const int n = static_cast<int>(c.get_int("n", 100));
  const int attach = static_cast<int>(c.get_int("attach", 2));
  const std::vector<int> bands = c.get_ints("bandwidths", {3, 5, 10});
  const int max_corrupted = static_cast<int>(c.get_int("max_corrupted", 80));
  const int step = static_cast<int>(c.get_int("corrupted_step", 2));
  const double factor = c.get_double("amplitude_factor", 10.0);
  const double exact_tol = c.get_double("exact_tol", 1e-10);
  detail::require(n > attach && attach >= 1, "need n > attach >= 1");
  detail::require(!bands.empty(), "bandwidths must be nonempty");
  for (int b : bands) detail::require(b >= 1 && b <= n, "bandwidths must lie in [1, n]");
  detail::require(max_corrupted >= 0 && max_corrupted <= n, "max_corrupted must lie in [0, n]");
  detail::require(step >= 1, "corrupted_step must be >= 1");
  detail::require(factor >= 0.0, "amplitude_factor must be >= 0");

  std::vector<int> counts;
  for (int k = 0; k <= max_corrupted; k += step) counts.push_back(k);

  const auto per_trial = detail::run_trials(cfg.trials, cfg.threads, [&](int t) {
    const Graph g = generate_scale_free(n, attach, detail::trial_seed(cfg.master_seed, t, 0));
    const SpectralBasis basis = graph_basis(g);
    Rng rng(detail::trial_seed(cfg.master_seed, t, 1));
    const std::vector<int> order = rng.sample_without_replacement(n, n);
    Vector unit_noise(n);
    for (int v = 0; v < n; ++v) unit_noise(v) = rng.uniform(-1.0, 1.0);
    std::vector<std::vector<double>> mse(bands.size());
    for (std::size_t b = 0; b < bands.size(); ++b) {
      const FrequencySet f = FrequencySet::first(bands[b]);
      Vector coeff(bands[b]);
      for (int i = 0; i < bands[b]; ++i) coeff(i) = rng.normal();
      const Vector s = basis.columns(f) * coeff;
      const double amp = factor * s.norm() / std::sqrt(static_cast<double>(n));
      for (int count : counts) {
        Vector r = s;
        for (int i = 0; i < count; ++i) r(order[static_cast<std::size_t>(i)]) += amp * unit_noise(order[static_cast<std::size_t>(i)]);
        const L1Solution sol = l1_recover(r, basis, f);
        mse[b].push_back((sol.s_hat - s).squaredNorm() / n);
      }
    }
    return mse;
  });

  ResultTable table = detail::start_table(cfg, {"bandwidth", "corrupted", "mse_mean", "mse_max", "exact_fraction"});
  for (std::size_t b = 0; b < bands.size(); ++b)
    for (std::size_t i = 0; i < counts.size(); ++i) {
      std::vector<double> v;
      int exact = 0;
      for (const auto& trial : per_trial) {
        v.push_back(trial[b][i]);
        exact += trial[b][i] < exact_tol;
      }
      table.add_row({double(bands[b]), double(counts[i]), detail::mean(v), *std::max_element(v.begin(), v.end()),
                     double(exact) / double(v.size())});
    }
  return table;
}

/// Longest prefix of corrupted counts (starting at 0) whose mse_mean stays
/// below tol, for one bandwidth of a run_l1_threshold table. Returns the last
/// count in that prefix, or -1 if even the uncorrupted case fails.
inline int l1_plateau(const ResultTable& t, int bandwidth, double tol = 1e-10) {
  int last = -1;
  for (std::size_t r = 0; r < t.size(); ++r) {
    if (static_cast<int>(t.number(r, "bandwidth")) != bandwidth) continue;
    if (!(t.number(r, "mse_mean") < tol)) break;
    last = static_cast<int>(t.number(r, "corrupted"));
  }
  return last;
}

/// NMSE of the concentrated-basis reconstruction (noise per node over noise
/// variance) for each selection method and sample count on scale-free
/// graphs. Noise draws are shared by all methods within a trial.
inline ResultTable run_strategy_comparison(const ExperimentConfig& cfg) {
  const Config& c = cfg.params;
  c.require_known({"trials", "seed", "threads", "n", "attach", "bandwidth", "samples", "methods", "noise_draws",
                   "noise_var", "exhaustive_limit"});
  const int n = static_cast<int>(c.get_int("n", 30));
  const int attach = static_cast<int>(c.get_int("attach", 2));
  const int band = static_cast<int>(c.get_int("bandwidth", 5));
  const std::vector<int> samples = c.get_ints("samples", {5, 6, 7, 8, 9, 10, 11, 12, 13, 14, 15});
  const std::vector<std::string> method_names =
      c.get_strings("methods", {"random", "minpinv", "maxfro", "maxvol", "maxsigmin", "exhaustive"});
  const int draws = static_cast<int>(c.get_int("noise_draws", 200));
  const double noise_var = c.get_double("noise_var", 1.0);
  const double exhaustive_limit = c.get_double("exhaustive_limit", kMaxExhaustiveSubsets);
  detail::require(n > attach && attach >= 1, "need n > attach >= 1");
  detail::require(band >= 1 && band <= n, "bandwidth must lie in [1, n]");
  detail::require(!samples.empty(), "samples must be nonempty");
  for (int m : samples) detail::require(m >= 1 && m <= n, "sample counts must lie in [1, n]");
  detail::require(draws >= 1, "noise_draws must be >= 1");
  detail::require(noise_var > 0.0, "noise_var must be > 0");
  std::vector<SelectionMethod> methods;
  for (const auto& name : method_names) {
    const auto m = parse_selection_method(name);
    detail::require(m.has_value(), "unknown method '" + name + "'");
    methods.push_back(*m);
  }

  struct Cellv {
    double nmse = std::nan("");
    double predicted = std::nan("");
    bool ok = false;
  };
  const auto per_trial = detail::run_trials(cfg.trials, cfg.threads, [&](int t) {
    const Graph g = generate_scale_free(n, attach, detail::trial_seed(cfg.master_seed, t, 0));
    const SpectralBasis basis = graph_basis(g);
    const FrequencySet f = FrequencySet::first(band);
    const Matrix ut = basis.columns(f).transpose();
    Rng noise_rng(detail::trial_seed(cfg.master_seed, t, 1));
    Matrix noise(n, draws);
    const double sd = std::sqrt(noise_var);
    for (int d = 0; d < draws; ++d)
      for (int v = 0; v < n; ++v) noise(v, d) = sd * noise_rng.normal();
    // One seed for every M: random sets are then nested prefixes of one draw.
    const std::uint64_t random_seed = detail::trial_seed(cfg.master_seed, t, 2);
    std::vector<std::vector<Cellv>> out(methods.size(), std::vector<Cellv>(samples.size()));
    for (std::size_t mi = 0; mi < methods.size(); ++mi)
      for (std::size_t si = 0; si < samples.size(); ++si) {
        const int m = samples[si];
        if (methods[mi] == SelectionMethod::Exhaustive && binomial(n, m) > exhaustive_limit) continue;
        const SelectionResult sel = select(methods[mi], ut, m, random_seed);
        const ProjectorPair p(basis, sel.sample_set, f);
        const ConcentratedBasis cb = concentrated_basis(p);
        Cellv cell;
        if (cb.sigma_sq.minCoeff() > kRankTol) {
          const Matrix sampled = p.mask().asDiagonal() * noise;
          const Matrix err = cb.psi * (cb.sigma_sq.cwiseInverse().asDiagonal() * (cb.psi.transpose() * sampled));
          cell.nmse = err.squaredNorm() / (static_cast<double>(draws) * n * noise_var);
          cell.predicted = predicted_mse(cb, 1.0) / n;
          cell.ok = true;
        }
        out[mi][si] = cell;
      }
    return out;
  });

  ResultTable table =
      detail::start_table(cfg, {"method", "samples", "nmse_mean", "nmse_sem", "predicted_nmse_mean", "trials_used", "failures"});
  for (std::size_t mi = 0; mi < methods.size(); ++mi)
    for (std::size_t si = 0; si < samples.size(); ++si) {
      if (methods[mi] == SelectionMethod::Exhaustive && binomial(n, samples[si]) > exhaustive_limit) continue;
      std::vector<double> v, pred;
      for (const auto& trial : per_trial)
        if (trial[mi][si].ok) {
          v.push_back(trial[mi][si].nmse);
          pred.push_back(trial[mi][si].predicted);
        }
      table.add_row({std::string(to_string(methods[mi])), double(samples[si]), detail::mean(v), detail::sem(v),
                     detail::mean(pred), double(v.size()), double(cfg.trials - static_cast<int>(v.size()))});
    }
  return table;
}

/// Frame reconstruction with local-set frames of radius r1 on torus RGGs,
/// over a grid of r1 / r0. `nmse_index` is predicted_mse_frame per node (the
/// trace form of the frame operator's pseudo-inverse); `nmse_true` is the
/// expected error of recover_frame per node. A trial enters a (strategy, M)
/// curve only if its frame is invertible at every grid point.
inline ResultTable run_frame_radius_sweep(const ExperimentConfig& cfg) {
  const Config& c = cfg.params;
  c.require_known({"trials", "seed", "threads", "n", "r0", "bandwidth", "samples", "strategies", "ratio_max",
                   "ratio_points"});
  const int n = static_cast<int>(c.get_int("n", 100));
  const double r0 = c.get_double("r0", 0.1883);
  const int band = static_cast<int>(c.get_int("bandwidth", 10));
  const std::vector<int> samples = c.get_ints("samples", {10, 15, 20});
  const std::vector<std::string> names = c.get_strings("strategies", {"random", "maxvol"});
  const double ratio_max = c.get_double("ratio_max", 2.0);
  const int points = static_cast<int>(c.get_int("ratio_points", 12));
  detail::require(n >= 2, "n must be >= 2");
  detail::require(r0 > 0.0, "r0 must be > 0");
  detail::require(band >= 1 && band <= n, "bandwidth must lie in [1, n]");
  detail::require(!samples.empty(), "samples must be nonempty");
  for (int m : samples) detail::require(m >= 1 && m <= n, "sample counts must lie in [1, n]");
  detail::require(ratio_max >= 0.0, "ratio_max must be >= 0");
  detail::require(points >= 2, "ratio_points must be >= 2");
  std::vector<SelectionMethod> methods;
  for (const auto& name : names) {
    const auto m = parse_selection_method(name);
    detail::require(m.has_value() && *m != SelectionMethod::Exhaustive, "unsupported strategy '" + name + "'");
    methods.push_back(*m);
  }
  std::vector<double> ratios;
  for (int i = 0; i < points; ++i) ratios.push_back(ratio_max * i / (points - 1));

  struct Curve {
    bool ok = false;
    std::vector<double> index, truth;
  };
  const auto per_trial = detail::run_trials(cfg.trials, cfg.threads, [&](int t) {
    const Graph g = generate_rgg_torus(n, r0, detail::trial_seed(cfg.master_seed, t, 0));
    const SpectralBasis basis = graph_basis(g);
    const FrequencySet f = FrequencySet::first(band);
    const Matrix ut = basis.columns(f).transpose();
    const std::uint64_t random_seed = detail::trial_seed(cfg.master_seed, t, 2);
    std::vector<std::vector<Curve>> out(methods.size(), std::vector<Curve>(samples.size()));
    for (std::size_t mi = 0; mi < methods.size(); ++mi)
      for (std::size_t si = 0; si < samples.size(); ++si) {
        const SelectionResult sel = select(methods[mi], ut, samples[si], random_seed);
        const ProjectorPair p(basis, sel.sample_set, f);
        Curve curve;
        curve.ok = true;
        for (double ratio : ratios) {
          const FrameSpec spec = local_set_frame(g, sel.sample_set, ratio * r0, p);
          if (!frame_analysis(p, spec).invertible) {
            curve.ok = false;
            break;
          }
          curve.index.push_back(predicted_mse_frame(p, spec, 1.0) / n);
          curve.truth.push_back(frame_noise_mse(p, spec, 1.0) / n);
        }
        out[mi][si] = std::move(curve);
      }
    return out;
  });

  ResultTable table =
      detail::start_table(cfg, {"strategy", "samples", "r1_ratio", "nmse_index_mean", "nmse_index_sem", "nmse_true_mean", "trials_used"});
  for (std::size_t mi = 0; mi < methods.size(); ++mi)
    for (std::size_t si = 0; si < samples.size(); ++si)
      for (std::size_t ri = 0; ri < ratios.size(); ++ri) {
        std::vector<double> idx, tru;
        for (const auto& trial : per_trial) {
          const Curve& cv = trial[mi][si];
          if (!cv.ok) continue;
          idx.push_back(cv.index[ri]);
          tru.push_back(cv.truth[ri]);
        }
        table.add_row({std::string(to_string(methods[mi])), double(samples[si]), ratios[ri], detail::mean(idx),
                       detail::sem(idx), detail::mean(tru), double(idx.size())});
      }
  return table;
}

/// The four boundary curves of the uncertainty region over an alpha grid,
/// for random (graph, S, F) instances, with the measured (alpha, beta) of
/// the extremal vector wherever alpha >= sigma_max(BD).
inline ResultTable run_uncertainty_boundary(const ExperimentConfig& cfg) {
  const Config& c = cfg.params;
  c.require_known({"trials", "seed", "threads", "graph", "n", "r0", "attach", "s_size", "bandwidth", "alpha_points"});
  const std::string kind = c.get_string("graph", "rgg");
  const int n = static_cast<int>(c.get_int("n", 30));
  const double r0 = c.get_double("r0", 0.35);
  const int attach = static_cast<int>(c.get_int("attach", 2));
  const int s_size = static_cast<int>(c.get_int("s_size", 10));
  const int band = static_cast<int>(c.get_int("bandwidth", 5));
  const int points = static_cast<int>(c.get_int("alpha_points", 101));
  detail::require(kind == "rgg" || kind == "sf", "graph must be 'rgg' or 'sf'");
  detail::require(n >= 2, "n must be >= 2");
  detail::require(s_size >= 1 && s_size <= n, "s_size must lie in [1, n]");
  detail::require(band >= 1 && band <= n, "bandwidth must lie in [1, n]");
  detail::require(points >= 2, "alpha_points must be >= 2");

  const auto per_trial = detail::run_trials(cfg.trials, cfg.threads, [&](int t) {
    const Graph g = detail::make_graph(kind, n, r0, attach, detail::trial_seed(cfg.master_seed, t, 0));
    const SpectralBasis basis = graph_basis(g);
    Rng rng(detail::trial_seed(cfg.master_seed, t, 1));
    const ProjectorPair p(basis, VertexSet(rng.sample_without_replacement(n, s_size)), FrequencySet::first(band));
    const UncertaintyCorners cs = corners(p);
    const ConcentratedBasis cb = concentrated_basis(p);
    const bool degenerate = cs.s_bd >= 1.0 - 1e-10 || cs.s_bd <= 1e-12;
    std::vector<std::vector<Cell>> rows;
    for (int i = 0; i < points; ++i) {
      const double alpha = static_cast<double>(i) / (points - 1);
      const RegionBoundary rb = region_boundary(alpha, cs);
      double ext_alpha = std::nan(""), ext_beta = std::nan(""), err = std::nan("");
      if (!degenerate && alpha >= cs.s_bd) {
        const ExtremalVector ev = extremal_vector(cb, p, alpha);
        ext_alpha = ev.alpha;
        ext_beta = ev.beta;
        err = std::max(std::abs(ev.alpha - alpha), std::abs(ev.beta - rb.upper_right));
        if (err > 1e-7) throw Error(ErrorCode::ConvergenceFailure, "extremal vector misses the boundary");
      }
      rows.push_back({double(t), alpha, rb.upper_right, rb.upper_left, rb.lower_right, rb.lower_left, ext_alpha,
                      ext_beta, err, cs.s_bd, cs.s_bdc, cs.s_bcd, cs.s_bcdc});
    }
    return rows;
  });

  ResultTable table = detail::start_table(
      cfg, {"instance", "alpha", "beta_upper_right", "beta_upper_left", "beta_lower_right", "beta_lower_left",
            "extremal_alpha", "extremal_beta", "extremal_error", "sigma_bd", "sigma_bdc", "sigma_bcd", "sigma_bcdc"});
  for (const auto& trial : per_trial)
    for (const auto& row : trial) table.add_row(row);
  return table;
}

inline int default_trials(Experiment e) {
  switch (e) {
    case Experiment::SpilloverBandwidth: return 20;
    case Experiment::VanishingEntries: return 100;
    case Experiment::L1Threshold: return 50;
    case Experiment::StrategyComparison: return 50;
    case Experiment::FrameRadiusSweep: return 30;
    case Experiment::UncertaintyBoundary: return 1;
  }
  return 1;
}

inline ResultTable run_experiment(const ExperimentConfig& cfg) {
  switch (cfg.experiment) {
    case Experiment::SpilloverBandwidth: return run_spillover_bandwidth(cfg);
    case Experiment::VanishingEntries: return run_vanishing_entries(cfg);
    case Experiment::L1Threshold: return run_l1_threshold(cfg);
    case Experiment::StrategyComparison: return run_strategy_comparison(cfg);
    case Experiment::FrameRadiusSweep: return run_frame_radius_sweep(cfg);
    case Experiment::UncertaintyBoundary: return run_uncertainty_boundary(cfg);
  }
  throw Error(ErrorCode::ConfigError, "unknown experiment");
}

/// Builds the config, runs it, and optionally appends the wall time as
/// metadata (off by default so reruns are byte-identical).
inline ResultTable run_experiment(Experiment e, Config params, std::optional<std::uint64_t> seed = std::nullopt,
                                  bool record_wall_time = false) {
  const ExperimentConfig cfg = make_experiment_config(e, std::move(params), default_trials(e), seed);
  const auto start = std::chrono::steady_clock::now();
  ResultTable table = run_experiment(cfg);
  if (record_wall_time) {
    const std::chrono::duration<double> dt = std::chrono::steady_clock::now() - start;
    table.add_metadata("wall_time_s", format_number(dt.count()));
  }
  return table;
}

}  // namespace gsp
