// gsl: command-line front end for the gsp library.
//
//   gsl run <experiment> --config cfg.txt [--seed S] [--out table.csv]
//   gsl select --graph g.txt --bandwidth K --method maxvol --samples M
//   gsl recover --graph g.txt --bandwidth K --input samples.csv
//   gsl l1-recover --graph g.txt --bandwidth K --input signal.csv
//   gsl mse-predict --graph g.txt --bandwidth K --set 0,3,7
//   gsl region --graph g.txt --bandwidth K --set 0,3,7
//
// Exit status: 0 success, 2 bad input or config, 3 numerical failure.

#include <CLI11.hpp>
#include <json.hpp>

#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "gsp/gsp.hpp"

namespace {

using nlohmann::json;

struct Outputs {
  std::string out;          // CSV destination, "-" = stdout
  std::string diagnostics;  // JSON-lines destination, "-" = stderr
};

class Sink {
 public:
  explicit Sink(const std::string& path, std::ostream& fallback) : os_(&fallback) {
    if (!path.empty() && path != "-") {
      file_.open(path);
      if (!file_) throw gsp::Error(gsp::ErrorCode::ConfigError, "cannot write " + path);
      os_ = &file_;
    }
  }
  std::ostream& operator*() { return *os_; }

 private:
  std::ofstream file_;
  std::ostream* os_;
};

struct SpectrumArgs {
  std::string graph;
  int bandwidth = 0;
  std::string frequencies;
  std::string laplacian = "combinatorial";
};

void add_spectrum_options(CLI::App* cmd, SpectrumArgs& a) {
  cmd->add_option("--graph", a.graph, "edge-list file")->required();
  auto* bw = cmd->add_option("--bandwidth", a.bandwidth, "use the K lowest frequencies");
  auto* fr = cmd->add_option("--frequencies", a.frequencies, "comma-separated frequency indices");
  bw->excludes(fr);
  cmd->add_option("--laplacian", a.laplacian, "combinatorial or normalized")
      ->check(CLI::IsMember({"combinatorial", "normalized"}));
}

std::vector<int> parse_id_list(const std::string& s, const char* what) {
  std::vector<int> ids;
  if (gsp::detail::trim(s).empty()) return ids;
  for (const auto& tok : gsp::detail::split(s, ','))
    ids.push_back(static_cast<int>(gsp::detail::parse_integer(what, tok)));
  return ids;
}

struct Problem {
  gsp::Graph graph;
  gsp::SpectralBasis basis;
  gsp::FrequencySet band;
};

Problem load_problem(const SpectrumArgs& a) {
  gsp::Graph g = gsp::load_edge_list(a.graph);
  const auto kind = a.laplacian == "normalized" ? gsp::LaplacianKind::Normalized : gsp::LaplacianKind::Combinatorial;
  gsp::SpectralBasis basis = gsp::graph_basis(g, kind);
  gsp::FrequencySet f;
  if (!a.frequencies.empty()) {
    f = gsp::FrequencySet(parse_id_list(a.frequencies, "frequency"));
  } else {
    if (a.bandwidth < 1 || a.bandwidth > g.size())
      throw gsp::Error(gsp::ErrorCode::ConfigError, "--bandwidth must lie in [1, n] (or pass --frequencies)");
    f = gsp::FrequencySet::first(a.bandwidth);
  }
  f.check_bounds(g.size(), "frequency");
  if (f.empty()) throw gsp::Error(gsp::ErrorCode::ConfigError, "empty frequency set");
  return {std::move(g), std::move(basis), std::move(f)};
}

json to_json(const gsp::VertexSet& s) { return json(s.ids()); }

int exit_code(const gsp::Error& e) { return gsp::is_numerical(e.code()) ? 3 : 2; }

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"graph signal sampling, recovery and localization tools"};
  app.require_subcommand(1);
  app.set_version_flag("--version", gsp::kVersion);

  // run
  std::string exp_name, config_path;
  std::optional<std::uint64_t> seed;
  std::optional<int> threads;
  bool timing = false;
  Outputs run_out;
  auto* run = app.add_subcommand("run", "run a numerical experiment and write its table as CSV");
  run->add_option("experiment", exp_name, "spillover-bandwidth | vanishing-entries | l1-threshold | "
                  "strategy-comparison | frame-radius-sweep | uncertainty-boundary")->required();
  run->add_option("--config", config_path, "key=value config file");
  run->add_option("--seed", seed, "master seed (overrides the config)");
  run->add_option("--threads", threads, "worker threads (overrides the config)");
  run->add_option("--out", run_out.out, "output CSV (default stdout)");
  run->add_flag("--timing", timing, "record wall time in the metadata");

  // select
  SpectrumArgs sel_args;
  std::string method_name;
  int sample_count = 0;
  std::uint64_t sel_seed = 1;
  Outputs sel_out;
  auto* sel = app.add_subcommand("select", "choose a sampling set");
  add_spectrum_options(sel, sel_args);
  sel->add_option("--method", method_name, "minpinv | maxfro | maxvol | maxsigmin | random | exhaustive")->required();
  sel->add_option("--samples", sample_count, "number of vertices to pick")->required();
  sel->add_option("--seed", sel_seed, "seed for the random method");
  sel->add_option("--out", sel_out.out, "output CSV (default stdout)");

  // recover
  SpectrumArgs rec_args;
  std::string rec_input, rec_method = "inverse", truth_path;
  double local_radius = -1.0;
  Outputs rec_out;
  auto* rec = app.add_subcommand("recover", "reconstruct a band-limited signal from vertex samples");
  add_spectrum_options(rec, rec_args);
  rec->add_option("--input", rec_input, "samples CSV (vertex,value)")->required();
  rec->add_option("--method", rec_method, "inverse | concentrated | frame")
      ->check(CLI::IsMember({"inverse", "concentrated", "frame"}));
  rec->add_option("--local-radius", local_radius, "frame method: local-set radius (needs coordinates)");
  rec->add_option("--truth", truth_path, "full signal CSV to report the relative error against");
  rec->add_option("--out", rec_out.out, "recovered signal CSV (default stdout)");
  rec->add_option("--diagnostics", rec_out.diagnostics, "JSON-lines diagnostics (default stderr)");

  // l1-recover
  SpectrumArgs l1_args;
  std::string l1_input;
  Outputs l1_out;
  auto* l1 = app.add_subcommand("l1-recover", "remove sparse corruption from a band-limited signal");
  add_spectrum_options(l1, l1_args);
  l1->add_option("--input", l1_input, "observed signal CSV (vertex,value), every vertex")->required();
  l1->add_option("--out", l1_out.out, "recovered signal CSV (default stdout)");
  l1->add_option("--diagnostics", l1_out.diagnostics, "JSON-lines diagnostics (default stderr)");

  // mse-predict
  SpectrumArgs mse_args;
  std::string mse_set;
  double noise_var = 1.0;
  auto* mse = app.add_subcommand("mse-predict", "predicted reconstruction MSE under white sample noise");
  add_spectrum_options(mse, mse_args);
  mse->add_option("--set", mse_set, "comma-separated sample vertices")->required();
  mse->add_option("--noise-var", noise_var, "noise variance")->check(CLI::NonNegativeNumber);

  // region
  SpectrumArgs reg_args;
  std::string reg_set;
  int points = 101;
  Outputs reg_out;
  auto* reg = app.add_subcommand("region", "boundary of the admissible (alpha, beta) region as CSV");
  add_spectrum_options(reg, reg_args);
  reg->add_option("--set", reg_set, "comma-separated vertex set")->required();
  reg->add_option("--points", points, "alpha grid size")->check(CLI::Range(2, 1000000));
  reg->add_option("--out", reg_out.out, "output CSV (default stdout)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? 0 : 2;
  }

  try {
    if (*run) {
      const auto e = gsp::parse_experiment(exp_name);
      if (!e) throw gsp::Error(gsp::ErrorCode::ConfigError, "unknown experiment '" + exp_name + "'");
      gsp::Config cfg = config_path.empty() ? gsp::Config() : gsp::Config::load(config_path);
      if (threads) cfg.set("threads", std::to_string(*threads));
      const gsp::ResultTable table = gsp::run_experiment(*e, std::move(cfg), seed, timing);
      Sink sink(run_out.out, std::cout);
      table.write_csv(*sink);
    } else if (*sel) {
      const auto m = gsp::parse_selection_method(method_name);
      if (!m) throw gsp::Error(gsp::ErrorCode::ConfigError, "unknown method '" + method_name + "'");
      const Problem pr = load_problem(sel_args);
      const gsp::Matrix ut = pr.basis.columns(pr.band).transpose();
      const gsp::SelectionResult r = gsp::select(*m, ut, sample_count, sel_seed);
      Sink sink(sel_out.out, std::cout);
      *sink << "order,vertex,score\n";
      for (std::size_t i = 0; i < r.order.size(); ++i) {
        const double score = r.score_trace.size() == r.order.size() ? r.score_trace[i] : r.score_trace.back();
        *sink << i << ',' << r.order[i] << ',' << gsp::format_number(score) << '\n';
      }
    } else if (*rec) {
      const Problem pr = load_problem(rec_args);
      const gsp::SampledSignal xs = gsp::to_samples(gsp::load_vertex_values(rec_input), pr.graph.size());
      const gsp::ProjectorPair p(pr.basis, xs.sample_set(), pr.band);
      std::optional<gsp::Vector> truth;
      if (!truth_path.empty()) truth = gsp::to_signal(gsp::load_vertex_values(truth_path), pr.graph.size());
      gsp::RecoveryMethod method = gsp::RecoveryMethod::Inverse;
      std::optional<gsp::FrameSpec> frame;
      if (rec_method == "concentrated") method = gsp::RecoveryMethod::Concentrated;
      if (rec_method == "frame") {
        method = gsp::RecoveryMethod::Frame;
        if (local_radius >= 0.0) frame = gsp::local_set_frame(pr.graph, xs.sample_set(), local_radius, p);
      }
      const gsp::RecoveryReport report = gsp::recover(xs, p, method, truth, frame);
      {
        Sink sink(rec_out.out, std::cout);
        gsp::write_signal(*sink, report.x_hat);
      }
      json diag{{"method", rec_method},
                {"samples", to_json(xs.sample_set())},
                {"predicted_mse_per_unit_noise", report.predicted_mse},
                {"condition", report.condition}};
      if (truth) diag["relative_error"] = report.relative_error;
      Sink dsink(rec_out.diagnostics, std::cerr);
      *dsink << diag.dump() << '\n';
    } else if (*l1) {
      const Problem pr = load_problem(l1_args);
      const gsp::Vector r = gsp::to_signal(gsp::load_vertex_values(l1_input), pr.graph.size());
      const gsp::L1Solution sol = gsp::l1_recover(r, pr.basis, pr.band);
      {
        Sink sink(l1_out.out, std::cout);
        gsp::write_signal(*sink, sol.s_hat);
      }
      const json diag{{"objective", sol.objective},
                      {"certified", sol.certified},
                      {"iterations", sol.iterations},
                      {"support", to_json(gsp::residual_support(r, sol.s_hat))}};
      Sink dsink(l1_out.diagnostics, std::cerr);
      *dsink << diag.dump() << '\n';
    } else if (*mse) {
      const Problem pr = load_problem(mse_args);
      const gsp::ProjectorPair p(pr.basis, gsp::VertexSet(parse_id_list(mse_set, "vertex")), pr.band);
      const gsp::ConcentratedBasis cb = gsp::concentrated_basis(p);
      const double value = gsp::predicted_mse(cb, noise_var);
      const json out{{"predicted_mse", value},
                     {"noise_var", noise_var},
                     {"samples", to_json(p.vertices())},
                     {"sigma_sq", std::vector<double>(cb.sigma_sq.data(), cb.sigma_sq.data() + cb.sigma_sq.size())}};
      std::cout << out.dump() << '\n';
    } else if (*reg) {
      const Problem pr = load_problem(reg_args);
      const gsp::ProjectorPair p(pr.basis, gsp::VertexSet(parse_id_list(reg_set, "vertex")), pr.band);
      const gsp::UncertaintyCorners cs = gsp::corners(p);
      gsp::ResultTable t({"alpha", "beta_upper_right", "beta_upper_left", "beta_lower_right", "beta_lower_left"});
      t.add_metadata("sigma_bd", gsp::format_number(cs.s_bd));
      t.add_metadata("sigma_bdc", gsp::format_number(cs.s_bdc));
      t.add_metadata("sigma_bcd", gsp::format_number(cs.s_bcd));
      t.add_metadata("sigma_bcdc", gsp::format_number(cs.s_bcdc));
      for (int i = 0; i < points; ++i) {
        const double alpha = static_cast<double>(i) / (points - 1);
        const gsp::RegionBoundary b = gsp::region_boundary(alpha, cs);
        t.add_row({alpha, b.upper_right, b.upper_left, b.lower_right, b.lower_left});
      }
      Sink sink(reg_out.out, std::cout);
      t.write_csv(*sink);
    }
  } catch (const gsp::Error& e) {
    std::cerr << "gsl: " << gsp::to_string(e.code()) << ": " << e.what() << '\n';
    return exit_code(e);
  } catch (const std::exception& e) {
    std::cerr << "gsl: " << e.what() << '\n';
    return 2;
  }
  return 0;
}
