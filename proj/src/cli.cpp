#include "effham/cli.hpp"

#include <algorithm>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>

#include <CLI11.hpp>
#include <json.hpp>

#include "effham/analysis.hpp"
#include "effham/bch_reference.hpp"
#include "effham/config.hpp"
#include "effham/errors.hpp"
#include "effham/io.hpp"
#include "effham/kernels.hpp"
#include "effham/learner.hpp"
#include "effham/simulator.hpp"

namespace effham {

namespace {

namespace fs = std::filesystem;
using nlohmann::json;

std::string ckpt_name(int m) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "ckpt_%04d.state", m);
  return buf;
}

json config_to_json(const ExperimentConfig& c) {
  json j;
  j["chain"] = {{"L", c.chain.L},
                {"J_z", c.chain.J_z},
                {"h_z", c.chain.h_z},
                {"h_x", c.chain.h_x}};
  j["state"] = {{"theta_y", c.theta_y}};
  j["ada"] = {{"d_E", c.ada.d_E},
              {"d_var", c.ada.d_var},
              {"M", c.ada.M},
              {"tau_min", c.ada.tau_min},
              {"tau_max", c.ada.tau_max},
              {"search_resolution", c.ada.search_resolution}};
  j["adam"] = {{"alpha", c.adam.alpha},
               {"beta1", c.adam.beta1},
               {"beta2", c.adam.beta2},
               {"eps", c.adam.eps},
               {"l_min", c.adam.l_min},
               {"max_epochs", c.adam.max_epochs},
               {"degeneracy_gap", c.adam.degeneracy_gap},
               {"jitter_scale", c.adam.jitter_scale}};
  j["basis"] = {{"R", c.basis.max_support},
                {"parity_filter", c.basis.parity_filter},
                {"interior_identity", c.basis.allow_interior_identity},
                {"truncate_N", c.truncate_N},
                {"ranking_file", c.ranking_file}};
  j["learn"] = {{"stride", c.learn.stride},
                {"max_checkpoints", c.learn.max_checkpoints},
                {"rdm_window", c.rdm_window}};
  j["bch"] = {{"tau", c.bch_tau}, {"extract", c.bch_extract}};
  j["run"] = {{"out_dir", c.out_dir}, {"seed", c.seed}};
  return j;
}

void write_text_file(const fs::path& path, const std::string& text) {
  std::ofstream f(path, std::ios::binary);
  if (!f) throw ConfigError("cannot write '" + path.string() + "'");
  f << text;
}

void write_manifest(const fs::path& dir, const json& j) {
  write_text_file(dir / "manifest.json", j.dump(2) + "\n");
}

json read_manifest(const fs::path& dir) {
  std::ifstream f(dir / "manifest.json");
  if (!f)
    throw ConfigError("missing manifest.json in '" + dir.string() + "'");
  json j;
  f >> j;
  return j;
}

ChainParams chain_from_manifest(const json& j) {
  const auto& c = j.at("config").at("chain");
  ChainParams p;
  p.L = c.at("L").get<int>();
  p.J_z = c.at("J_z").get<double>();
  p.h_z = c.at("h_z").get<double>();
  p.h_x = c.at("h_x").get<double>();
  return p;
}

AdaTrajectory load_trajectory_dir(const fs::path& dir) {
  const json man = read_manifest(dir);
  AdaTrajectory traj;
  traj.params = chain_from_manifest(man);
  traj.E_ref = man.at("E_ref").get<double>();
  traj.dE2_ref = man.at("dE2_ref").get<double>();
  traj.initial = load_state_file((dir / "initial.state").string());

  std::ifstream csv(dir / "trajectory.csv");
  if (!csv)
    throw ConfigError("missing trajectory.csv in '" + dir.string() + "'");
  traj.steps = io::read_trajectory_csv(csv);
  for (const auto& s : traj.steps) {
    const fs::path p = dir / ckpt_name(s.m);
    if (!fs::exists(p))
      throw ConfigError("missing checkpoint '" + p.string() + "'");
    traj.checkpoints.push_back(load_state_file(p.string()));
  }
  return traj;
}

OperatorBasis build_configured_basis(const ExperimentConfig& cfg) {
  OperatorBasis basis = build_basis(cfg.basis);
  if (cfg.truncate_N > 0) {
    std::ifstream rf(cfg.ranking_file);
    if (!rf)
      throw ConfigError("cannot open ranking file '" + cfg.ranking_file + "'");
    basis = truncate_basis(basis, io::read_ranking_csv(rf), cfg.truncate_N);
  }
  return basis;
}

std::vector<std::string> basis_labels(const OperatorBasis& basis) {
  std::vector<std::string> labels;
  labels.reserve(basis.elements.size());
  for (const auto& el : basis.elements) labels.push_back(el.label);
  return labels;
}

json bch_to_json(const BchCoefficients& c) {
  return json{{"C_X", c.C_X},   {"C_Z", c.C_Z},   {"C_ZZ", c.C_ZZ},
              {"C_YY", c.C_YY}, {"C_ZX", c.C_ZX}, {"C_ZXZ", c.C_ZXZ}};
}

int cmd_run_ada(const ExperimentConfig& cfg) {
  const fs::path out = cfg.out_dir;
  fs::create_directories(out);

  StateVector psi0 = initial_state(cfg.chain.L, cfg.theta_y);
  AdaTrajectory traj;
  int failed_step = 0;  // 0 = completed
  try {
    traj = run_ada(psi0, cfg.ada, cfg.chain);
  } catch (const StepNotFound& e) {
    if (!e.partial) throw;
    traj = *e.partial;
    failed_step = e.step_index;
  }

  {
    std::ofstream csv(out / "trajectory.csv", std::ios::binary);
    io::write_trajectory_csv(csv, traj.steps);
  }
  save_state_file((out / "initial.state").string(), traj.initial);
  for (std::size_t i = 0; i < traj.checkpoints.size(); ++i)
    save_state_file((out / ckpt_name(traj.steps[i].m)).string(),
                    traj.checkpoints[i]);

  json man;
  man["kind"] = "run-ada";
  man["config"] = config_to_json(cfg);
  man["E_ref"] = traj.E_ref;
  man["dE2_ref"] = traj.dE2_ref;
  man["steps_completed"] = traj.steps.size();
  man["completed"] = failed_step == 0;
  if (failed_step > 0) man["failed_step"] = failed_step;
  if (!traj.steps.empty()) man["tau_mean"] = mean_tau(traj);
  write_manifest(out, man);

  if (failed_step > 0) {
    std::cerr << "run-ada: no admissible step at step " << failed_step
              << "; partial trajectory written to " << out << "\n";
    return 3;
  }
  std::cout << "run-ada: " << traj.steps.size() << " steps, mean tau "
            << io::format_double(mean_tau(traj)) << ", output in " << out
            << "\n";
  return 0;
}

int cmd_learn(const ExperimentConfig& cfg, const std::string& traj_dir) {
  const fs::path out = cfg.out_dir;
  fs::create_directories(out);

  AdaTrajectory traj = load_trajectory_dir(traj_dir);
  OperatorBasis basis = build_configured_basis(cfg);
  const auto labels = basis_labels(basis);
  const auto ops = realize_basis(basis, traj.params.L);

  AdamConfig adam = cfg.adam;
  adam.rng_seed = cfg.seed;
  const std::vector<LearnRecord> records =
      learn_trajectory(traj, ops, adam, cfg.learn);

  {
    std::ofstream csv(out / "learn.csv", std::ios::binary);
    io::write_learn_csv(csv, records, labels);
  }

  const DeviationStats stats = deviation_stats(records, labels, traj.params);
  {
    std::ofstream csv(out / "deviations.csv", std::ios::binary);
    io::write_deviations_csv(csv, stats);
  }

  std::vector<double> times;
  for (const auto& r : records) times.push_back(r.t);
  const std::vector<double> rdm_err =
      rdm_error_series(traj, records, ops, cfg.rdm_window);
  {
    std::ofstream csv(out / "rdm_error.csv", std::ios::binary);
    io::write_series_csv(csv, "rdm_err", times, rdm_err);
  }

  json man;
  man["kind"] = "learn";
  man["config"] = config_to_json(cfg);
  man["trajectory_dir"] = traj_dir;
  man["labels"] = labels;
  man["records"] = records.size();
  man["tau_mean"] = mean_tau(traj);

  std::vector<double> loss_last, loss_best;
  for (const auto& r : records) {
    loss_best.push_back(r.loss);
    loss_last.push_back(r.loss_last);
  }
  man["loss_best"] = loss_best;
  man["loss_last_epoch"] = loss_last;

  json dev;
  for (std::size_t a = 0; a < labels.size(); ++a) {
    dev[labels[a]] = {
        {"mean_full", stats.mean_full[(Eigen::Index)a]},
        {"max", stats.max_dev[(Eigen::Index)a]},
    };
    if (!std::isnan(stats.mean_post5[(Eigen::Index)a]))
      dev[labels[a]]["mean_post5"] = stats.mean_post5[(Eigen::Index)a];
  }
  man["deviation_summary"] = dev;

  if (records.size() >= 8) {
    const SlopeFit fit = fit_slope(records);
    man["slope"] = {{"gamma", fit.gamma},
                    {"intercept", fit.intercept},
                    {"residual_norm", fit.residual_norm},
                    {"window_start", fit.window_start}};
  }

  if (records.size() >= 2) {
    const auto curves = distribution_export(stats, 0.0);
    std::ofstream dens(out / "violin_density.csv", std::ios::binary);
    std::ofstream samp(out / "violin_samples.csv", std::ios::binary);
    io::write_violin_csv(dens, samp, curves);
    json bw;
    for (const auto& c : curves)
      bw[c.label] = {{"bandwidth", c.bandwidth}, {"degenerate", c.degenerate}};
    man["violin"] = bw;
  }

  write_manifest(out, man);
  std::cout << "learn: " << records.size() << " checkpoints, final loss "
            << io::format_double(records.back().loss) << ", output in " << out
            << "\n";
  return 0;
}

int cmd_bch(const ExperimentConfig& cfg, const std::string& traj_dir) {
  const fs::path out = cfg.out_dir;
  fs::create_directories(out);

  double tau = cfg.bch_tau;
  ChainParams p = cfg.chain;
  json man;
  if (tau <= 0) {
    if (traj_dir.empty())
      throw ConfigError("bch: need either [bch] tau > 0 or --traj");
    AdaTrajectory traj = load_trajectory_dir(traj_dir);
    p = traj.params;
    tau = mean_tau(traj);
    man["tau_source"] = "trajectory mean";
  } else {
    man["tau_source"] = "config";
  }

  json cmp;
  cmp["tau_mean"] = tau;
  cmp["bch"] = bch_to_json(bch_coefficients(tau, p));

  // Centroid of the learned coefficients over the six coupling classes,
  // when a learn table sits next to the trajectory.
  cmp["learned_cluster_centroid"] = json::object();
  if (!traj_dir.empty() && fs::exists(fs::path(traj_dir) / "learn.csv")) {
    std::ifstream f(fs::path(traj_dir) / "learn.csv");
    io::LearnTable table = io::read_learn_csv(f);
    static const std::pair<const char*, const char*> kClasses[] = {
        {"X", "C_X"},   {"Z", "C_Z"},   {"ZZ", "C_ZZ"},
        {"YY", "C_YY"}, {"XZ", "C_ZX"}, {"ZXZ", "C_ZXZ"}};
    for (const auto& [label, name] : kClasses) {
      const auto it =
          std::find(table.labels.begin(), table.labels.end(), label);
      if (it == table.labels.end() || table.records.empty()) continue;
      const Eigen::Index a = it - table.labels.begin();
      double mean = 0;
      for (const auto& r : table.records) mean += r.C[a];
      cmp["learned_cluster_centroid"][name] =
          mean / (double)table.records.size();
    }
  }

  if (cfg.bch_extract) {
    OperatorBasis basis = build_configured_basis(cfg);
    Eigen::VectorXd c = extract_effective_couplings(tau, p, basis);
    json ex;
    for (int i = 0; i < basis.n(); ++i)
      ex[basis.elements[(std::size_t)i].label] = c[i];
    cmp["extraction"] = ex;
  }

  man["kind"] = "bch";
  man["config"] = config_to_json(cfg);
  write_text_file(out / "comparison.json", cmp.dump(2) + "\n");
  write_manifest(out, man);
  std::cout << "bch: tau " << io::format_double(tau) << ", output in " << out
            << "\n";
  return 0;
}

int cmd_rank(const ExperimentConfig& cfg,
             const std::vector<std::string>& learn_dirs) {
  if (learn_dirs.empty())
    throw ConfigError("rank: need at least one learn output directory");
  const fs::path out = cfg.out_dir;
  fs::create_directories(out);

  std::vector<DeviationStats> stats;
  json inputs = json::array();
  for (const auto& dir : learn_dirs) {
    const json man = read_manifest(dir);
    const ChainParams p = chain_from_manifest(man);
    std::ifstream f(fs::path(dir) / "learn.csv");
    if (!f) throw ConfigError("missing learn.csv in '" + dir + "'");
    io::LearnTable table = io::read_learn_csv(f);
    stats.push_back(deviation_stats(table.records, table.labels, p));
    inputs.push_back(dir);
  }
  const auto ranking = rank_basis(stats);
  {
    std::ofstream csv(out / "ranking.csv", std::ios::binary);
    io::write_ranking_csv(csv, ranking);
  }
  json man;
  man["kind"] = "rank";
  man["config"] = config_to_json(cfg);
  man["inputs"] = inputs;
  man["settings"] = stats.size();
  write_manifest(out, man);
  std::cout << "rank: " << ranking.size() << " elements over " << stats.size()
            << " settings, top '" << ranking.front().label << "', output in "
            << out << "\n";
  return 0;
}

int cmd_report(const ExperimentConfig& cfg, const std::string& traj_dir,
               const std::string& learn_dir) {
  if (traj_dir.empty() && learn_dir.empty())
    throw ConfigError("report: need --traj and/or --learn");
  const fs::path out = cfg.out_dir;
  fs::create_directories(out);
  int written = 0;

  if (!traj_dir.empty()) {
    AdaTrajectory traj = load_trajectory_dir(traj_dir);
    io::PlotSeries mz{"M_z", {0.0}, {magnetization_density(traj.initial)}};
    for (std::size_t i = 0; i < traj.checkpoints.size(); ++i) {
      mz.x.push_back(traj.checkpoint_time(i));
      mz.y.push_back(magnetization_density(traj.checkpoints[i]));
    }
    std::ofstream f(out / "magnetization.svg", std::ios::binary);
    io::write_svg_plot(f, "Magnetization density", "t", "M_z", {mz});
    ++written;
  }

  if (!learn_dir.empty()) {
    std::ifstream f(fs::path(learn_dir) / "learn.csv");
    if (!f) throw ConfigError("missing learn.csv in '" + learn_dir + "'");
    io::LearnTable table = io::read_learn_csv(f);
    const json man = read_manifest(learn_dir);
    const ChainParams p = chain_from_manifest(man);

    io::PlotSeries loss{"loss", {}, {}};
    for (const auto& r : table.records) {
      loss.x.push_back(r.t);
      loss.y.push_back(r.loss);
    }
    {
      std::ofstream g(out / "loss.svg", std::ios::binary);
      io::write_svg_plot(g, "Reconstruction infidelity", "t", "loss", {loss});
      ++written;
    }

    const DeviationStats stats =
        deviation_stats(table.records, table.labels, p);
    std::vector<io::PlotSeries> dev;
    for (const char* lbl : {"X", "Z", "ZZ"}) {
      const auto it =
          std::find(table.labels.begin(), table.labels.end(), lbl);
      if (it == table.labels.end()) continue;
      const Eigen::Index a = it - table.labels.begin();
      io::PlotSeries s{std::string("dC_") + lbl, {}, {}};
      for (Eigen::Index i = 0; i < stats.samples.rows(); ++i) {
        s.x.push_back(stats.times[(std::size_t)i]);
        s.y.push_back(stats.samples(i, a));
      }
      dev.push_back(std::move(s));
    }
    std::ofstream g(out / "deviations.svg", std::ios::binary);
    io::write_svg_plot(g, "Coupling deviations", "t", "|C - C*|", dev);
    ++written;
  }

  std::cout << "report: " << written << " figures in " << out << "\n";
  return 0;
}

}  // namespace

int run_cli(int argc, char** argv) {
  CLI::App app{
      "Adaptive Trotter simulation with effective-Hamiltonian learning"};
  app.require_subcommand(1);

  std::string config_path, out_dir, traj_dir, learn_dir;
  std::optional<std::uint64_t> seed;
  int threads = 0;
  std::vector<std::string> rank_inputs;

  auto add_common = [&](CLI::App* sub) {
    sub->add_option("--config", config_path, "experiment config file");
    sub->add_option("--out", out_dir, "output directory");
    sub->add_option("--seed", seed, "RNG seed override");
    sub->add_option("--threads", threads, "worker thread cap");
  };

  CLI::App* ada = app.add_subcommand("run-ada", "adaptive Trotter run");
  add_common(ada);
  CLI::App* learn = app.add_subcommand("learn", "learn effective couplings");
  add_common(learn);
  learn->add_option("--traj", traj_dir, "trajectory directory")->required();
  CLI::App* bch = app.add_subcommand("bch", "fixed-step reference couplings");
  add_common(bch);
  bch->add_option("--traj", traj_dir, "trajectory directory");
  CLI::App* rank = app.add_subcommand("rank", "rank basis elements");
  add_common(rank);
  rank->add_option("dirs", rank_inputs, "learn output directories");
  CLI::App* report = app.add_subcommand("report", "emit SVG figures");
  add_common(report);
  report->add_option("--traj", traj_dir, "trajectory directory");
  report->add_option("--learn", learn_dir, "learn output directory");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e) == 0 ? 0 : 2;
  }

  try {
    ExperimentConfig cfg;
    if (!config_path.empty()) cfg = load_config_file(config_path);
    if (!out_dir.empty()) cfg.out_dir = out_dir;
    if (seed) cfg.seed = *seed;
    if (threads > 0) set_thread_cap(threads);
    validate_config(cfg);

    if (*ada) return cmd_run_ada(cfg);
    if (*learn) return cmd_learn(cfg, traj_dir);
    if (*bch) return cmd_bch(cfg, traj_dir);
    if (*rank) return cmd_rank(cfg, rank_inputs);
    if (*report) return cmd_report(cfg, traj_dir, learn_dir);
    return 2;
  } catch (const ConfigError& e) {
    std::cerr << "config error: " << e.what() << "\n";
    return 2;
  } catch (const StepNotFound& e) {
    std::cerr << "step search failed: " << e.what() << "\n";
    return 3;
  } catch (const OptimizerFailure& e) {
    std::cerr << "optimizer failure: " << e.what() << "\n";
    return 4;
  } catch (const BranchAmbiguity& e) {
    std::cerr << "numerical guard: " << e.what() << "\n";
    return 5;
  } catch (const NonHermitian& e) {
    std::cerr << "numerical guard: " << e.what() << "\n";
    return 5;
  } catch (const EigensolverFailure& e) {
    std::cerr << "numerical guard: " << e.what() << "\n";
    return 5;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
}

}  // namespace effham
