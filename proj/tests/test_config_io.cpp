#include <doctest.h>

#include <cmath>
#include <filesystem>
#include <fstream>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "effham/cli.hpp"
#include "effham/config.hpp"
#include "effham/errors.hpp"
#include "effham/io.hpp"
#include "effham/state.hpp"
#include "support/dense_oracle.hpp"

using namespace effham;
namespace fs = std::filesystem;

namespace {

int cli(std::vector<std::string> args) {
  std::vector<char*> argv;
  args.insert(args.begin(), "effham");
  argv.reserve(args.size());
  for (auto& a : args) argv.push_back(a.data());
  return run_cli((int)argv.size(), argv.data());
}

struct TempDir {
  fs::path path;
  TempDir() {
    path = fs::temp_directory_path() /
           ("effham-test-" + std::to_string(std::random_device{}()));
    fs::create_directories(path);
  }
  ~TempDir() { fs::remove_all(path); }
};

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  REQUIRE(in.good());
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void spit(const fs::path& p, const std::string& text) {
  std::ofstream out(p, std::ios::binary);
  out << text;
}

}  // namespace

TEST_CASE("config defaults and parsing") {
  const ExperimentConfig def = parse_config_text("");
  CHECK(def.chain.L == 10);
  CHECK(def.chain.J_z == -1.0);
  CHECK(def.chain.h_z == 0.5);
  CHECK(def.chain.h_x == -1.7);
  CHECK(def.theta_y == doctest::Approx(std::acos(-1.0) / 3));
  CHECK(def.ada.d_E == 0.02);
  CHECK(def.ada.d_var == 0.01);
  CHECK(def.ada.M == 50);
  CHECK(def.adam.alpha == 1e-5);
  CHECK(def.adam.beta1 == 0.9);
  CHECK(def.adam.beta2 == 0.99);
  CHECK(def.adam.l_min == 1e-4);
  CHECK(def.adam.max_epochs == 5000);
  CHECK(def.basis.max_support == 5);
  CHECK(def.basis.parity_filter);
  CHECK(def.basis.allow_interior_identity);
  CHECK(def.truncate_N == 0);
  CHECK(def.learn.stride == 1);
  CHECK(def.seed == 1);
  CHECK_NOTHROW(validate_config(def));

  const ExperimentConfig cfg = parse_config_text(
      "# comment line\n"
      "[chain]\n"
      "L = 6\n"
      "J_z = -0.5   # trailing comment\n"
      "[ada]\n"
      "d_E = 0.05\n"
      "M = 12\n"
      "[adam]\n"
      "alpha = 1e-3\n"
      "[basis]\n"
      "R = 3\n"
      "parity_filter = false\n"
      "[learn]\n"
      "stride = 2\n"
      "[run]\n"
      "out_dir = /tmp/somewhere\n"
      "seed = 42\n");
  CHECK(cfg.chain.L == 6);
  CHECK(cfg.chain.J_z == -0.5);
  CHECK(cfg.chain.h_x == -1.7);  // untouched default
  CHECK(cfg.ada.d_E == 0.05);
  CHECK(cfg.ada.M == 12);
  CHECK(cfg.adam.alpha == 1e-3);
  CHECK(cfg.basis.max_support == 3);
  CHECK_FALSE(cfg.basis.parity_filter);
  CHECK(cfg.learn.stride == 2);
  CHECK(cfg.out_dir == "/tmp/somewhere");
  CHECK(cfg.seed == 42);

  CHECK_THROWS_AS(parse_config_text("[chain]\nwidth = 5\n"), ConfigError);
  CHECK_THROWS_AS(parse_config_text("[nosuch]\nL = 5\n"), ConfigError);
  CHECK_THROWS_AS(parse_config_text("[chain]\nL = five\n"), ConfigError);
  CHECK_THROWS_AS(parse_config_text("L = 5\n"), ConfigError);  // no section

  ExperimentConfig bad = def;
  bad.chain.L = 1;
  CHECK_THROWS_AS(validate_config(bad), ConfigError);
  bad = def;
  bad.ada.d_E = 0.0;
  CHECK_THROWS_AS(validate_config(bad), ConfigError);
  bad = def;
  bad.truncate_N = 5;  // requires a ranking file
  CHECK_THROWS_AS(validate_config(bad), ConfigError);
  bad = def;
  bad.basis.max_support = 11;  // exceeds L
  CHECK_THROWS_AS(validate_config(bad), ConfigError);
  bad = def;
  bad.rdm_window = 10;  // outside the chain
  CHECK_THROWS_AS(validate_config(bad), ConfigError);
}

TEST_CASE("doubles survive the CSV round trip bitwise") {
  std::mt19937_64 rng(71);
  std::normal_distribution<double> g;
  for (int i = 0; i < 200; ++i) {
    const double x = std::ldexp(g(rng), (int)(rng() % 40) - 20);
    const double back = std::stod(io::format_double(x));
    CHECK(back == x);
  }
}

TEST_CASE("trajectory CSV round trip") {
  std::vector<AdaStepRecord> steps;
  steps.push_back({1, 0.0L, 0.125, -1.234567890123456, 0.0099999999999999});
  steps.push_back({2, 0.125L, 0.0625, -1.2, 0.01});
  steps.push_back({3, 0.1875L, 1.0 / 3.0, 0.3333333333333333, 1e-17});

  std::ostringstream os;
  io::write_trajectory_csv(os, steps);
  CHECK(os.str().starts_with("m,t,tau,E,dE2\n"));

  std::istringstream is(os.str());
  const auto back = io::read_trajectory_csv(is);
  REQUIRE(back.size() == steps.size());
  for (std::size_t i = 0; i < steps.size(); ++i) {
    CHECK(back[i].m == steps[i].m);
    CHECK(double(back[i].t) == double(steps[i].t));
    CHECK(back[i].tau == steps[i].tau);
    CHECK(back[i].E == steps[i].E);
    CHECK(back[i].dE2 == steps[i].dE2);
  }

  std::istringstream bad("wrong,header\n1,2,3,4,5\n");
  CHECK_THROWS_AS(io::read_trajectory_csv(bad), ConfigError);
}

TEST_CASE("learn CSV round trip") {
  const std::vector<std::string> labels{"X", "Z", "ZZ"};
  std::vector<LearnRecord> recs;
  LearnRecord r;
  r.checkpoint = 1;
  r.t = 0.25;
  r.C = Eigen::Vector3d(-1.7000000000000002, 0.5, -1.0);
  r.loss = 1.25e-5;
  r.loss_last = 2.5e-5;
  r.epochs_used = 137;
  r.terminated_by = Termination::cutoff;
  recs.push_back(r);
  r.checkpoint = 2;
  r.t = 0.5;
  r.C = Eigen::Vector3d(-1.65, 0.51, -1.04);
  r.loss = 3e-4;
  r.terminated_by = Termination::epoch_limit;
  r.epochs_used = 5000;
  recs.push_back(r);

  std::ostringstream os;
  io::write_learn_csv(os, recs, labels);
  CHECK(os.str().starts_with("t,loss,epochs,terminated_by,C_X,C_Z,C_ZZ\n"));

  std::istringstream is(os.str());
  const io::LearnTable table = io::read_learn_csv(is);
  CHECK(table.labels == labels);
  REQUIRE(table.records.size() == 2);
  CHECK(table.records[0].t == 0.25);
  CHECK(table.records[0].loss == 1.25e-5);
  CHECK(table.records[0].epochs_used == 137);
  CHECK(table.records[0].terminated_by == Termination::cutoff);
  CHECK((table.records[0].C.array() == recs[0].C.array()).all());
  CHECK(table.records[1].terminated_by == Termination::epoch_limit);
  CHECK((table.records[1].C.array() == recs[1].C.array()).all());

  std::istringstream bad("t,loss,epochs,terminated_by,dC_X\n");
  CHECK_THROWS_AS(io::read_learn_csv(bad), ConfigError);
}

TEST_CASE("ranking CSV round trip") {
  std::vector<RankedElement> ranking{{"XZX", 0.125, 0.001},
                                     {"X", 0.0625, 0.0},
                                     {"YIY", 1e-9, 1e-12}};
  std::ostringstream os;
  io::write_ranking_csv(os, ranking);
  CHECK(os.str().starts_with("label,mean_deviation,stddev\n"));
  std::istringstream is(os.str());
  const auto back = io::read_ranking_csv(is);
  REQUIRE(back.size() == 3);
  for (std::size_t i = 0; i < 3; ++i) {
    CHECK(back[i].label == ranking[i].label);
    CHECK(back[i].mean_deviation == ranking[i].mean_deviation);
    CHECK(back[i].stddev == ranking[i].stddev);
  }
}

TEST_CASE("state files round trip") {
  std::mt19937_64 rng(72);
  StateVector s = StateVector::zero(5);
  s.amps = oracle::random_state(5, rng);

  TempDir tmp;
  const auto file = (tmp.path / "roundtrip.state").string();
  save_state_file(file, s);
  const StateVector back = load_state_file(file);
  CHECK(back.L == 5);
  REQUIRE(back.amps.size() == s.amps.size());
  for (Eigen::Index n = 0; n < s.amps.size(); ++n) CHECK(back.amps[n] == s.amps[n]);

  CHECK_THROWS(load_state_file((tmp.path / "missing.state").string()));
}

TEST_CASE("command-line pipeline produces reproducible artifacts") {
  TempDir tmp;
  const fs::path cfg_path = tmp.path / "exp.cfg";
  spit(cfg_path,
       "[chain]\nL = 4\n"
       "[ada]\nM = 3\n"
       "[basis]\nR = 2\nparity_filter = false\n"
       "[adam]\nalpha = 1e-3\nmax_epochs = 400\n");

  const fs::path traj_dir = tmp.path / "traj";
  REQUIRE(cli({"run-ada", "--config", cfg_path.string(), "--out",
               traj_dir.string()}) == 0);
  CHECK(fs::exists(traj_dir / "trajectory.csv"));
  CHECK(fs::exists(traj_dir / "initial.state"));
  CHECK(fs::exists(traj_dir / "ckpt_0001.state"));
  CHECK(fs::exists(traj_dir / "ckpt_0003.state"));
  CHECK(fs::exists(traj_dir / "manifest.json"));

  {
    std::ifstream csv(traj_dir / "trajectory.csv");
    const auto steps = io::read_trajectory_csv(csv);
    CHECK(steps.size() == 3);
  }

  const fs::path learn_dir = tmp.path / "learn";
  REQUIRE(cli({"learn", "--config", cfg_path.string(), "--traj",
               traj_dir.string(), "--out", learn_dir.string()}) == 0);
  CHECK(fs::exists(learn_dir / "learn.csv"));
  CHECK(fs::exists(learn_dir / "deviations.csv"));
  CHECK(fs::exists(learn_dir / "rdm_error.csv"));
  CHECK(fs::exists(learn_dir / "manifest.json"));

  {
    std::ifstream csv(learn_dir / "learn.csv");
    const auto table = io::read_learn_csv(csv);
    CHECK(table.records.size() == 3);
    REQUIRE(!table.labels.empty());
  }

  // Rerunning into a fresh directory is byte-identical.
  const fs::path learn2 = tmp.path / "learn2";
  REQUIRE(cli({"learn", "--config", cfg_path.string(), "--traj",
               traj_dir.string(), "--out", learn2.string()}) == 0);
  CHECK(slurp(learn_dir / "learn.csv") == slurp(learn2 / "learn.csv"));
  CHECK(slurp(learn_dir / "deviations.csv") == slurp(learn2 / "deviations.csv"));

  const fs::path bch_dir = tmp.path / "bch";
  REQUIRE(cli({"bch", "--config", cfg_path.string(), "--traj",
               traj_dir.string(), "--out", bch_dir.string()}) == 0);
  const std::string comparison = slurp(bch_dir / "comparison.json");
  CHECK(comparison.find("tau_mean") != std::string::npos);
  CHECK(comparison.find("\"bch\"") != std::string::npos);

  const fs::path rank_dir = tmp.path / "rank";
  REQUIRE(cli({"rank", "--out", rank_dir.string(), learn_dir.string(),
               learn2.string()}) == 0);
  CHECK(fs::exists(rank_dir / "ranking.csv"));
  {
    std::ifstream csv(rank_dir / "ranking.csv");
    const auto ranking = io::read_ranking_csv(csv);
    REQUIRE(!ranking.empty());
    for (std::size_t i = 1; i < ranking.size(); ++i)
      CHECK(ranking[i - 1].mean_deviation >= ranking[i].mean_deviation);
  }

  const fs::path report_dir = tmp.path / "report";
  REQUIRE(cli({"report", "--traj", traj_dir.string(), "--learn",
               learn_dir.string(), "--out", report_dir.string()}) == 0);
  CHECK(fs::exists(report_dir / "magnetization.svg"));
  CHECK(fs::exists(report_dir / "loss.svg"));
  CHECK(slurp(report_dir / "loss.svg").find("<svg") != std::string::npos);
}

TEST_CASE("command-line errors map to exit codes") {
  TempDir tmp;
  CHECK(cli({"run-ada", "--config",
             (tmp.path / "does-not-exist.cfg").string()}) == 2);

  const fs::path bad_cfg = tmp.path / "bad.cfg";
  spit(bad_cfg, "[ada]\nd_E = -1\n");
  CHECK(cli({"run-ada", "--config", bad_cfg.string(), "--out",
             (tmp.path / "o").string()}) == 2);

  // A tolerance no step can satisfy: partial output plus exit code 3.
  const fs::path fail_cfg = tmp.path / "fail.cfg";
  spit(fail_cfg,
       "[chain]\nL = 4\n"
       "[basis]\nR = 2\n"
       "[ada]\nd_E = 1e-13\nd_var = 1e-13\ntau_min = 0.5\nM = 2\n");
  const fs::path fail_dir = tmp.path / "fail";
  CHECK(cli({"run-ada", "--config", fail_cfg.string(), "--out",
             fail_dir.string()}) == 3);
  CHECK(fs::exists(fail_dir / "trajectory.csv"));
  CHECK(fs::exists(fail_dir / "manifest.json"));
  const std::string man = slurp(fail_dir / "manifest.json");
  CHECK(man.find("\"completed\": false") != std::string::npos);

  CHECK(cli({"nonsense-subcommand"}) == 2);
  CHECK(cli({"learn", "--config", bad_cfg.string()}) == 2);  // missing --traj
}
