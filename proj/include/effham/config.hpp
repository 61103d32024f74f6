#pragma once

#include <cstdint>
#include <string>

#include "effham/adaptive.hpp"
#include "effham/basis.hpp"
#include "effham/chain.hpp"
#include "effham/learner.hpp"

namespace effham {

// One experiment = one config file. Sections and keys are fixed; unknown
// ones are rejected so typos cannot silently fall back to defaults. All
// fields have working defaults (the desk-scale chain), so a config file
// only states what it changes.
struct ExperimentConfig {
  ChainParams chain{10, -1.0, 0.5, -1.7};
  double theta_y = 1.0471975511965976;  // pi/3

  AdaConfig ada;
  AdamConfig adam;

  BasisOptions basis;
  int truncate_N = 0;        // 0 = full basis
  std::string ranking_file;  // required when truncate_N > 0

  LearnOptions learn;
  int rdm_window = 0;  // first site of the three-site block

  double bch_tau = 0;      // 0 = use trajectory mean
  bool bch_extract = false;  // also run the dense matrix-log extraction

  std::string out_dir = ".";
  std::uint64_t seed = 1;
};

ExperimentConfig parse_config_text(const std::string& text);
ExperimentConfig load_config_file(const std::string& path);

// Throws ConfigError on any violated invariant.
void validate_config(const ExperimentConfig& cfg);

}  // namespace effham
