#pragma once

#include <string>
#include <vector>

#include <Eigen/Dense>

#include "effham/adaptive.hpp"
#include "effham/basis.hpp"
#include "effham/chain.hpp"
#include "effham/learner.hpp"

namespace effham {

// Per-element deviation |C_a(t) - C_a*| of learned coefficients from the
// bare couplings (h_x, h_z, J_z for X, Z, ZZ; zero for every other label).
struct DeviationStats {
  std::vector<std::string> labels;          // basis order
  std::vector<double> times;                // one per record
  Eigen::MatrixXd samples;                  // records x labels, all >= 0
  Eigen::VectorXd mean_full;                // time mean over all records
  Eigen::VectorXd mean_post5;               // mean over records with index >= 5
  Eigen::VectorXd max_dev;                  // extremum per label
};

DeviationStats deviation_stats(const std::vector<LearnRecord>& records,
                               const std::vector<std::string>& labels,
                               const ChainParams& p);

struct RankedElement {
  std::string label;
  double mean_deviation = 0;  // averaged over tolerance settings
  double stddev = 0;          // across settings
};

// Averages the full-window time-mean deviations across tolerance settings
// and sorts descending; ties keep basis order (stable sort).
std::vector<RankedElement> rank_basis(const std::vector<DeviationStats>& stats);

// Top-N of the ranking, with X, Z, ZZ always retained; result keeps the
// original basis ordering. N < 3 is rejected.
OperatorBasis truncate_basis(const OperatorBasis& basis,
                             const std::vector<RankedElement>& ranking, int N);

struct SlopeFit {
  double gamma = 0;      // slope of loss vs t
  double intercept = 0;
  double residual_norm = 0;
  int window_start = 5;  // first record index used
};

// Ordinary least squares of best-seen loss against time, discarding the
// first five records; needs at least three usable points.
SlopeFit fit_slope(const std::vector<LearnRecord>& records);

// Frobenius distance between the three-site reduced density matrices of the
// recorded states and their reconstructions exp(-i t H(C)) psi0, one entry
// per learned checkpoint. window = first site of the three-site block.
std::vector<double> rdm_error_series(const AdaTrajectory& traj,
                                     const std::vector<LearnRecord>& records,
                                     const std::vector<RealizedOperator>& ops,
                                     int window);

struct DensityCurve {
  std::string label;
  std::vector<double> samples;
  std::vector<double> grid;     // 256 points on [0, 1.1 * max sample]
  std::vector<double> density;  // Gaussian KDE, unit integral
  double bandwidth = 0;
  bool degenerate = false;  // all samples equal; curve is a delta-like spike
};

// Violin-plot data per basis element. bandwidth <= 0 selects Silverman's
// rule from the sample standard deviation.
std::vector<DensityCurve> distribution_export(const DeviationStats& stats,
                                              double bandwidth);

}  // namespace effham
