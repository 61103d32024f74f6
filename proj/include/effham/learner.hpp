#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "effham/adaptive.hpp"
#include "effham/realize.hpp"
#include "effham/state.hpp"

namespace effham {

struct AdamConfig {
  double alpha = 1e-5;  // learning rate
  double beta1 = 0.9;
  double beta2 = 0.99;
  double eps = 1e-8;      // division guard
  double l_min = 1e-4;    // loss cutoff
  int max_epochs = 5000;
  double degeneracy_gap = 1e-12;  // relative eigenvalue-gap threshold
  double jitter_scale = 1e-10;    // coefficient perturbation on solver failure
  std::uint64_t rng_seed = 1;
};

enum class Termination { cutoff, epoch_limit };

std::string to_string(Termination t);

struct LearnRecord {
  int checkpoint = 0;  // 1-based step index of the reconstructed state
  double t = 0;        // absolute time of that state
  Eigen::VectorXd C;   // best-seen coefficients
  double loss = 0;     // best-seen loss
  double loss_last = 0;  // loss at the final epoch, kept alongside best-seen
  int epochs_used = 0;
  Termination terminated_by = Termination::epoch_limit;
};

// Dense Sigma_a C_a O_a over the realized basis; Hermitian by construction.
MatrixXc assemble(const std::vector<RealizedOperator>& ops,
                  const Eigen::VectorXd& C);

// Reconstruction infidelity 1 - |<target| exp(-i t H(C)) |psi0>|^2.
double loss_value(const std::vector<RealizedOperator>& ops,
                  const Eigen::VectorXd& C, const VectorXc& psi0,
                  const VectorXc& target, double t);

struct LossGradient {
  double loss = 0;
  Eigen::VectorXd grad;
};

// Analytic gradient through the eigendecomposition H = V diag(lambda) V^+:
// the derivative of exp(-itH) along O_a is V (Gamma o (V^+ O_a V)) V^+ with
// Gamma the first divided differences of f(x) = exp(-itx), switching to the
// confluent midpoint limit -it f((l_j+l_k)/2) when a gap falls below
// degeneracy_gap_rel * max|lambda|. Cost per call: one eigendecomposition,
// two dense products, and one string trace per basis element.
LossGradient loss_and_gradient(const std::vector<RealizedOperator>& ops,
                               const Eigen::VectorXd& C, const VectorXc& psi0,
                               const VectorXc& target, double t,
                               double degeneracy_gap_rel);

// Adam minimization of the reconstruction infidelity from C_start. Tracks the
// best-seen iterate (Adam is non-monotone); stops once loss < l_min or at
// max_epochs. A failed eigendecomposition triggers one seeded retry with the
// coefficients jittered by jitter_scale. Deterministic given the config.
LearnRecord optimize(const std::vector<RealizedOperator>& ops,
                     const Eigen::VectorXd& C_start, const VectorXc& psi0,
                     const VectorXc& target, double t, const AdamConfig& cfg);

struct LearnOptions {
  int stride = 1;           // learn every stride-th checkpoint
  int max_checkpoints = 0;  // 0 = all
};

// Target-coupling start vector: C_X = h_x, C_Z = h_z, C_ZZ = J_z, rest zero.
// Throws ConfigError when the basis lacks any of the three target labels.
Eigen::VectorXd target_coupling_vector(const std::vector<RealizedOperator>& ops,
                                       const ChainParams& p);

// Walks the trajectory's checkpoints in time order, warm-starting each
// optimization from the previous solution; the first start is the
// target-coupling vector. One record per learned checkpoint.
std::vector<LearnRecord> learn_trajectory(
    const AdaTrajectory& traj, const std::vector<RealizedOperator>& ops,
    const AdamConfig& cfg, const LearnOptions& opt = {});

}  // namespace effham
