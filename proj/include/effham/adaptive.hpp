#pragma once

#include <vector>

#include "effham/chain.hpp"
#include "effham/errors.hpp"
#include "effham/kernels.hpp"
#include "effham/state.hpp"

namespace effham {

struct AdaConfig {
  double d_E = 0.02;    // tolerance on the energy density <H>/L
  double d_var = 0.01;  // tolerance on the energy-density variance Var(H/L)
  int M = 50;           // total steps
  double tau_min = 1e-4;
  double tau_max = 1.0;
  // Relative tau granularity of the step search; candidate steps are
  // quantized to a geometric ladder with rung ratio 1 + 2*search_resolution.
  // Coarse granularity is a feature: it is what keeps accepted states a
  // healthy margin inside the tolerance band (see select_step).
  double search_resolution = 0.5;
};

struct AdaStepRecord {
  int m = 0;            // 1-based step number
  long double t = 0;    // time before the step; t_{m+1} = t_m + tau_m
  double tau = 0;
  double E = 0;         // densities of the state after the step
  double dE2 = 0;
};

struct AdaTrajectory {
  ChainParams params;
  double E_ref = 0, dE2_ref = 0;  // densities of the initial state
  StateVector initial;
  std::vector<AdaStepRecord> steps;
  std::vector<StateVector> checkpoints;  // state after step m at steps[m-1]

  // Absolute time of checkpoint index i (state after step i+1).
  double checkpoint_time(std::size_t i) const {
    return double(steps[i].t + (long double)steps[i].tau);
  }
};

struct SelectedStep {
  double tau = 0;
  VectorXc evolved;  // the accepted trial state, to avoid recomputation
  double E = 0, dE2 = 0;
};

// Largest tau in [tau_min, tau_max] (up to the relative search resolution)
// whose trial step keeps both densities strictly within tolerance of the
// reference values. The search probes a geometric ladder with rung ratio
// 1 + 2*search_resolution, anchored at 2*tau_prev (tau_max for the first
// step), walking from the top; the first admissible rung wins, so for every
// accepted tau < tau_max the step tau*(1+2*resolution) violates a bound or
// lies beyond the cap. Accepted values are quantized to ladder rungs on
// purpose: refining toward the admissibility edge parks the state on the
// tolerance boundary and starves subsequent steps. Throws StepNotFound when
// no rung down to tau_min is admissible.
SelectedStep select_step(const VectorXc& psi, double E_ref, double dE2_ref,
                         const AdaConfig& cfg, const ChainKernel& kernel,
                         double tau_prev);

// Runs M adaptive steps from psi0, recording every accepted step and
// checkpoint. Deterministic given inputs. When a step search fails, the
// StepNotFound is rethrown with the 1-based failing index and the partial
// trajectory attached so callers can keep what was accepted.
AdaTrajectory run_ada(const StateVector& psi0, const AdaConfig& cfg,
                      const ChainParams& p);

}  // namespace effham
