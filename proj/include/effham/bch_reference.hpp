#pragma once

#include <Eigen/Dense>

#include "effham/adaptive.hpp"
#include "effham/basis.hpp"
#include "effham/chain.hpp"
#include "effham/state.hpp"

namespace effham {

// The six coupling strengths of the order-tau^2 effective Hamiltonian of the
// symmetric Trotter step, named by operator class (ZX stands for the
// symmetrized XZ + ZX pair).
struct BchCoefficients {
  double C_X = 0, C_Z = 0, C_ZZ = 0, C_YY = 0, C_ZX = 0, C_ZXZ = 0;
  double tau = 0;
};

// Closed forms evaluated at step size tau; tau = 0 returns the bare
// couplings (h_x, h_z, J_z, 0, 0, 0).
BchCoefficients bch_coefficients(double tau, const ChainParams& p);

// Dense one-step Trotter unitary, built column-by-column from the kernels.
MatrixXc trotter_unitary_dense(double tau, const ChainParams& p);

// Effective couplings from the principal matrix logarithm of U(tau),
// projected onto the basis. The principal branch is only trustworthy while
// the eigenphase spread of U stays under 2 pi; the spread is bounded ahead
// of time by tau times the spectral width of the bare Hamiltonian (the
// tau^2 corrections are a small perturbation), with a 10% safety margin.
// Throws BranchAmbiguity when the bound is exceeded.
Eigen::VectorXd extract_effective_couplings(double tau, const ChainParams& p,
                                            const OperatorBasis& basis);

double mean_tau(const AdaTrajectory& traj);

// Closed forms at the trajectory's arithmetic-mean step size.
BchCoefficients fixed_step_comparison(const AdaTrajectory& traj);

}  // namespace effham
