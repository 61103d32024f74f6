#pragma once

#include <utility>

#include "effham/chain.hpp"
#include "effham/kernels.hpp"
#include "effham/realize.hpp"
#include "effham/state.hpp"

namespace effham {

// Product state exp(-i theta_y sum_j Y_j)|down...down>; per site
// cos(theta_y)|down> - sin(theta_y)|up>, so <Z_j> = -cos(2 theta_y).
StateVector initial_state(int L, double theta_y);

// One second-order Trotter step
//   psi <- exp(-i tau H_x/2) exp(-i tau H_z) exp(-i tau H_x/2) psi
// with the X factor as L single-site rotations and the Z factor as a
// diagonal phase. The ChainKernel carries the precomputed diagonal.
void trotter_step_inplace(VectorXc& psi, double tau, const ChainKernel& k);
StateVector trotter_step(const StateVector& psi, double tau,
                         const ChainParams& p);

// exp(-i t H) psi via Hermitian eigendecomposition; H must be Hermitian
// within 1e-10 (max element of H - H^dagger).
StateVector evolve_exact(const StateVector& psi, const MatrixXc& H, double t);

// <psi|A|psi>; asserts |Im| < 1e-9 and discards it.
double expectation(const StateVector& psi, const RealizedOperator& A);

// (E, dE2) with E = <H_*>/L and dE2 = <H_*^2>/L - L E^2; the second moment
// comes from applying H_* twice (no dense H^2 is formed).
std::pair<double, double> energy_and_variance_density(const VectorXc& psi,
                                                      const ChainKernel& k);
std::pair<double, double> energy_and_variance_density(const StateVector& psi,
                                                      const ChainParams& p);

// |<psi|phi>|^2
double fidelity(const StateVector& psi, const StateVector& phi);

struct ReducedDensityMatrix {
  int first_site = 0;  // window = (first, first+1, first+2) mod L
  MatrixXc rho;        // 8x8, Hermitian, unit trace
};

ReducedDensityMatrix reduced_density_matrix(const StateVector& psi,
                                            int first_site);

// <sum_j Z_j>/L
double magnetization_density(const StateVector& psi);

}  // namespace effham
