#pragma once

#include <cstdint>
#include <vector>

#include "effham/chain.hpp"
#include "effham/state.hpp"

namespace effham {

// Worker cap shared by all parallel kernels: the smaller of OpenMP's limit,
// the EFFHAM_THREADS environment variable, and an explicit --threads value.
// Reductions use a fixed chunk grid, so results are identical for any cap.
void set_thread_cap(int n);
int thread_cap();

// A Pauli string compiled against an L-site ring. Action on a basis state:
//   P|n> = prefactor * parity(sign & ~n) * |n XOR flip>
// where flip marks X/Y sites, sign marks Y/Z sites, parity(m) = (-1)^popcount(m),
// and prefactor carries i^{#Y} times the string's scalar weight.
struct CompiledString {
  std::uint64_t flip = 0;
  std::uint64_t sign = 0;
  Complex prefactor{1.0, 0.0};
};

namespace kernels {

// out[m] = sum_s prefactor_s * parity_s(m^flip_s) * in[m^flip_s] (gather form,
// one writer per element; parallel over m).
void apply_strings(const std::vector<CompiledString>& strings,
                   const VectorXc& in, VectorXc& out);

// psi <- exp(-i phi sum_j X_j) psi, applied as L single-site rotations.
void uniform_x_rotation(int L, double phi, VectorXc& psi);

// psi[n] *= exp(-i tau diag[n])
void diagonal_phase(const std::vector<double>& diag, double tau, VectorXc& psi);

// Deterministic reductions over a fixed 256-chunk grid.
Complex inner(const VectorXc& a, const VectorXc& b);  // sum conj(a) * b
double squared_norm(const VectorXc& a);

// Serial reference implementations kept for testing and benchmarking; the
// string application uses the scatter form to stay structurally independent.
namespace ref {
void apply_strings(const std::vector<CompiledString>& strings,
                   const VectorXc& in, VectorXc& out);
void uniform_x_rotation(int L, double phi, VectorXc& psi);
void diagonal_phase(const std::vector<double>& diag, double tau, VectorXc& psi);
Complex inner(const VectorXc& a, const VectorXc& b);
double squared_norm(const VectorXc& a);
}  // namespace ref

}  // namespace kernels

// Z-part eigenvalues: diag[n] = J_z sum_j z_j z_{j+1} + h_z sum_j z_j with
// z_j = +1 when bit j of n is set.
std::vector<double> ising_diagonal(const ChainParams& p);

// Matrix-free application of the full chain Hamiltonian H_*.
struct ChainKernel {
  ChainParams p;
  std::vector<double> diag;

  static ChainKernel make(const ChainParams& p);
  void apply(const VectorXc& psi, VectorXc& w) const;
};

}  // namespace effham
