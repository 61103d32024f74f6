#pragma once

#include <string>
#include <vector>

#include "effham/basis.hpp"
#include "effham/chain.hpp"
#include "effham/kernels.hpp"

namespace effham {

// Compile an anchored string onto the L-ring (sites taken mod L).
// Throws if the support exceeds L (letters would self-overlap).
CompiledString compile_string(const PauliString& s, int L, double weight);

// A symmetrized operator realized on the ring: all L translations of the
// representative plus, when distinct, all L translations of its mirror.
// Translations that alias to the same string (short rings) are merged with
// accumulated weight, which hs_norm_sq = Tr(O^2) accounts for.
struct RealizedOperator {
  int L = 0;
  std::string label;
  std::vector<CompiledString> strings;
  double hs_norm_sq = 0;

  void apply(const VectorXc& in, VectorXc& out) const {
    kernels::apply_strings(strings, in, out);
  }
  MatrixXc dense() const;
};

RealizedOperator realize(const SymmetrizedOperator& op, int L);
std::vector<RealizedOperator> realize_basis(const OperatorBasis& basis, int L);

// Dense H_* of the chain (assembled from compiled strings).
MatrixXc dense_hamiltonian(const ChainParams& p);

// C_alpha = Tr(O_alpha H) / Tr(O_alpha^2) for each basis element; rejects
// inputs that are non-Hermitian beyond 1e-10 (max element of H - H^dagger).
Eigen::VectorXd project_onto_basis(const MatrixXc& H,
                                   const std::vector<RealizedOperator>& ops);

}  // namespace effham
