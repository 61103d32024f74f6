#pragma once

namespace effham {

// Couplings of the periodic Ising chain
//   H_* = J_z sum_j Z_j Z_{j+1} + h_z sum_j Z_j + h_x sum_j X_j
// on L sites (boundary fixed periodic; index arithmetic is mod L).
struct ChainParams {
  int L = 0;
  double J_z = 0.0;
  double h_z = 0.0;
  double h_x = 0.0;
};

}  // namespace effham
