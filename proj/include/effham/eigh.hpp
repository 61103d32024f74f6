#pragma once

#include "effham/state.hpp"

namespace effham {

struct Eigh {
  Eigen::VectorXd values;  // ascending
  MatrixXc vectors;        // columns
};

// Dense Hermitian eigendecomposition. Uses LAPACK zheevd when available
// (pinned to one BLAS thread for reproducibility), otherwise Eigen's
// SelfAdjointEigenSolver. Throws EigensolverFailure on breakdown.
Eigh hermitian_eigh(MatrixXc H);

// Which backend the build resolved to ("lapacke-zheevd" or "eigen").
const char* eigh_backend();

struct UnitaryEig {
  VectorXc values;
  MatrixXc vectors;  // unitary
};

// Eigendecomposition of a (numerically) unitary matrix via complex Schur;
// validates the reconstruction residual.
UnitaryEig unitary_eig(const MatrixXc& U);

}  // namespace effham
