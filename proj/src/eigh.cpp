#include "effham/eigh.hpp"

#include <string>

#include <Eigen/Eigenvalues>

#include "effham/errors.hpp"

#ifdef EFFHAM_USE_LAPACKE
#define LAPACK_COMPLEX_CUSTOM
#define lapack_complex_float std::complex<float>
#define lapack_complex_double std::complex<double>
#include <lapacke.h>

// Pin the BLAS used by zheevd to one thread so eigendecompositions are
// bit-reproducible regardless of the machine's core count. Weak symbol: a
// plain reference-BLAS build simply lacks it.
extern "C" void openblas_set_num_threads(int) __attribute__((weak));
#endif

namespace effham {

#ifdef EFFHAM_USE_LAPACKE

const char* eigh_backend() { return "lapacke-zheevd"; }

Eigh hermitian_eigh(MatrixXc H) {
  static const bool blas_pinned = [] {
    if (openblas_set_num_threads) openblas_set_num_threads(1);
    return true;
  }();
  (void)blas_pinned;
  const lapack_int n = lapack_int(H.rows());
  Eigh r;
  r.values.resize(n);
  const lapack_int info = LAPACKE_zheevd(LAPACK_COL_MAJOR, 'V', 'L', n,
                                         H.data(), n, r.values.data());
  if (info != 0)
    throw EigensolverFailure("zheevd failed with info=" + std::to_string(info) +
                             " at dimension " + std::to_string(n));
  r.vectors = std::move(H);
  return r;
}

#else

const char* eigh_backend() { return "eigen"; }

Eigh hermitian_eigh(MatrixXc H) {
  Eigen::SelfAdjointEigenSolver<MatrixXc> solver(H);
  if (solver.info() != Eigen::Success)
    throw EigensolverFailure("SelfAdjointEigenSolver failed at dimension " +
                             std::to_string(H.rows()));
  Eigh r;
  r.values = solver.eigenvalues();
  r.vectors = solver.eigenvectors();
  return r;
}

#endif

UnitaryEig unitary_eig(const MatrixXc& U) {
  Eigen::ComplexSchur<MatrixXc> schur(U, true);
  if (schur.info() != Eigen::Success)
    throw EigensolverFailure("complex Schur failed at dimension " +
                             std::to_string(U.rows()));
  UnitaryEig r;
  r.values = schur.matrixT().diagonal();
  r.vectors = schur.matrixU();
  // For a unitary input the Schur form is diagonal up to rounding; check the
  // reconstruction so silent non-normality cannot pass through.
  const double resid =
      (r.vectors * r.values.asDiagonal() * r.vectors.adjoint() - U)
          .cwiseAbs()
          .maxCoeff();
  if (resid > 1e-9)
    throw EigensolverFailure(
        "Schur reconstruction residual " + std::to_string(resid) +
        " — input is not unitary enough for eigenphase extraction");
  return r;
}

}  // namespace effham
