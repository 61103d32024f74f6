#include "effham/bch_reference.hpp"

#include <array>
#include <cmath>
#include <numbers>

#include "effham/bch.hpp"
#include "effham/eigh.hpp"
#include "effham/errors.hpp"
#include "effham/kernels.hpp"
#include "effham/realize.hpp"
#include "effham/simulator.hpp"

namespace effham {

BchCoefficients bch_coefficients(double tau, const ChainParams& p) {
  if (tau < 0) throw ConfigError("bch_coefficients: tau must be >= 0");
  static const std::map<std::string, Poly> forms = bch_closed_form_polynomials();
  const std::array<double, 4> at{tau, p.J_z, p.h_x, p.h_z};
  BchCoefficients c;
  c.tau = tau;
  c.C_X = forms.at("X").eval(at);
  c.C_Z = forms.at("Z").eval(at);
  c.C_ZZ = forms.at("ZZ").eval(at);
  c.C_YY = forms.at("YY").eval(at);
  c.C_ZX = forms.at("XZ").eval(at);
  c.C_ZXZ = forms.at("ZXZ").eval(at);
  return c;
}

MatrixXc trotter_unitary_dense(double tau, const ChainParams& p) {
  const ChainKernel kernel = ChainKernel::make(p);
  const std::uint64_t d = 1ull << p.L;
  MatrixXc U(d, d);
  VectorXc col(d);
  for (std::uint64_t n = 0; n < d; ++n) {
    col.setZero();
    col[n] = 1.0;
    trotter_step_inplace(col, tau, kernel);
    U.col(n) = col;
  }
  return U;
}

Eigen::VectorXd extract_effective_couplings(double tau, const ChainParams& p,
                                            const OperatorBasis& basis) {
  if (!(tau > 0)) throw ConfigError("extraction needs tau > 0");
  if (p.L > 12) throw ConfigError("dense extraction is limited to L <= 12");

  // Branch guard: eigenphases of U live on the circle, so a spread >= 2 pi
  // silently aliases. Bound it by tau * spectral width of the bare chain.
  {
    Eigh bare = hermitian_eigh(dense_hamiltonian(p));
    const double spread =
        bare.values[bare.values.size() - 1] - bare.values[0];
    if (tau * spread * 1.1 >= 2 * std::numbers::pi)
      throw BranchAmbiguity(
          "eigenphase spread of the step unitary reaches 2 pi; reduce tau");
  }

  const MatrixXc U = trotter_unitary_dense(tau, p);
  UnitaryEig ue = unitary_eig(U);
  const std::uint64_t d = 1ull << p.L;

  // H_eff = i log(U) / tau on the principal branch: eigenvalue exp(i theta)
  // with theta in (-pi, pi] maps to -theta / tau.
  MatrixXc H(d, d);
  VectorXc scaled(d);
  for (std::uint64_t k = 0; k < d; ++k) {
    const double theta = std::arg(ue.values[k]);
    scaled[k] = -theta / tau;
  }
  H.noalias() = ue.vectors * scaled.asDiagonal() * ue.vectors.adjoint();

  return project_onto_basis(H, realize_basis(basis, p.L));
}

double mean_tau(const AdaTrajectory& traj) {
  if (traj.steps.empty()) throw ConfigError("mean_tau: empty trajectory");
  double s = 0;
  for (const auto& r : traj.steps) s += r.tau;
  return s / (double)traj.steps.size();
}

BchCoefficients fixed_step_comparison(const AdaTrajectory& traj) {
  return bch_coefficients(mean_tau(traj), traj.params);
}

}  // namespace effham
