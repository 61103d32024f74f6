#include <doctest.h>

#include <cmath>
#include <random>

#include "effham/basis.hpp"
#include "effham/errors.hpp"
#include "effham/simulator.hpp"
#include "support/dense_oracle.hpp"

using namespace effham;

namespace {

const ChainParams kChain{4, -1.0, 0.5, -1.7};

StateVector random_state_vector(int L, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  StateVector s = StateVector::zero(L);
  s.amps = oracle::random_state(L, rng);
  return s;
}

// Dense one-step oracle: the rightmost factor acts first.
VectorXc dense_trotter(const VectorXc& psi, double tau, const ChainParams& p) {
  const std::uint64_t d = 1ull << p.L;
  MatrixXc hx = MatrixXc::Zero(d, d);
  MatrixXc hz = MatrixXc::Zero(d, d);
  for (int j = 0; j < p.L; ++j) {
    hx += p.h_x * oracle::pattern_operator("X", j, p.L);
    hz += p.J_z * oracle::pattern_operator("ZZ", j, p.L);
    hz += p.h_z * oracle::pattern_operator("Z", j, p.L);
  }
  VectorXc v = oracle::expm_apply(hx, tau / 2, psi);
  v = oracle::expm_apply(hz, tau, v);
  return oracle::expm_apply(hx, tau / 2, v);
}

}  // namespace

TEST_CASE("initial product state") {
  const double theta = std::acos(-1.0) / 3;  // pi/3
  const StateVector s = initial_state(4, theta);
  CHECK(s.norm() == doctest::Approx(1.0).epsilon(1e-14));
  CHECK(magnetization_density(s) == doctest::Approx(0.5).epsilon(1e-12));

  // Amplitude of |n> is prod_j (bit set ? -sin : cos).
  const double c = std::cos(theta), sn = std::sin(theta);
  CHECK(std::abs(s.amps[0] - Complex(c * c * c * c)) < 1e-14);
  CHECK(std::abs(s.amps[0b0101] - Complex(c * c * sn * sn)) < 1e-14);
  CHECK(std::abs(s.amps[0b0001] - Complex(-c * c * c * sn)) < 1e-14);

  const StateVector down = initial_state(5, 0.0);
  CHECK(std::abs(down.amps[0] - Complex(1.0)) < 1e-15);
  CHECK(magnetization_density(down) == doctest::Approx(-1.0).epsilon(1e-14));
}

TEST_CASE("trotter step matches the dense three-factor product") {
  const StateVector psi = random_state_vector(kChain.L, 41);
  for (double tau : {0.05, 0.17, 0.6}) {
    const StateVector stepped = trotter_step(psi, tau, kChain);
    const VectorXc expected = dense_trotter(psi.amps, tau, kChain);
    CAPTURE(tau);
    CHECK((stepped.amps - expected).cwiseAbs().maxCoeff() < 1e-10);
    CHECK(stepped.norm() == doctest::Approx(1.0).epsilon(1e-12));
  }
}

TEST_CASE("exact evolution matches the Pade exponential") {
  const StateVector psi = random_state_vector(kChain.L, 42);
  const MatrixXc h = oracle::dense_chain(kChain);
  for (double t : {0.3, 0.9, 2.4}) {
    const StateVector evolved = evolve_exact(psi, h, t);
    const VectorXc expected = oracle::expm_apply(h, t, psi.amps);
    CAPTURE(t);
    CHECK((evolved.amps - expected).cwiseAbs().maxCoeff() < 1e-10);
  }
  CHECK_THROWS_AS(
      evolve_exact(psi, h + MatrixXc::Constant(h.rows(), h.cols(), Complex(0, 1.0)),
                   0.5),
      NonHermitian);
}

TEST_CASE("expectation values match dense contractions") {
  const int L = 5;
  const StateVector psi = random_state_vector(L, 43);
  const auto ops = realize_basis(build_basis(2, false), L);
  for (const auto& op : ops) {
    const MatrixXc dense = oracle::symmetrized_operator(op.label, L);
    const Complex expected = (psi.amps.adjoint() * dense * psi.amps)(0, 0);
    CAPTURE(op.label);
    CHECK(expectation(psi, op) ==
          doctest::Approx(expected.real()).epsilon(1e-11));
  }
}

TEST_CASE("energy and variance densities against dense moments") {
  for (int L : {4, 6}) {
    const ChainParams p{L, -1.0, 0.5, -1.7};
    const StateVector psi = random_state_vector(L, 44 + L);
    const MatrixXc h = oracle::dense_chain(p);
    const VectorXc hpsi = h * psi.amps;
    const double e1 = (psi.amps.adjoint() * hpsi)(0, 0).real();
    const double e2 = hpsi.squaredNorm();
    const auto [E, dE2] = energy_and_variance_density(psi, p);
    CAPTURE(L);
    CHECK(E == doctest::Approx(e1 / L).epsilon(1e-12));
    CHECK(dE2 == doctest::Approx(e2 / L - L * (e1 / L) * (e1 / L))
                     .epsilon(1e-10));
  }
}

TEST_CASE("eigenstates have zero variance density") {
  const MatrixXc h = oracle::dense_chain(kChain);
  const Eigen::SelfAdjointEigenSolver<MatrixXc> solver(h);
  StateVector s = StateVector::zero(kChain.L);
  s.amps = solver.eigenvectors().col(3);
  const auto [E, dE2] = energy_and_variance_density(s, kChain);
  CHECK(E == doctest::Approx(solver.eigenvalues()[3] / kChain.L)
                 .epsilon(1e-12));
  CHECK(std::abs(dE2) < 1e-10);
}

TEST_CASE("reduced density matrix over wrapping windows") {
  const int L = 5;
  const StateVector psi = random_state_vector(L, 45);
  for (int w : {0, 2, 3, 4}) {
    const ReducedDensityMatrix rdm = reduced_density_matrix(psi, w);
    const MatrixXc expected = oracle::reduced_rho3(psi.amps, L, w);
    CAPTURE(w);
    CHECK(rdm.first_site == w);
    CHECK((rdm.rho - expected).cwiseAbs().maxCoeff() < 1e-12);
    CHECK((rdm.rho - rdm.rho.adjoint().eval()).cwiseAbs().maxCoeff() < 1e-12);
    CHECK(std::abs(rdm.rho.trace() - Complex(1.0)) < 1e-12);
  }
}

TEST_CASE("one-step error scales as tau cubed") {
  const ChainParams p{6, -1.0, 0.5, -1.7};
  const StateVector psi = random_state_vector(p.L, 46);
  const MatrixXc h = oracle::dense_chain(p);

  std::vector<double> log_tau, log_err;
  for (double tau : {0.02, 0.04, 0.08, 0.16}) {
    const StateVector stepped = trotter_step(psi, tau, p);
    const VectorXc exact = oracle::expm_apply(h, tau, psi.amps);
    log_tau.push_back(std::log(tau));
    log_err.push_back(std::log((stepped.amps - exact).norm()));
  }
  // Least-squares slope of log error vs log tau.
  const auto n = static_cast<double>(log_tau.size());
  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  for (std::size_t i = 0; i < log_tau.size(); ++i) {
    sx += log_tau[i];
    sy += log_err[i];
    sxx += log_tau[i] * log_tau[i];
    sxy += log_tau[i] * log_err[i];
  }
  const double slope = (n * sxy - sx * sy) / (n * sxx - sx * sx);
  CHECK(slope == doctest::Approx(3.0).epsilon(0.07));
}

TEST_CASE("fidelity") {
  const StateVector a = random_state_vector(3, 47);
  CHECK(fidelity(a, a) == doctest::Approx(1.0).epsilon(1e-13));
  StateVector b = StateVector::zero(3);
  b.amps[0] = 1.0;
  StateVector c = StateVector::zero(3);
  c.amps[5] = Complex(0, 1);
  CHECK(fidelity(b, c) == doctest::Approx(0.0).epsilon(1e-15));
}
