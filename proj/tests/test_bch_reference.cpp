#include <doctest.h>

#include <cmath>
#include <map>
#include <random>
#include <string>

#include "effham/basis.hpp"
#include "effham/bch_reference.hpp"
#include "effham/errors.hpp"
#include "effham/simulator.hpp"
#include "support/dense_oracle.hpp"

using namespace effham;

namespace {

const ChainParams kChain{6, -1.0, 0.5, -1.7};

std::map<std::string, double> class_map(const BchCoefficients& c) {
  return {{"X", c.C_X},   {"Z", c.C_Z},   {"ZZ", c.C_ZZ},
          {"YY", c.C_YY}, {"XZ", c.C_ZX}, {"ZXZ", c.C_ZXZ}};
}

// l2 distance between an extracted coefficient vector and the closed forms
// placed at their class labels (all other classes predicted zero).
double residual_norm(const Eigen::VectorXd& extracted,
                     const OperatorBasis& basis, const BchCoefficients& c) {
  Eigen::VectorXd predicted = Eigen::VectorXd::Zero(extracted.size());
  for (const auto& [label, value] : class_map(c)) {
    const int idx = basis.find(label);
    REQUIRE(idx >= 0);
    predicted[idx] = value;
  }
  return (extracted - predicted).norm();
}

}  // namespace

TEST_CASE("closed forms at tau = 0 reduce to the bare couplings") {
  const BchCoefficients c = bch_coefficients(0.0, kChain);
  CHECK(c.C_X == kChain.h_x);
  CHECK(c.C_Z == kChain.h_z);
  CHECK(c.C_ZZ == kChain.J_z);
  CHECK(c.C_YY == 0.0);
  CHECK(c.C_ZX == 0.0);
  CHECK(c.C_ZXZ == 0.0);
  CHECK(c.tau == 0.0);
}

TEST_CASE("closed forms at tau = 0.2") {
  const BchCoefficients c = bch_coefficients(0.2, kChain);
  CHECK(std::abs(c.C_X - (-1.649000)) < 5e-7);
  CHECK(std::abs(c.C_Z - 0.509633) < 5e-7);
  CHECK(std::abs(c.C_ZZ - (-1.038533)) < 5e-7);
  CHECK(std::abs(c.C_YY - 0.038533) < 5e-7);
  CHECK(std::abs(c.C_ZX - (-0.022667)) < 5e-7);
  CHECK(std::abs(c.C_ZXZ - 0.045333) < 5e-7);
  // For J_z < 0 the YY correction comes out positive, opposite in sign to
  // the ZZ correction of the same magnitude.
  CHECK(c.C_YY > 0.0);
  CHECK(c.C_YY == doctest::Approx(-(c.C_ZZ - kChain.J_z)).epsilon(1e-12));
}

TEST_CASE("dense one-step unitary") {
  const double tau = 0.23;
  const MatrixXc u = trotter_unitary_dense(tau, kChain);
  const auto d = u.rows();
  CHECK((u.adjoint() * u - MatrixXc::Identity(d, d)).cwiseAbs().maxCoeff() <
        1e-12);

  std::mt19937_64 rng(61);
  StateVector psi = StateVector::zero(kChain.L);
  psi.amps = oracle::random_state(kChain.L, rng);
  const StateVector stepped = trotter_step(psi, tau, kChain);
  CHECK((u * psi.amps - stepped.amps).cwiseAbs().maxCoeff() < 1e-13);
}

TEST_CASE("extraction is exact for a commuting chain") {
  // h_x = 0 makes the split-step the exact diagonal evolution, so the
  // effective couplings are the bare ones at every tau inside the branch.
  const ChainParams p{6, -1.0, 0.5, 0.0};
  const OperatorBasis basis = build_basis(3, false);
  const Eigen::VectorXd c = extract_effective_couplings(0.3, p, basis);
  for (int i = 0; i < basis.n(); ++i) {
    const std::string& label = basis.elements[(std::size_t)i].label;
    const double expected =
        label == "Z" ? p.h_z : label == "ZZ" ? p.J_z : 0.0;
    CAPTURE(label);
    CHECK(std::abs(c[i] - expected) < 1e-12);
  }
}

TEST_CASE("extraction approaches the closed forms as tau shrinks") {
  const OperatorBasis basis = build_basis(3, false);
  const double r1 = residual_norm(extract_effective_couplings(0.1, kChain, basis),
                                  basis, bch_coefficients(0.1, kChain)) /
                    (0.1 * 0.1);
  const double r2 =
      residual_norm(extract_effective_couplings(0.05, kChain, basis), basis,
                    bch_coefficients(0.05, kChain)) /
      (0.05 * 0.05);
  // The tau^2-normalized residual is itself O(tau^2): halving tau shrinks
  // it by ~4.
  CHECK(r1 / r2 > 2.8);
  CHECK(r1 / r2 < 5.2);
  CHECK(r2 < r1);
}

TEST_CASE("branch guard rejects steps past the eigenphase wrap") {
  const OperatorBasis basis = build_basis(2, true);
  CHECK_THROWS_AS(
      extract_effective_couplings(5.0, ChainParams{4, -1.0, 0.5, -1.7}, basis),
      BranchAmbiguity);
}

TEST_CASE("fixed-step comparison uses the mean step size") {
  AdaTrajectory traj;
  traj.params = kChain;
  traj.steps.push_back({1, 0.0L, 0.1, 0, 0});
  traj.steps.push_back({2, 0.1L, 0.2, 0, 0});
  traj.steps.push_back({3, 0.3L, 0.4, 0, 0});
  const double mean = mean_tau(traj);
  CHECK(mean == doctest::Approx((0.1 + 0.2 + 0.4) / 3).epsilon(1e-15));

  const BchCoefficients direct = bch_coefficients(mean, traj.params);
  const BchCoefficients viatraj = fixed_step_comparison(traj);
  CHECK(viatraj.tau == direct.tau);
  CHECK(viatraj.C_X == direct.C_X);
  CHECK(viatraj.C_Z == direct.C_Z);
  CHECK(viatraj.C_ZZ == direct.C_ZZ);
  CHECK(viatraj.C_YY == direct.C_YY);
  CHECK(viatraj.C_ZX == direct.C_ZX);
  CHECK(viatraj.C_ZXZ == direct.C_ZXZ);
}
