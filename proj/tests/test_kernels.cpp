#include <doctest.h>

#include <random>

#include "effham/basis.hpp"
#include "effham/kernels.hpp"
#include "effham/realize.hpp"
#include "support/dense_oracle.hpp"

using namespace effham;

namespace {
const ChainParams kChain{6, -1.0, 0.5, -1.7};
}

TEST_CASE("parallel and reference string kernels agree") {
  std::mt19937_64 rng(21);
  const int L = 8;
  const auto ops = realize_basis(build_basis(3, false), L);
  const VectorXc psi = oracle::random_state(L, rng);
  VectorXc out_omp(psi.size()), out_ref(psi.size());
  for (const auto& op : ops) {
    kernels::apply_strings(op.strings, psi, out_omp);
    kernels::ref::apply_strings(op.strings, psi, out_ref);
    CAPTURE(op.label);
    CHECK((out_omp - out_ref).cwiseAbs().maxCoeff() < 1e-13);
  }
}

TEST_CASE("parallel and reference rotations and phases agree") {
  std::mt19937_64 rng(22);
  const int L = 9;
  VectorXc a = oracle::random_state(L, rng);
  VectorXc b = a;
  kernels::uniform_x_rotation(L, 0.3717, a);
  kernels::ref::uniform_x_rotation(L, 0.3717, b);
  CHECK((a - b).cwiseAbs().maxCoeff() < 1e-13);

  const auto diag = ising_diagonal(ChainParams{L, -1.0, 0.5, -1.7});
  kernels::diagonal_phase(diag, 0.456, a);
  kernels::ref::diagonal_phase(diag, 0.456, b);
  CHECK((a - b).cwiseAbs().maxCoeff() < 1e-13);
}

TEST_CASE("deterministic reductions match the reference") {
  std::mt19937_64 rng(23);
  const int L = 10;
  const VectorXc a = oracle::random_state(L, rng);
  const VectorXc b = oracle::random_state(L, rng);
  const Complex i1 = kernels::inner(a, b);
  const Complex i2 = kernels::ref::inner(a, b);
  CHECK(std::abs(i1 - i2) < 1e-13);
  CHECK(kernels::squared_norm(a) == doctest::Approx(1.0).epsilon(1e-13));

  // The fixed chunk grid makes the reduction independent of the thread cap.
  const int old_cap = thread_cap();
  set_thread_cap(1);
  const Complex c1 = kernels::inner(a, b);
  set_thread_cap(4);
  const Complex c4 = kernels::inner(a, b);
  set_thread_cap(old_cap);
  CHECK(c1 == c4);
}

TEST_CASE("string application matches dense operators") {
  std::mt19937_64 rng(24);
  const auto ops = realize_basis(build_basis(3, false), kChain.L);
  const VectorXc psi = oracle::random_state(kChain.L, rng);
  VectorXc out(psi.size());
  for (const auto& op : ops) {
    op.apply(psi, out);
    const VectorXc expected =
        oracle::symmetrized_operator(op.label, kChain.L) * psi;
    CAPTURE(op.label);
    CHECK((out - expected).cwiseAbs().maxCoeff() < 1e-12);
  }
}

TEST_CASE("chain kernel applies the dense Hamiltonian") {
  std::mt19937_64 rng(25);
  const ChainKernel kernel = ChainKernel::make(kChain);
  const VectorXc psi = oracle::random_state(kChain.L, rng);
  VectorXc w(psi.size());
  kernel.apply(psi, w);
  const VectorXc expected = oracle::dense_chain(kChain) * psi;
  CHECK((w - expected).cwiseAbs().maxCoeff() < 1e-12);

  // Same content through the realized-operator path.
  CHECK((dense_hamiltonian(kChain) - oracle::dense_chain(kChain))
            .cwiseAbs()
            .maxCoeff() < 1e-12);
}

TEST_CASE("diagonal eigenvalues follow the bit convention") {
  // Index 0 is all-down: every z_j = -1, so J_z terms add up positively and
  // h_z terms negatively.
  const auto diag = ising_diagonal(kChain);
  CHECK(diag[0] == doctest::Approx(kChain.L * (kChain.J_z - kChain.h_z)));
  const std::uint64_t all_up = (1ull << kChain.L) - 1;
  CHECK(diag[all_up] == doctest::Approx(kChain.L * (kChain.J_z + kChain.h_z)));
  // One up spin breaks two bonds.
  CHECK(diag[1] == doctest::Approx((kChain.L - 4) * kChain.J_z -
                                   (kChain.L - 2) * kChain.h_z));
}

TEST_CASE("compiled strings reject over-long supports") {
  CHECK_THROWS(compile_string(PauliString::from_text("XIIIZ"), 4, 1.0));
  CHECK_NOTHROW(compile_string(PauliString::from_text("XIIZ"), 4, 1.0));
}
