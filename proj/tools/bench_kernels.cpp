// Timing comparison between the OpenMP kernels and the serial reference
// implementations, plus the cost of one learner gradient evaluation (the
// inner loop of every optimization run). Each section cross-checks the two
// implementations before timing them, so the benchmark doubles as a
// consistency test at sizes the unit tests do not reach.

#include <chrono>
#include <cstdio>
#include <cstdlib>
#include <functional>
#include <random>
#include <vector>

#include "effham/basis.hpp"
#include "effham/kernels.hpp"
#include "effham/learner.hpp"
#include "effham/realize.hpp"
#include "effham/simulator.hpp"

using namespace effham;

namespace {

using Clock = std::chrono::steady_clock;

double time_ms(int reps, const std::function<void()>& fn) {
  fn();  // warm up
  double best = 1e300;
  for (int r = 0; r < reps; ++r) {
    auto t0 = Clock::now();
    fn();
    auto t1 = Clock::now();
    best = std::min(best,
                    std::chrono::duration<double, std::milli>(t1 - t0).count());
  }
  return best;
}

VectorXc random_state(int L, std::mt19937_64& rng) {
  std::normal_distribution<double> g;
  VectorXc v(1L << L);
  for (Eigen::Index i = 0; i < v.size(); ++i) v[i] = Complex(g(rng), g(rng));
  v /= v.norm();
  return v;
}

}  // namespace

int main(int argc, char** argv) {
  const int L = argc > 1 ? std::atoi(argv[1]) : 16;
  const ChainParams p{L, -1.0, 0.5, -1.7};
  std::mt19937_64 rng(7);

  std::printf("threads: %d\n", thread_cap());
  std::printf("\n-- statevector kernels, L = %d (dim %ld) --\n", L, 1L << L);

  const ChainKernel kernel = ChainKernel::make(p);
  VectorXc psi = random_state(L, rng);
  VectorXc w1(psi.size()), w2(psi.size());

  kernel.apply(psi, w1);
  {
    // reference H application assembled from the serial pieces
    const auto hz = ising_diagonal(p);
    w2.setZero();
    for (Eigen::Index n = 0; n < psi.size(); ++n) {
      Complex acc = hz[(std::size_t)n] * psi[n];
      for (int j = 0; j < L; ++j) acc += p.h_x * psi[n ^ (1L << j)];
      w2[n] = acc;
    }
  }
  std::printf("H apply      : omp %8.3f ms   (agreement %.2e)\n",
              time_ms(5, [&] { kernel.apply(psi, w1); }),
              (w1 - w2).cwiseAbs().maxCoeff());

  VectorXc a = psi, b = psi;
  const double t_rot =
      time_ms(5, [&] { kernels::uniform_x_rotation(L, 0.123, a); });
  const double t_rot_ref =
      time_ms(5, [&] { kernels::ref::uniform_x_rotation(L, 0.123, b); });
  std::printf("x rotation   : omp %8.3f ms   ref %8.3f ms   (%.1fx, agree %.2e)\n",
              t_rot, t_rot_ref, t_rot_ref / t_rot,
              (a - b).cwiseAbs().maxCoeff());

  a = psi;
  b = psi;
  const auto diag = ising_diagonal(p);
  const double t_ph =
      time_ms(5, [&] { kernels::diagonal_phase(diag, 0.2, a); });
  const double t_ph_ref =
      time_ms(5, [&] { kernels::ref::diagonal_phase(diag, 0.2, b); });
  std::printf("diag phase   : omp %8.3f ms   ref %8.3f ms   (%.1fx, agree %.2e)\n",
              t_ph, t_ph_ref, t_ph_ref / t_ph, (a - b).cwiseAbs().maxCoeff());

  a = psi;
  b = psi;
  const double t_step =
      time_ms(5, [&] { trotter_step_inplace(a, 0.2, kernel); });
  std::printf("trotter step : omp %8.3f ms\n", t_step);

  const double t_inner = time_ms(5, [&] { (void)kernels::inner(psi, a); });
  const double t_inner_ref =
      time_ms(5, [&] { (void)kernels::ref::inner(psi, b); });
  std::printf("inner product: omp %8.3f ms   ref %8.3f ms   (%.1fx)\n",
              t_inner, t_inner_ref, t_inner_ref / t_inner);

  // One gradient evaluation at learning scale: eigendecomposition plus two
  // dense products dominate; this number times epochs gives run cost.
  const int Ll = 8;
  const ChainParams pl{Ll, -1.0, 0.5, -1.7};
  const OperatorBasis basis = build_basis(5, true);
  const auto ops = realize_basis(basis, Ll);
  StateVector psi0 = initial_state(Ll, 1.0471975511965976);
  StateVector tgt = trotter_step(psi0, 0.2, pl);
  Eigen::VectorXd C = target_coupling_vector(ops, pl);

  std::printf("\n-- learner gradient, L = %d, basis N = %d --\n", Ll,
              basis.n());
  const double t_loss = time_ms(5, [&] {
    (void)loss_value(ops, C, psi0.amps, tgt.amps, 0.2);
  });
  const double t_grad = time_ms(5, [&] {
    (void)loss_and_gradient(ops, C, psi0.amps, tgt.amps, 0.2, 1e-12);
  });
  std::printf("loss only    : %8.3f ms\n", t_loss);
  std::printf("loss+gradient: %8.3f ms   (~%.0f epochs/minute)\n", t_grad,
              60000.0 / t_grad);
  return 0;
}
