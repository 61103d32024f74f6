#include "effham/simulator.hpp"

#include <bit>
#include <cmath>
#include <stdexcept>

#include "effham/eigh.hpp"
#include "effham/errors.hpp"

namespace effham {

StateVector initial_state(int L, double theta_y) {
  StateVector s = StateVector::zero(L);
  const double c = std::cos(theta_y);
  const double ms = -std::sin(theta_y);
  for (std::int64_t n = 0; n < s.dim(); ++n) {
    const int ups = std::popcount(std::uint64_t(n));
    s.amps[n] = std::pow(c, L - ups) * std::pow(ms, ups);
  }
  return s;
}

void trotter_step_inplace(VectorXc& psi, double tau, const ChainKernel& k) {
  kernels::uniform_x_rotation(k.p.L, tau * k.p.h_x / 2, psi);
  kernels::diagonal_phase(k.diag, tau, psi);
  kernels::uniform_x_rotation(k.p.L, tau * k.p.h_x / 2, psi);
}

StateVector trotter_step(const StateVector& psi, double tau,
                         const ChainParams& p) {
  StateVector out = psi;
  ChainKernel k = ChainKernel::make(p);
  trotter_step_inplace(out.amps, tau, k);
  return out;
}

StateVector evolve_exact(const StateVector& psi, const MatrixXc& H, double t) {
  const double herm = (H - H.adjoint()).cwiseAbs().maxCoeff();
  if (herm > 1e-10)
    throw NonHermitian("evolve_exact: H deviates from Hermitian by " +
                       std::to_string(herm));
  Eigh e = hermitian_eigh(H);
  VectorXc a = e.vectors.adjoint() * psi.amps;
  for (Eigen::Index k = 0; k < a.size(); ++k)
    a[k] *= Complex(std::cos(t * e.values[k]), -std::sin(t * e.values[k]));
  StateVector out;
  out.L = psi.L;
  out.amps = e.vectors * a;
  return out;
}

double expectation(const StateVector& psi, const RealizedOperator& A) {
  VectorXc w;
  A.apply(psi.amps, w);
  const Complex v = kernels::inner(psi.amps, w);
  if (std::abs(v.imag()) >= 1e-9)
    throw NonHermitian("expectation has imaginary part " +
                       std::to_string(v.imag()));
  return v.real();
}

std::pair<double, double> energy_and_variance_density(const VectorXc& psi,
                                                      const ChainKernel& k) {
  VectorXc w;
  k.apply(psi, w);
  const double e_tot = kernels::inner(psi, w).real();
  const double h2_tot = kernels::squared_norm(w);  // <H psi|H psi> = <H^2>
  const double L = double(k.p.L);
  const double E = e_tot / L;
  return {E, h2_tot / L - L * E * E};
}

std::pair<double, double> energy_and_variance_density(const StateVector& psi,
                                                      const ChainParams& p) {
  return energy_and_variance_density(psi.amps, ChainKernel::make(p));
}

double fidelity(const StateVector& psi, const StateVector& phi) {
  if (psi.dim() != phi.dim())
    throw std::invalid_argument("fidelity: dimension mismatch");
  return std::norm(kernels::inner(psi.amps, phi.amps));
}

ReducedDensityMatrix reduced_density_matrix(const StateVector& psi,
                                            int first_site) {
  if (psi.L < 3) throw std::invalid_argument("need at least 3 sites");
  if (first_site < 0 || first_site >= psi.L)
    throw std::invalid_argument("window start outside chain");
  const int s0 = first_site, s1 = (first_site + 1) % psi.L,
            s2 = (first_site + 2) % psi.L;
  const std::uint64_t b0 = 1ULL << s0, b1 = 1ULL << s1, b2 = 1ULL << s2;
  const std::uint64_t window = b0 | b1 | b2;
  ReducedDensityMatrix r;
  r.first_site = first_site;
  r.rho = MatrixXc::Zero(8, 8);
  for (std::int64_t n = 0; n < psi.dim(); ++n) {
    const std::uint64_t un = std::uint64_t(n);
    const int a = int((un >> s0) & 1) | int((un >> s1) & 1) << 1 |
                  int((un >> s2) & 1) << 2;
    const std::uint64_t env = un & ~window;
    for (int b = 0; b < 8; ++b) {
      const std::uint64_t m = env | (std::uint64_t(b & 1) << s0) |
                              (std::uint64_t((b >> 1) & 1) << s1) |
                              (std::uint64_t((b >> 2) & 1) << s2);
      r.rho(a, b) += psi.amps[n] * std::conj(psi.amps[std::int64_t(m)]);
    }
  }
  return r;
}

double magnetization_density(const StateVector& psi) {
  const int L = psi.L;
  double acc = 0;
  for (std::int64_t n = 0; n < psi.dim(); ++n)
    acc += std::norm(psi.amps[n]) * (2 * std::popcount(std::uint64_t(n)) - L);
  return acc / L;
}

}  // namespace effham
