#include "effham/kernels.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <cstdlib>

#ifdef _OPENMP
#include <omp.h>
#endif

namespace effham {

namespace {

int g_cap = 0;  // 0 = not resolved yet

int resolve_cap() {
  int cap = 1;
#ifdef _OPENMP
  cap = omp_get_max_threads();
#endif
  if (const char* env = std::getenv("EFFHAM_THREADS")) {
    int n = std::atoi(env);
    if (n >= 1) cap = std::min(cap, n);
  }
  return std::max(cap, 1);
}

inline double parity_sign(std::uint64_t m) {
  return (std::popcount(m) & 1) ? -1.0 : 1.0;
}

}  // namespace

void set_thread_cap(int n) { g_cap = n >= 1 ? n : resolve_cap(); }

int thread_cap() {
  if (g_cap == 0) g_cap = resolve_cap();
  return g_cap;
}

namespace kernels {

void apply_strings(const std::vector<CompiledString>& strings,
                   const VectorXc& in, VectorXc& out) {
  const std::int64_t d = in.size();
  out.resize(d);
  const CompiledString* s = strings.data();
  const int ns = int(strings.size());
#pragma omp parallel for schedule(static) num_threads(thread_cap())
  for (std::int64_t m = 0; m < d; ++m) {
    Complex acc = 0;
    for (int k = 0; k < ns; ++k) {
      const std::uint64_t n = std::uint64_t(m) ^ s[k].flip;
      acc += s[k].prefactor * parity_sign(s[k].sign & ~n) * in[std::int64_t(n)];
    }
    out[m] = acc;
  }
}

void uniform_x_rotation(int L, double phi, VectorXc& psi) {
  const double c = std::cos(phi);
  const Complex mis(0.0, -std::sin(phi));  // -i sin(phi)
  const std::int64_t half = psi.size() / 2;
  for (int j = 0; j < L; ++j) {
    const std::int64_t bit = std::int64_t(1) << j;
    const std::int64_t low_mask = bit - 1;
#pragma omp parallel for schedule(static) num_threads(thread_cap())
    for (std::int64_t m0 = 0; m0 < half; ++m0) {
      const std::int64_t n = ((m0 & ~low_mask) << 1) | (m0 & low_mask);
      const Complex a = psi[n];
      const Complex b = psi[n | bit];
      psi[n] = c * a + mis * b;
      psi[n | bit] = mis * a + c * b;
    }
  }
}

void diagonal_phase(const std::vector<double>& diag, double tau, VectorXc& psi) {
  const std::int64_t d = psi.size();
#pragma omp parallel for schedule(static) num_threads(thread_cap())
  for (std::int64_t n = 0; n < d; ++n)
    psi[n] *= Complex(std::cos(tau * diag[std::size_t(n)]),
                      -std::sin(tau * diag[std::size_t(n)]));
}

namespace {

constexpr std::int64_t kChunks = 256;

template <class Acc, class Body>
Acc chunked_reduce(std::int64_t len, Body body) {
  const std::int64_t nc = std::min<std::int64_t>(kChunks, std::max<std::int64_t>(len, 1));
  std::vector<Acc> partial(std::size_t(nc), Acc(0));
#pragma omp parallel for schedule(static) num_threads(thread_cap())
  for (std::int64_t c = 0; c < nc; ++c) {
    const std::int64_t lo = len * c / nc;
    const std::int64_t hi = len * (c + 1) / nc;
    Acc acc(0);
    for (std::int64_t i = lo; i < hi; ++i) acc += body(i);
    partial[std::size_t(c)] = acc;
  }
  Acc total(0);
  for (const Acc& x : partial) total += x;
  return total;
}

}  // namespace

Complex inner(const VectorXc& a, const VectorXc& b) {
  return chunked_reduce<Complex>(
      a.size(), [&](std::int64_t i) { return std::conj(a[i]) * b[i]; });
}

double squared_norm(const VectorXc& a) {
  return chunked_reduce<double>(
      a.size(), [&](std::int64_t i) { return std::norm(a[i]); });
}

namespace ref {

void apply_strings(const std::vector<CompiledString>& strings,
                   const VectorXc& in, VectorXc& out) {
  const std::int64_t d = in.size();
  out = VectorXc::Zero(d);
  for (const CompiledString& s : strings)
    for (std::int64_t n = 0; n < d; ++n)
      out[std::int64_t(std::uint64_t(n) ^ s.flip)] +=
          s.prefactor * parity_sign(s.sign & ~std::uint64_t(n)) * in[n];
}

void uniform_x_rotation(int L, double phi, VectorXc& psi) {
  const double c = std::cos(phi);
  const Complex mis(0.0, -std::sin(phi));
  for (int j = 0; j < L; ++j) {
    const std::int64_t bit = std::int64_t(1) << j;
    for (std::int64_t n = 0; n < psi.size(); ++n) {
      if (n & bit) continue;
      const Complex a = psi[n];
      const Complex b = psi[n | bit];
      psi[n] = c * a + mis * b;
      psi[n | bit] = mis * a + c * b;
    }
  }
}

void diagonal_phase(const std::vector<double>& diag, double tau, VectorXc& psi) {
  for (std::int64_t n = 0; n < psi.size(); ++n)
    psi[n] *= std::polar(1.0, -tau * diag[std::size_t(n)]);
}

Complex inner(const VectorXc& a, const VectorXc& b) {
  Complex acc = 0;
  for (std::int64_t i = 0; i < a.size(); ++i) acc += std::conj(a[i]) * b[i];
  return acc;
}

double squared_norm(const VectorXc& a) {
  double acc = 0;
  for (std::int64_t i = 0; i < a.size(); ++i) acc += std::norm(a[i]);
  return acc;
}

}  // namespace ref

}  // namespace kernels

std::vector<double> ising_diagonal(const ChainParams& p) {
  const std::int64_t d = std::int64_t(1) << p.L;
  std::vector<double> diag(std::size_t(d), 0.0);
#pragma omp parallel for schedule(static) num_threads(thread_cap())
  for (std::int64_t n = 0; n < d; ++n) {
    double zz = 0, z = 0;
    for (int j = 0; j < p.L; ++j) {
      const double zj = (n >> j) & 1 ? 1.0 : -1.0;
      const double zj1 = (n >> ((j + 1) % p.L)) & 1 ? 1.0 : -1.0;
      zz += zj * zj1;
      z += zj;
    }
    diag[std::size_t(n)] = p.J_z * zz + p.h_z * z;
  }
  return diag;
}

ChainKernel ChainKernel::make(const ChainParams& p) {
  return ChainKernel{p, ising_diagonal(p)};
}

void ChainKernel::apply(const VectorXc& psi, VectorXc& w) const {
  const std::int64_t d = psi.size();
  w.resize(d);
  const int L = p.L;
  const double hx = p.h_x;
#pragma omp parallel for schedule(static) num_threads(thread_cap())
  for (std::int64_t m = 0; m < d; ++m) {
    Complex acc = diag[std::size_t(m)] * psi[m];
    for (int j = 0; j < L; ++j) acc += hx * psi[m ^ (std::int64_t(1) << j)];
    w[m] = acc;
  }
}

}  // namespace effham
