#include "effham/realize.hpp"

#include <bit>
#include <map>
#include <stdexcept>

#include "effham/errors.hpp"

namespace effham {

CompiledString compile_string(const PauliString& s, int L, double weight) {
  if (s.support() > L)
    throw std::invalid_argument("string support " +
                                std::to_string(s.support()) +
                                " exceeds chain length " + std::to_string(L));
  CompiledString c;
  int y = 0;
  for (int k = 0; k < s.support(); ++k) {
    const int site = int(((s.offset + k) % L + L) % L);
    const std::uint64_t bit = std::uint64_t(1) << site;
    switch (s.letters[std::size_t(k)]) {
      case Pauli::I: break;
      case Pauli::X: c.flip |= bit; break;
      case Pauli::Y: c.flip |= bit; c.sign |= bit; ++y; break;
      case Pauli::Z: c.sign |= bit; break;
    }
  }
  const Complex i_pow[4] = {{1, 0}, {0, 1}, {-1, 0}, {0, -1}};
  c.prefactor = weight * i_pow[y % 4];
  return c;
}

namespace {

// Accumulate weight-1 translations, merging strings that alias on short rings.
void add_translations(std::map<std::pair<std::uint64_t, std::uint64_t>, double>& acc,
                      const PauliString& pattern, int L) {
  for (int j = 0; j < L; ++j) {
    CompiledString c = compile_string(pattern.translated(j), L, 1.0);
    acc[{c.flip, c.sign}] += 1.0;
  }
}

}  // namespace

RealizedOperator realize(const SymmetrizedOperator& op, int L) {
  RealizedOperator r;
  r.L = L;
  r.label = op.label;
  std::map<std::pair<std::uint64_t, std::uint64_t>, double> acc;
  add_translations(acc, op.representative, L);
  if (op.mirror_partner_distinct)
    add_translations(acc, op.representative.reversed(), L);
  const double d = double(std::int64_t(1) << L);
  for (const auto& [key, weight] : acc) {
    const int y = std::popcount(key.first & key.second);
    const Complex i_pow[4] = {{1, 0}, {0, 1}, {-1, 0}, {0, -1}};
    r.strings.push_back({key.first, key.second, weight * i_pow[y % 4]});
    r.hs_norm_sq += weight * weight * d;
  }
  return r;
}

std::vector<RealizedOperator> realize_basis(const OperatorBasis& basis, int L) {
  if (basis.options.max_support > L)
    throw std::invalid_argument("basis max support exceeds chain length");
  std::vector<RealizedOperator> ops;
  ops.reserve(std::size_t(basis.n()));
  for (const auto& e : basis.elements) ops.push_back(realize(e, L));
  return ops;
}

MatrixXc RealizedOperator::dense() const {
  const std::int64_t d = std::int64_t(1) << L;
  MatrixXc m = MatrixXc::Zero(d, d);
  for (const CompiledString& s : strings)
    for (std::int64_t n = 0; n < d; ++n) {
      const double sgn = (std::popcount(s.sign & ~std::uint64_t(n)) & 1) ? -1.0 : 1.0;
      m(std::int64_t(std::uint64_t(n) ^ s.flip), n) += s.prefactor * sgn;
    }
  return m;
}

MatrixXc dense_hamiltonian(const ChainParams& p) {
  std::vector<CompiledString> strings;
  for (int j = 0; j < p.L; ++j) {
    strings.push_back(
        compile_string(PauliString::from_text("ZZ", j), p.L, p.J_z));
    strings.push_back(compile_string(PauliString::from_text("Z", j), p.L, p.h_z));
    strings.push_back(compile_string(PauliString::from_text("X", j), p.L, p.h_x));
  }
  const std::int64_t d = std::int64_t(1) << p.L;
  MatrixXc m = MatrixXc::Zero(d, d);
  for (const CompiledString& s : strings)
    for (std::int64_t n = 0; n < d; ++n) {
      const double sgn = (std::popcount(s.sign & ~std::uint64_t(n)) & 1) ? -1.0 : 1.0;
      m(std::int64_t(std::uint64_t(n) ^ s.flip), n) += s.prefactor * sgn;
    }
  return m;
}

Eigen::VectorXd project_onto_basis(const MatrixXc& H,
                                   const std::vector<RealizedOperator>& ops) {
  const double herm = (H - H.adjoint()).cwiseAbs().maxCoeff();
  if (herm > 1e-10)
    throw NonHermitian("projection input deviates from Hermitian by " +
                       std::to_string(herm));
  Eigen::VectorXd c(ops.size());
  for (std::size_t a = 0; a < ops.size(); ++a) {
    // Tr(O H) = sum_s pref_s sum_n parity_s(n) H(n, n^flip_s)
    Complex tr = 0;
    for (const CompiledString& s : ops[a].strings) {
      Complex t = 0;
      for (std::int64_t n = 0; n < H.rows(); ++n) {
        const double sgn =
            (std::popcount(s.sign & ~std::uint64_t(n)) & 1) ? -1.0 : 1.0;
        t += sgn * H(n, std::int64_t(std::uint64_t(n) ^ s.flip));
      }
      tr += s.prefactor * t;
    }
    c[Eigen::Index(a)] = tr.real() / ops[a].hs_norm_sq;
  }
  return c;
}

}  // namespace effham
