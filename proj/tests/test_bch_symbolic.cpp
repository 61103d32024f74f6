#include <doctest.h>

#include <array>
#include <map>
#include <string>

#include "effham/bch.hpp"
#include "support/dense_oracle.hpp"

using namespace effham;

namespace {

TranslationSum expansion() {
  return symmetric_bch_order2(ising_hx_symbolic(), ising_hz_symbolic(),
                              Poly::var(Symbol::tau));
}

}  // namespace

TEST_CASE("expansion decomposes into exactly the six expected classes") {
  const auto classes = decompose_into_mirror_classes(expansion());
  const auto forms = bch_closed_form_polynomials();

  REQUIRE(classes.size() == 6);
  REQUIRE(forms.size() == 6);
  for (const char* label : {"X", "Z", "ZZ", "YY", "XZ", "ZXZ"}) {
    CAPTURE(label);
    REQUIRE(classes.count(label) == 1);
    const PolyC& c = classes.at(label);
    CHECK(c.is_real());
    // Exact polynomial identity, no tolerance.
    CHECK(c.re == forms.at(label));
  }
}

TEST_CASE("expansion is Hermitian and tau-even") {
  const TranslationSum e = expansion();
  CHECK(e.is_hermitian());
  for (const auto& [pat, c] : e.patterns()) {
    for (const auto& [mono, coeff] : c.re.terms()) {
      const int tau_power = mono.exp[(int)Symbol::tau];
      CHECK((tau_power == 0 || tau_power == 2));
    }
  }
}

TEST_CASE("closed forms at tau=0 reduce to the bare couplings") {
  const auto forms = bch_closed_form_polynomials();
  const std::array<Rational, 4> at{Rational(0), Rational(3), Rational(5),
                                   Rational(7)};
  CHECK(forms.at("X").eval(at) == Rational(5));
  CHECK(forms.at("Z").eval(at) == Rational(7));
  CHECK(forms.at("ZZ").eval(at) == Rational(3));
  CHECK(forms.at("YY").eval(at) == Rational(0));
  CHECK(forms.at("XZ").eval(at) == Rational(0));
  CHECK(forms.at("ZXZ").eval(at) == Rational(0));
}

TEST_CASE("dropping the transverse field leaves only the bare pieces") {
  // With h_x = 0 both factors commute and the correction terms vanish.
  TranslationSum hx;  // empty
  const TranslationSum e =
      symmetric_bch_order2(hx, ising_hz_symbolic(), Poly::var(Symbol::tau));
  CHECK(e == ising_hz_symbolic());
}

TEST_CASE("dropping the longitudinal pieces kills the Z and XZ classes") {
  TranslationSum hz;
  hz.add(PauliString::from_text("ZZ"), PolyC(Poly::var(Symbol::J_z)));
  const TranslationSum e =
      symmetric_bch_order2(ising_hx_symbolic(), hz, Poly::var(Symbol::tau));
  const auto classes = decompose_into_mirror_classes(e);
  REQUIRE(classes.size() == 4);
  CHECK(classes.count("X") == 1);
  CHECK(classes.count("ZZ") == 1);
  CHECK(classes.count("YY") == 1);
  CHECK(classes.count("ZXZ") == 1);
}

TEST_CASE("symbolic expansion matches a dense nested-commutator oracle") {
  // Evaluate the expansion's classes numerically on an L=6 ring and compare
  // against A + B + (tau^2/24)[[B,A],A] + (tau^2/12)[[B,A],B] built from
  // dense matrices (A the halved factor, both Hermitian). This checks the
  // translation-invariant commutator engine and the class decomposition;
  // the physical correctness of the expansion itself is ratified separately
  // by the matrix-log extraction tests.
  const int L = 6;
  const double tau = 0.3, J_z = -1.0, h_x = -1.7, h_z = 0.5;
  const std::array<double, 4> at{tau, J_z, h_x, h_z};

  const std::uint64_t d = 1ull << L;
  MatrixXc A = MatrixXc::Zero(d, d), B = MatrixXc::Zero(d, d);
  for (int j = 0; j < L; ++j) {
    A += h_x * oracle::pattern_operator("X", j, L);
    B += J_z * oracle::pattern_operator("ZZ", j, L);
    B += h_z * oracle::pattern_operator("Z", j, L);
  }
  auto comm = [](const MatrixXc& x, const MatrixXc& y) { return x * y - y * x; };
  const MatrixXc g = comm(B, A);
  const MatrixXc expected =
      A + B + (tau * tau / 24) * comm(g, A) + (tau * tau / 12) * comm(g, B);

  MatrixXc got = MatrixXc::Zero(d, d);
  for (const auto& [label, c] : decompose_into_mirror_classes(expansion()))
    got += Complex(c.re.eval(at), c.im.eval(at)) *
           oracle::symmetrized_operator(label, L);

  CHECK((got - expected).cwiseAbs().maxCoeff() < 1e-12);
}
