#include "effham/bch.hpp"

#include <stdexcept>

namespace effham {

std::map<std::string, PolyC> decompose_into_mirror_classes(
    const TranslationSum& sum) {
  std::map<std::string, PolyC> classes;
  for (const auto& [pattern, coeff] : sum.patterns()) {
    PauliString mirror = pattern.reversed();
    if (mirror.letters < pattern.letters) continue;  // handled from the partner
    if (mirror.letters != pattern.letters) {
      PolyC partner = sum.coefficient(mirror);
      if (!(partner == coeff))
        throw std::invalid_argument(
            "mirror partners carry unequal coefficients: " + pattern.text());
    }
    classes.emplace(pattern.text(), coeff);
  }
  return classes;
}

TranslationSum ising_hx_symbolic() {
  TranslationSum hx;
  hx.add(PauliString::from_text("X"), PolyC(Poly::var(Symbol::h_x)));
  return hx;
}

TranslationSum ising_hz_symbolic() {
  TranslationSum hz;
  hz.add(PauliString::from_text("ZZ"), PolyC(Poly::var(Symbol::J_z)));
  hz.add(PauliString::from_text("Z"), PolyC(Poly::var(Symbol::h_z)));
  return hz;
}

std::map<std::string, Poly> bch_closed_form_polynomials() {
  const Poly tau2 = Poly::var(Symbol::tau, 2);
  const Poly jz = Poly::var(Symbol::J_z);
  const Poly hx = Poly::var(Symbol::h_x);
  const Poly hz = Poly::var(Symbol::h_z);
  std::map<std::string, Poly> c;
  c["X"] = hx - tau2 * jz * jz * hx * Rational(2, 3) -
           tau2 * hz * hz * hx * Rational(1, 3);
  c["Z"] = hz + tau2 * hx * hx * hz * Rational(1, 6);
  c["ZZ"] = jz + tau2 * jz * hx * hx * Rational(1, 3);
  c["YY"] = -(tau2 * jz * hx * hx * Rational(1, 3));
  c["XZ"] = -(tau2 * jz * hx * hz * Rational(2, 3));
  c["ZXZ"] = -(tau2 * jz * jz * hx * Rational(2, 3));
  return c;
}

}  // namespace effham
