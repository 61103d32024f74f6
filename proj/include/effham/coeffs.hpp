#pragma once

#include <array>
#include <cstdint>
#include <map>
#include <string>

#include <boost/multiprecision/cpp_int.hpp>

namespace effham {

// Exact arithmetic for the symbolic layer. Every coefficient produced by the
// order-2 symmetric BCH expansion is a polynomial in the step size and the
// three chain couplings with rational coefficients, so identities can be
// tested by exact equality instead of tolerances.
using Rational = boost::multiprecision::cpp_rational;

enum class Symbol : int { tau = 0, J_z = 1, h_x = 2, h_z = 3 };
inline constexpr int n_symbols = 4;

const char* symbol_name(Symbol s);

// Exponent vector of the monomial tau^e0 * J_z^e1 * h_x^e2 * h_z^e3.
struct Monomial {
  std::array<std::uint8_t, n_symbols> exp{0, 0, 0, 0};

  friend auto operator<=>(const Monomial&, const Monomial&) = default;
  Monomial operator*(const Monomial& o) const;
  int degree() const;
};

// Sparse multivariate polynomial over the four symbols, exact coefficients.
class Poly {
 public:
  Poly() = default;
  explicit Poly(const Rational& c);
  static Poly var(Symbol s, int power = 1);

  bool is_zero() const { return terms_.empty(); }
  bool operator==(const Poly&) const = default;

  Poly operator-() const;
  Poly operator+(const Poly& o) const;
  Poly operator-(const Poly& o) const;
  Poly operator*(const Poly& o) const;
  Poly operator*(const Rational& c) const;

  Rational eval(const std::array<Rational, n_symbols>& values) const;
  double eval(const std::array<double, n_symbols>& values) const;

  const std::map<Monomial, Rational>& terms() const { return terms_; }
  std::string str() const;

 private:
  void add_term(const Monomial& m, const Rational& c);
  std::map<Monomial, Rational> terms_;
};

// Complex polynomial re + i*im with exact parts. Pauli products only ever
// multiply coefficients by integer powers of i, so this closes the algebra.
struct PolyC {
  Poly re, im;

  PolyC() = default;
  explicit PolyC(Poly r) : re(std::move(r)) {}
  PolyC(Poly r, Poly i) : re(std::move(r)), im(std::move(i)) {}
  explicit PolyC(const Rational& c) : re(Poly(c)) {}

  static PolyC one() { return PolyC(Rational(1)); }

  bool is_zero() const { return re.is_zero() && im.is_zero(); }
  bool is_real() const { return im.is_zero(); }
  bool operator==(const PolyC&) const = default;

  PolyC operator-() const { return {-re, -im}; }
  PolyC operator+(const PolyC& o) const { return {re + o.re, im + o.im}; }
  PolyC operator-(const PolyC& o) const { return {re - o.re, im - o.im}; }
  PolyC operator*(const PolyC& o) const {
    return {re * o.re - im * o.im, re * o.im + im * o.re};
  }
  PolyC operator*(const Rational& c) const { return {re * c, im * c}; }
  PolyC conj() const { return {re, -im}; }

  // Multiply by i^k (k may be any integer; reduced mod 4).
  PolyC times_i_power(int k) const;

  std::string str() const;
};

}  // namespace effham
