#include "effham/coeffs.hpp"

#include <cassert>
#include <cmath>
#include <sstream>

namespace effham {

const char* symbol_name(Symbol s) {
  switch (s) {
    case Symbol::tau: return "tau";
    case Symbol::J_z: return "J_z";
    case Symbol::h_x: return "h_x";
    case Symbol::h_z: return "h_z";
  }
  return "?";
}

Monomial Monomial::operator*(const Monomial& o) const {
  Monomial r;
  for (int i = 0; i < n_symbols; ++i) {
    int e = int(exp[i]) + int(o.exp[i]);
    assert(e <= 255);
    r.exp[i] = std::uint8_t(e);
  }
  return r;
}

int Monomial::degree() const {
  int d = 0;
  for (auto e : exp) d += e;
  return d;
}

Poly::Poly(const Rational& c) {
  if (c != 0) terms_[Monomial{}] = c;
}

Poly Poly::var(Symbol s, int power) {
  assert(power >= 0 && power <= 255);
  Poly p;
  if (power == 0) return Poly(Rational(1));
  Monomial m;
  m.exp[int(s)] = std::uint8_t(power);
  p.terms_[m] = 1;
  return p;
}

void Poly::add_term(const Monomial& m, const Rational& c) {
  if (c == 0) return;
  auto [it, inserted] = terms_.emplace(m, c);
  if (!inserted) {
    it->second += c;
    if (it->second == 0) terms_.erase(it);
  }
}

Poly Poly::operator-() const {
  Poly r;
  for (const auto& [m, c] : terms_) r.terms_[m] = -c;
  return r;
}

Poly Poly::operator+(const Poly& o) const {
  Poly r = *this;
  for (const auto& [m, c] : o.terms_) r.add_term(m, c);
  return r;
}

Poly Poly::operator-(const Poly& o) const {
  Poly r = *this;
  for (const auto& [m, c] : o.terms_) r.add_term(m, -c);
  return r;
}

Poly Poly::operator*(const Poly& o) const {
  Poly r;
  for (const auto& [ma, ca] : terms_)
    for (const auto& [mb, cb] : o.terms_) r.add_term(ma * mb, ca * cb);
  return r;
}

Poly Poly::operator*(const Rational& c) const {
  Poly r;
  if (c == 0) return r;
  for (const auto& [m, cc] : terms_) r.terms_[m] = cc * c;
  return r;
}

Rational Poly::eval(const std::array<Rational, n_symbols>& values) const {
  Rational acc = 0;
  for (const auto& [m, c] : terms_) {
    Rational t = c;
    for (int i = 0; i < n_symbols; ++i)
      for (int e = 0; e < m.exp[i]; ++e) t *= values[i];
    acc += t;
  }
  return acc;
}

double Poly::eval(const std::array<double, n_symbols>& values) const {
  double acc = 0;
  for (const auto& [m, c] : terms_) {
    double t = c.convert_to<double>();
    for (int i = 0; i < n_symbols; ++i)
      if (m.exp[i] > 0) t *= std::pow(values[i], int(m.exp[i]));
    acc += t;
  }
  return acc;
}

std::string Poly::str() const {
  if (terms_.empty()) return "0";
  std::ostringstream os;
  bool first = true;
  for (const auto& [m, c] : terms_) {
    if (!first) os << (c > 0 ? " + " : " - ");
    else if (c < 0) os << "-";
    first = false;
    Rational a = abs(c);
    bool need_coeff = (a != 1) || (m.degree() == 0);
    if (need_coeff) os << a.str();
    bool need_star = need_coeff;
    for (int i = 0; i < n_symbols; ++i) {
      if (m.exp[i] == 0) continue;
      if (need_star) os << "*";
      os << symbol_name(Symbol(i));
      if (m.exp[i] > 1) os << "^" << int(m.exp[i]);
      need_star = true;
    }
  }
  return os.str();
}

PolyC PolyC::times_i_power(int k) const {
  switch (((k % 4) + 4) % 4) {
    case 0: return *this;
    case 1: return {-im, re};
    case 2: return {-re, -im};
    default: return {im, -re};
  }
}

std::string PolyC::str() const {
  if (im.is_zero()) return re.str();
  if (re.is_zero()) return "i*(" + im.str() + ")";
  return "(" + re.str() + ") + i*(" + im.str() + ")";
}

}  // namespace effham
