#include "effham/pauli.hpp"

#include <algorithm>
#include <cassert>
#include <stdexcept>

namespace effham {

char pauli_char(Pauli p) { return "IXYZ"[int(p)]; }

Pauli pauli_from_char(char c) {
  switch (c) {
    case 'I': return Pauli::I;
    case 'X': return Pauli::X;
    case 'Y': return Pauli::Y;
    case 'Z': return Pauli::Z;
  }
  throw std::invalid_argument(std::string("not a Pauli letter: ") + c);
}

SiteProduct site_product(Pauli p, Pauli q) {
  if (p == Pauli::I) return {q, 0};
  if (q == Pauli::I) return {p, 0};
  if (p == q) return {Pauli::I, 0};
  // Cyclic rule: XY = iZ, YZ = iX, ZX = iY; swapping conjugates the phase.
  int a = int(p), b = int(q);                       // in {1,2,3}
  Pauli third = Pauli(6 - a - b);                   // the remaining letter
  bool forward = (b - a + 3) % 3 == 1;              // X->Y->Z->X order
  return {third, forward ? 1 : 3};
}

PauliString PauliString::canonical(std::vector<Pauli> raw, long offset) {
  std::size_t lead = 0;
  while (lead < raw.size() && raw[lead] == Pauli::I) ++lead;
  std::size_t tail = raw.size();
  while (tail > lead && raw[tail - 1] == Pauli::I) --tail;
  PauliString s;
  s.letters.assign(raw.begin() + lead, raw.begin() + tail);
  s.offset = s.letters.empty() ? 0 : offset + long(lead);
  return s;
}

PauliString PauliString::from_text(const std::string& text, long offset) {
  std::vector<Pauli> raw;
  raw.reserve(text.size());
  for (char c : text) raw.push_back(pauli_from_char(c));
  return canonical(std::move(raw), offset);
}

Pauli PauliString::at(long site) const {
  if (site < begin_site() || site >= end_site()) return Pauli::I;
  return letters[std::size_t(site - offset)];
}

int PauliString::y_count() const {
  return int(std::count(letters.begin(), letters.end(), Pauli::Y));
}

PauliString PauliString::translated(long by) const {
  PauliString s = *this;
  if (!s.is_identity()) s.offset += by;
  return s;
}

PauliString PauliString::reversed() const {
  PauliString s = *this;
  std::reverse(s.letters.begin(), s.letters.end());
  return s;
}

std::string PauliString::text() const {
  std::string t;
  t.reserve(letters.size());
  for (Pauli p : letters) t.push_back(pauli_char(p));
  return t;
}

PauliTerm multiply(const PauliTerm& a, const PauliTerm& b) {
  if (a.string.is_identity())
    return {a.coeff * b.coeff, b.string};
  if (b.string.is_identity())
    return {a.coeff * b.coeff, a.string};
  long lo = std::min(a.string.begin_site(), b.string.begin_site());
  long hi = std::max(a.string.end_site(), b.string.end_site());
  std::vector<Pauli> raw;
  raw.reserve(std::size_t(hi - lo));
  int i_power = 0;
  for (long site = lo; site < hi; ++site) {
    SiteProduct sp = site_product(a.string.at(site), b.string.at(site));
    raw.push_back(sp.letter);
    i_power += sp.i_power;
  }
  PauliTerm r;
  r.string = PauliString::canonical(std::move(raw), lo);
  r.coeff = (a.coeff * b.coeff).times_i_power(i_power);
  return r;
}

void PauliSum::add(const PauliString& s, const PolyC& c) {
  if (c.is_zero()) return;
  auto [it, inserted] = terms_.emplace(s, c);
  if (!inserted) {
    it->second = it->second + c;
    if (it->second.is_zero()) terms_.erase(it);
  }
}

bool PauliSum::is_hermitian() const {
  for (const auto& [s, c] : terms_)
    if (!c.is_real()) return false;
  return true;
}

PolyC PauliSum::coefficient(const PauliString& s) const {
  auto it = terms_.find(s);
  return it == terms_.end() ? PolyC() : it->second;
}

PauliSum PauliSum::operator+(const PauliSum& o) const {
  PauliSum r = *this;
  for (const auto& [s, c] : o.terms_) r.add(s, c);
  return r;
}

PauliSum PauliSum::operator-(const PauliSum& o) const {
  PauliSum r = *this;
  for (const auto& [s, c] : o.terms_) r.add(s, -c);
  return r;
}

PauliSum PauliSum::operator*(const PolyC& c) const {
  PauliSum r;
  for (const auto& [s, cc] : terms_) r.add(s, cc * c);
  return r;
}

PauliSum multiply(const PauliSum& a, const PauliSum& b) {
  PauliSum r;
  for (const auto& [sa, ca] : a.terms())
    for (const auto& [sb, cb] : b.terms()) r.add(multiply({ca, sa}, {cb, sb}));
  return r;
}

namespace {

// True when the two strings share at least one site; disjoint strings commute.
bool supports_overlap(const PauliString& a, const PauliString& b) {
  if (a.is_identity() || b.is_identity()) return false;
  return a.begin_site() < b.end_site() && b.begin_site() < a.end_site();
}

}  // namespace

PauliSum commutator(const PauliSum& a, const PauliSum& b) {
  PauliSum r;
  for (const auto& [sa, ca] : a.terms()) {
    for (const auto& [sb, cb] : b.terms()) {
      if (!supports_overlap(sa, sb)) continue;
      r.add(multiply({ca, sa}, {cb, sb}));
      PauliTerm ba = multiply({cb, sb}, {ca, sa});
      r.add(ba.string, -ba.coeff);
    }
  }
  return r;
}

void TranslationSum::add(PauliString pattern, const PolyC& c) {
  if (c.is_zero()) return;
  pattern.offset = 0;
  auto [it, inserted] = classes_.emplace(std::move(pattern), c);
  if (!inserted) {
    it->second = it->second + c;
    if (it->second.is_zero()) classes_.erase(it);
  }
}

bool TranslationSum::is_hermitian() const {
  for (const auto& [s, c] : classes_)
    if (!c.is_real()) return false;
  return true;
}

PolyC TranslationSum::coefficient(const PauliString& pattern) const {
  PauliString key = pattern;
  key.offset = 0;
  auto it = classes_.find(key);
  return it == classes_.end() ? PolyC() : it->second;
}

TranslationSum TranslationSum::operator+(const TranslationSum& o) const {
  TranslationSum r = *this;
  for (const auto& [s, c] : o.classes_) r.add(s, c);
  return r;
}

TranslationSum TranslationSum::operator*(const PolyC& c) const {
  TranslationSum r;
  for (const auto& [s, cc] : classes_) r.add(s, cc * c);
  return r;
}

// [sum_j T_j(a), sum_k T_k(b)] = sum_j T_j( sum_o [a, T_o(b)] ): per pattern
// pair it suffices to scan the relative offsets o where the supports overlap.
TranslationSum commutator(const TranslationSum& a, const TranslationSum& b) {
  TranslationSum r;
  for (const auto& [pa, ca] : a.patterns()) {
    if (pa.is_identity()) continue;
    for (const auto& [pb, cb] : b.patterns()) {
      if (pb.is_identity()) continue;
      for (long o = -(pb.support() - 1); o <= pa.support() - 1; ++o) {
        PauliTerm ta{ca, pa};
        PauliTerm tb{cb, pb.translated(o)};
        PauliTerm ab = multiply(ta, tb);
        PauliTerm ba = multiply(tb, ta);
        r.add(ab.string, ab.coeff);
        r.add(ba.string, -ba.coeff);
      }
    }
  }
  return r;
}

TranslationSum symmetric_bch_order2(const TranslationSum& hx,
                                    const TranslationSum& hz,
                                    const Poly& tau) {
  TranslationSum g = commutator(hz, hx);
  TranslationSum gxx = commutator(g, hx);
  TranslationSum gxz = commutator(g, hz);
  Poly tau2 = tau * tau;
  return hx + hz + gxx * PolyC(tau2 * Rational(1, 24)) +
         gxz * PolyC(tau2 * Rational(1, 12));
}

}  // namespace effham
