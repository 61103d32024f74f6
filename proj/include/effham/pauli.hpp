#pragma once

#include <compare>
#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "effham/coeffs.hpp"

namespace effham {

enum class Pauli : std::uint8_t { I = 0, X = 1, Y = 2, Z = 3 };

char pauli_char(Pauli p);
Pauli pauli_from_char(char c);

// Single-site product p*q = i^i_power * letter (e.g. Z*X = i*Y).
struct SiteProduct {
  Pauli letter;
  int i_power;
};
SiteProduct site_product(Pauli p, Pauli q);

// A Pauli string with finite support on the integer line: letters[k] acts on
// site offset + k, identity everywhere else. Canonical form trims identity
// letters at both ends; the pure identity is the empty sequence.
struct PauliString {
  std::vector<Pauli> letters;
  long offset = 0;

  static PauliString canonical(std::vector<Pauli> raw, long offset);
  static PauliString from_text(const std::string& text, long offset = 0);

  bool is_identity() const { return letters.empty(); }
  int support() const { return int(letters.size()); }
  long begin_site() const { return offset; }
  long end_site() const { return offset + long(letters.size()); }
  Pauli at(long site) const;
  int y_count() const;

  PauliString translated(long by) const;
  // Mirror image of the letter pattern (site order reversed). The anchor is
  // irrelevant for translation-invariant uses; absolute uses must re-anchor.
  PauliString reversed() const;

  std::string text() const;
  friend auto operator<=>(const PauliString&, const PauliString&) = default;
};

struct PauliTerm {
  PolyC coeff;
  PauliString string;
};

// Exact product with the phase accumulated from overlapping sites.
PauliTerm multiply(const PauliTerm& a, const PauliTerm& b);

// Sum of anchored strings with exact coefficients; zero terms are pruned.
class PauliSum {
 public:
  PauliSum() = default;

  void add(const PauliString& s, const PolyC& c);
  void add(const PauliTerm& t) { add(t.string, t.coeff); }

  std::size_t size() const { return terms_.size(); }
  bool is_zero() const { return terms_.empty(); }
  bool is_hermitian() const;
  PolyC coefficient(const PauliString& s) const;
  const std::map<PauliString, PolyC>& terms() const { return terms_; }

  PauliSum operator+(const PauliSum& o) const;
  PauliSum operator-(const PauliSum& o) const;
  PauliSum operator*(const PolyC& c) const;
  bool operator==(const PauliSum&) const = default;

 private:
  std::map<PauliString, PolyC> terms_;
};

PauliSum multiply(const PauliSum& a, const PauliSum& b);
PauliSum commutator(const PauliSum& a, const PauliSum& b);

// Translation-invariant sum: each stored pattern stands for the sum of its
// translates over every site of a (large or periodic) chain. Commutators of
// two such sums are again translation invariant; per pattern pair only the
// finitely many relative offsets with overlapping support contribute.
class TranslationSum {
 public:
  TranslationSum() = default;

  void add(PauliString pattern, const PolyC& c);

  std::size_t size() const { return classes_.size(); }
  bool is_zero() const { return classes_.empty(); }
  bool is_hermitian() const;
  PolyC coefficient(const PauliString& pattern) const;
  const std::map<PauliString, PolyC>& patterns() const { return classes_; }

  TranslationSum operator+(const TranslationSum& o) const;
  TranslationSum operator*(const PolyC& c) const;
  bool operator==(const TranslationSum&) const = default;

 private:
  std::map<PauliString, PolyC> classes_;  // keys are anchored at offset 0
};

TranslationSum commutator(const TranslationSum& a, const TranslationSum& b);

// Order-2 symmetric BCH generator of exp(-i*tau*Hx/2) exp(-i*tau*Hz) exp(-i*tau*Hx/2):
//   Hx + Hz + (tau^2/24)[[Hz,Hx],Hx] + (tau^2/12)[[Hz,Hx],Hz].
// tau may be a symbol or a constant polynomial.
TranslationSum symmetric_bch_order2(const TranslationSum& hx,
                                    const TranslationSum& hz, const Poly& tau);

}  // namespace effham
