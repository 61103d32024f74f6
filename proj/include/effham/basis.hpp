#pragma once

#include <iosfwd>
#include <string>
#include <vector>

#include "effham/pauli.hpp"

namespace effham {

// One translation+reflection symmetrized operator class
//   O = sum_j T_j(rep) + (if mirror partner distinct) sum_j T_j(reversed rep).
struct SymmetrizedOperator {
  PauliString representative;  // lex-smaller of (sequence, reversed), anchor 0
  bool mirror_partner_distinct = false;
  std::string label;  // representative text, e.g. "ZXZ" or "XZ"

  int support() const { return representative.support(); }
};

struct BasisOptions {
  int max_support = 5;          // R
  bool parity_filter = true;    // keep only even-Y-count classes
  bool allow_interior_identity = true;  // allow I strictly between endpoints
};

struct OperatorBasis {
  BasisOptions options;
  std::vector<SymmetrizedOperator> elements;

  int n() const { return int(elements.size()); }
  // Index of the element with this label, or -1.
  int find(const std::string& label) const;
};

// Enumerates all representatives of support r = 1..R with non-identity
// endpoints, merges mirror pairs, optionally filters odd-Y classes, and
// orders by (support, lexicographic representative). The fit of R against a
// concrete chain length (R <= L) is checked where the basis is realized.
OperatorBasis build_basis(const BasisOptions& opts);
OperatorBasis build_basis(int R, bool parity_filter);

// One line per element: label,support,mirror_partner_distinct
void write_basis_csv(std::ostream& os, const OperatorBasis& basis);
OperatorBasis read_basis_csv(std::istream& is);

}  // namespace effham
