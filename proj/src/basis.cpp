#include "effham/basis.hpp"

#include <algorithm>
#include <istream>
#include <ostream>
#include <sstream>
#include <stdexcept>

namespace effham {

int OperatorBasis::find(const std::string& label) const {
  for (int i = 0; i < n(); ++i)
    if (elements[i].label == label) return i;
  return -1;
}

namespace {

SymmetrizedOperator make_element(const PauliString& rep) {
  SymmetrizedOperator op;
  op.representative = rep;
  op.representative.offset = 0;
  op.mirror_partner_distinct = rep.reversed().letters != rep.letters;
  op.label = rep.text();
  return op;
}

}  // namespace

OperatorBasis build_basis(const BasisOptions& opts) {
  if (opts.max_support < 1)
    throw std::invalid_argument("basis max_support must be >= 1");
  OperatorBasis basis;
  basis.options = opts;
  for (int r = 1; r <= opts.max_support; ++r) {
    // Walk all base-4 letter sequences of length r in lexicographic order
    // (I < X < Y < Z), so elements come out already sorted within each r.
    std::vector<Pauli> seq(std::size_t(r), Pauli::I);
    const long total = 1L << (2 * r);
    for (long code = 0; code < total; ++code) {
      long c = code;
      for (int k = r - 1; k >= 0; --k, c >>= 2) seq[std::size_t(k)] = Pauli(c & 3);
      if (seq.front() == Pauli::I || seq.back() == Pauli::I) continue;
      if (!opts.allow_interior_identity &&
          std::find(seq.begin(), seq.end(), Pauli::I) != seq.end())
        continue;
      std::vector<Pauli> rev(seq.rbegin(), seq.rend());
      if (rev < seq) continue;  // counted at its mirror partner
      PauliString rep;
      rep.letters = seq;
      if (opts.parity_filter && rep.y_count() % 2 != 0) continue;
      basis.elements.push_back(make_element(rep));
    }
  }
  return basis;
}

OperatorBasis build_basis(int R, bool parity_filter) {
  BasisOptions opts;
  opts.max_support = R;
  opts.parity_filter = parity_filter;
  return build_basis(opts);
}

void write_basis_csv(std::ostream& os, const OperatorBasis& basis) {
  os << "label,support,mirror_partner_distinct\n";
  for (const auto& e : basis.elements)
    os << e.label << ',' << e.support() << ','
       << (e.mirror_partner_distinct ? 1 : 0) << '\n';
}

OperatorBasis read_basis_csv(std::istream& is) {
  OperatorBasis basis;
  basis.options.max_support = 0;
  std::string line;
  if (!std::getline(is, line) || line.rfind("label,", 0) != 0)
    throw std::runtime_error("basis csv: missing header");
  while (std::getline(is, line)) {
    if (line.empty()) continue;
    std::istringstream ls(line);
    std::string label, support, mirror;
    if (!std::getline(ls, label, ',') || !std::getline(ls, support, ',') ||
        !std::getline(ls, mirror))
      throw std::runtime_error("basis csv: malformed line: " + line);
    SymmetrizedOperator op = make_element(PauliString::from_text(label));
    if (op.label != label ||
        op.representative.reversed().letters < op.representative.letters)
      throw std::runtime_error("basis csv: non-canonical label: " + label);
    if (std::stoi(support) != op.support())
      throw std::runtime_error("basis csv: support mismatch for " + label);
    if ((std::stoi(mirror) != 0) != op.mirror_partner_distinct)
      throw std::runtime_error("basis csv: mirror flag mismatch for " + label);
    basis.elements.push_back(std::move(op));
    basis.options.max_support =
        std::max(basis.options.max_support, basis.elements.back().support());
  }
  return basis;
}

}  // namespace effham
