#pragma once

#include <map>
#include <string>

#include "effham/pauli.hpp"

namespace effham {

// Groups the patterns of a translation-invariant sum into mirror classes,
// keyed by the text of the lexicographically smaller of (pattern, reversed
// pattern). A pattern and its distinct mirror partner must carry equal
// coefficients (true for any reflection-symmetric sum); unequal partners
// throw std::invalid_argument. The identity pattern is keyed as "".
std::map<std::string, PolyC> decompose_into_mirror_classes(
    const TranslationSum& sum);

// The two non-commuting pieces of the periodic Ising chain as symbolic
// translation sums: Hx = h_x sum_j X_j, Hz = J_z sum_j Z_j Z_{j+1} + h_z sum_j Z_j.
TranslationSum ising_hx_symbolic();
TranslationSum ising_hz_symbolic();

// Closed forms of the order-2 symmetric-BCH coefficients as exact polynomials
// in (tau, J_z, h_x, h_z), keyed by canonical class label:
//   X   : h_x - (2 tau^2/3) J_z^2 h_x - (tau^2/3) h_z^2 h_x
//   Z   : h_z + (tau^2/6) h_x^2 h_z
//   ZZ  : J_z + (tau^2/3) J_z h_x^2
//   YY  : -(tau^2/3) J_z h_x^2
//   XZ  : -(2 tau^2/3) J_z h_x h_z     (class sum_j X_j Z_{j+1} + Z_j X_{j+1})
//   ZXZ : -(2 tau^2/3) J_z^2 h_x
std::map<std::string, Poly> bch_closed_form_polynomials();

}  // namespace effham
