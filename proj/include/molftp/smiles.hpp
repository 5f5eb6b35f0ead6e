//
// molftp - Copyright 2026 The molftp Authors.
// SPDX-License-Identifier: Apache-2.0
//

#pragma once

#include <string_view>

#include "molftp/molecule.hpp"

namespace molftp {

/// Parses a SMILES string into a molecular graph.
///
/// Supported dialect: the organic subset (B, C, N, O, P, S, F, Cl, Br, I) and
/// its aromatic lowercase forms, bracket atoms with isotope, H count, charge
/// and atom class, ring closures (including %nn), branches, the bond symbols
/// `- = # :` and the dot disconnection. Stereo markers (`@`, `/`, `\`) are
/// accepted and dropped. Aromaticity is taken from the input as written.
///
/// Organic-subset atoms get implicit hydrogens from the lowest standard
/// valence that fits their bonds; bracket atoms carry only the hydrogens
/// written inside the bracket. Parsing stops at the first whitespace.
///
/// Throws ParseError carrying the character offset of the problem.
Molecule parse_smiles(std::string_view text);

}  // namespace molftp
