//
// molftp - Copyright 2026 The molftp Authors.
// SPDX-License-Identifier: Apache-2.0
//

#pragma once

#include <string>
#include <vector>

#include "molftp/fragments.hpp"
#include "molftp/smiles.hpp"

namespace molftp::test {

inline std::vector<FragmentIndex> index_all(const std::vector<std::string> &smiles,
                                            int radius) {
  std::vector<FragmentIndex> out;
  for (std::size_t i = 0; i < smiles.size(); ++i)
    out.push_back(enumerate_fragments(parse_smiles(smiles[i]), radius, i));
  return out;
}

// A small, structurally varied set used across suites.
inline const std::vector<std::string> &sample_smiles() {
  static const std::vector<std::string> s = {
    "CCO",          "CCN",          "c1ccccc1O",   "c1ccccc1N",   "CC(=O)O",
    "CC(=O)N",      "C1CCCCC1",     "C1CCNCC1",    "c1ccncc1",    "c1ccccc1Cl",
    "CCCl",         "OCCO",         "NCCN",        "c1ccc(O)cc1C", "c1ccc(N)cc1C",
    "CC(C)O",       "CC(C)N",       "C1CC1C(=O)O", "C1CC1C(=O)N", "FC(F)(F)c1ccccc1",
  };
  return s;
}

}  // namespace molftp::test
