//
// molftp - Copyright 2026 The molftp Authors.
// SPDX-License-Identifier: Apache-2.0
//

#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string_view>

#include "molftp/dataset.hpp"

namespace molftp {

enum class SyntheticKind { kCorpus, kLeak };

std::optional<SyntheticKind> parse_synthetic_kind(std::string_view name);

struct SyntheticOptions {
  SyntheticKind kind = SyntheticKind::kCorpus;
  std::size_t n = 2000;
  double noise = 0.1;        // fraction of labels flipped after planting
  double positive_rate = 0.7;  // corpus only
  std::uint64_t seed = 0;
};

/// kCorpus: analog series. Scaffolds carry two or three substitution sites;
/// substituents have planted additive effects and the label thresholds their
/// sum so that `positive_rate` of molecules are positive, after which exactly
/// round(noise * n) labels are flipped. SMILES are unique.
///
/// kLeak: random balanced labels on a handful of shared cores, each molecule
/// extended by a unique heteroatom chain. Chain fragments occur in one
/// molecule only, so they encode labels only when the held-out molecules'
/// own statistics are used.
///
/// Both kinds carry extra columns sqrt_mw, sqrt_atoms and sqrt_carbons.
Dataset generate_synthetic(const SyntheticOptions &opts);

/// Mass of the molecule including implicit and explicit hydrogens.
double molecular_weight(const Molecule &mol);

}  // namespace molftp
