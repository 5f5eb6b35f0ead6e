//
// molftp - Copyright 2026 The molftp Authors.
// SPDX-License-Identifier: Apache-2.0
//

#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include "molftp/fragments.hpp"

namespace molftp {

struct KeySetFingerprint {
  std::size_t molecule_id = 0;
  std::vector<FragmentKey> keys;  // sorted, distinct
};

struct SimilarPair {
  std::size_t i = 0;  // i < j
  std::size_t j = 0;
  double similarity = 0.0;

  friend bool operator==(const SimilarPair &, const SimilarPair &) = default;
};

struct PairSearchStats {
  std::size_t empty_fingerprints = 0;
  std::size_t candidates_pruned = 0;
};

/// Distinct keys of depth <= sim_radius. Throws std::invalid_argument when
/// sim_radius exceeds the enumeration radius.
KeySetFingerprint key_fingerprint(const FragmentIndex &index, int sim_radius);

/// |a ∩ b| / |a ∪ b|; two empty sets give 0.
double tanimoto(const KeySetFingerprint &a, const KeySetFingerprint &b);

/// Every pair (i < j) with tanimoto >= tau, ordered by (i, j). Ids in the
/// result are molecule_id values of the fingerprints. Exact scan; pairs whose
/// size ratio already rules out tau are skipped without a merge.
std::vector<SimilarPair> similar_pairs(std::span<const KeySetFingerprint> fps,
                                       double tau,
                                       PairSearchStats *stats = nullptr);

}  // namespace molftp
