//
// molftp - Copyright 2026 The molftp Authors.
// SPDX-License-Identifier: Apache-2.0
//

#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <string_view>
#include <vector>

#include "molftp/fragments.hpp"
#include "molftp/prevalence.hpp"
#include "molftp/score_map.hpp"
#include "molftp/similarity.hpp"

namespace molftp {

struct ContrastPair {
  SimilarPair pair;
  bool label_discordant = true;
};

/// Keeps the label-discordant pairs. Pair ids index `labels`.
std::vector<ContrastPair> build_contrast_pairs(std::span<const SimilarPair> pairs,
                                               std::span<const int> labels);

struct PairCount {
  FragmentKey key;
  std::uint32_t n10 = 0;  // key only on the positive member
  std::uint32_t n01 = 0;  // key only on the negative member
};

/// Continuity-corrected McNemar statistic (|n10 - n01| - 1)^2 / (n10 + n01).
double mcnemar_statistic(std::uint32_t n10, std::uint32_t n01);

/// 2D scores: for every key carried by exactly one member of a discordant
/// pair, sgn(n10 - n01) * -log10(p) with p the chi-square(1) tail of the
/// McNemar statistic. Keys never discordant are omitted. `tables` supplies
/// per-key molecule support and must cover every molecule in the pairs.
ScoreMap mcnemar_scores(std::span<const ContrastPair> cpairs,
                        std::span<const FragmentIndex> indexes,
                        std::span<const int> labels, const TableSet &tables,
                        std::vector<PairCount> *counts = nullptr);

struct AnchorTriplet {
  std::size_t anchor = 0;
  std::size_t pos = 0;  // same label as the anchor
  std::size_t neg = 0;  // opposite label
  double sim_pos = 0.0;
  double sim_neg = 0.0;

  friend bool operator==(const AnchorTriplet &, const AnchorTriplet &) = default;
};

/// For each anchor, crosses its same-label with its opposite-label
/// neighbours and keeps up to cap_per_anchor triplets, best min(sim) first,
/// ties broken by (pos, neg). Output is ordered by anchor.
std::vector<AnchorTriplet> build_triplets(std::span<const SimilarPair> pairs,
                                          std::span<const int> labels,
                                          std::size_t cap_per_anchor);

/// Per-key triplet evidence, oriented by class: a triplet counts toward
/// m_align when the key sits with the positive class across the activity
/// cliff ((anchor,pos,neg) presence (1,1,0) with a positive anchor, or
/// (1,0,1) with a negative anchor) and toward m_anti in the mirrored cases.
struct TripletCount {
  FragmentKey key;
  std::uint32_t m_align = 0;
  std::uint32_t m_anti = 0;
};

inline constexpr std::string_view kStatBinomial = "binomial";
inline constexpr std::string_view kStatFriedman = "friedman";

/// Friedman chi-square (tie-corrected) for k = 3 treatments given per-column
/// rank sums, the total of squared ranks and the number of blocks.
double friedman_statistic(const double (&rank_sums)[3], double sum_sq_ranks,
                          double blocks);

/// 3D scores signed by m_align - m_anti. binomial: p = P(X >= max(m_align,
/// m_anti)) for X ~ Bin(m_total, 1/2). friedman: p from the Friedman
/// chi-square (2 d.o.f.) over the within-triplet presence ranks of every
/// triplet whose members carry the key. Keys with m_total = 0 are omitted.
ScoreMap triplet_scores(std::span<const AnchorTriplet> triplets,
                        std::span<const FragmentIndex> indexes,
                        std::span<const int> labels, const TableSet &tables,
                        std::string_view variant,
                        std::vector<TripletCount> *counts = nullptr);

}  // namespace molftp
