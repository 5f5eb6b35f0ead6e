//
// molftp - Copyright 2026 The molftp Authors.
// SPDX-License-Identifier: Apache-2.0
//

#include "molftp/metakeys.hpp"

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <map>
#include <unordered_map>

#include "molftp/error.hpp"
#include "molftp/stats.hpp"

namespace molftp {
namespace {

template <class Count>
std::vector<Count> sorted_counts(std::unordered_map<FragmentKey, Count> &acc) {
  std::vector<Count> out;
  out.reserve(acc.size());
  for (auto &[key, c] : acc) {
    c.key = key;
    out.push_back(c);
  }
  std::sort(out.begin(), out.end(),
            [](const Count &l, const Count &r) { return l.key < r.key; });
  return out;
}

}  // namespace

std::vector<ContrastPair> build_contrast_pairs(std::span<const SimilarPair> pairs,
                                               std::span<const int> labels) {
  std::vector<ContrastPair> out;
  for (const SimilarPair &p : pairs) {
    if (p.i >= labels.size() || p.j >= labels.size())
      throw DataError("pair references a molecule without a label");
    if (labels[p.i] != labels[p.j])
      out.push_back({ p, true });
  }
  return out;
}

double mcnemar_statistic(std::uint32_t n10, std::uint32_t n01) {
  const std::uint32_t n = n10 + n01;
  if (n == 0)
    return 0.0;
  const double diff = std::abs(static_cast<double>(n10) - static_cast<double>(n01)) - 1.0;
  return diff * diff / static_cast<double>(n);
}

ScoreMap mcnemar_scores(std::span<const ContrastPair> cpairs,
                        std::span<const FragmentIndex> indexes,
                        std::span<const int> labels, const TableSet &tables,
                        std::vector<PairCount> *counts) {
  std::unordered_map<FragmentKey, PairCount> acc;
  for (const ContrastPair &cp : cpairs) {
    if (!cp.label_discordant)
      continue;
    std::size_t pos = cp.pair.i;
    std::size_t neg = cp.pair.j;
    if (labels[pos] == 0)
      std::swap(pos, neg);
    const auto &kp = indexes[pos].keys;
    const auto &kn = indexes[neg].keys;
    auto ip = kp.begin();
    auto in = kn.begin();
    while (ip != kp.end() || in != kn.end()) {
      if (in == kn.end() || (ip != kp.end() && ip->key < in->key)) {
        ++acc[ip->key].n10;
        ++ip;
      } else if (ip == kp.end() || in->key < ip->key) {
        ++acc[in->key].n01;
        ++in;
      } else {
        ++ip;
        ++in;
      }
    }
  }

  std::vector<PairCount> sorted = sorted_counts(acc);
  ScoreMap map(Order::k2D, "mcnemar");
  map.mutable_entries().reserve(sorted.size());
  for (const PairCount &c : sorted) {
    const double p = stats::chi2_survival_df1(mcnemar_statistic(c.n10, c.n01));
    const double direction =
        static_cast<double>(c.n10) - static_cast<double>(c.n01);
    const KeyTable *kt = tables.find(c.key);
    if (kt == nullptr)
      throw InvariantError("meta-key has no 1D table entry");
    map.push_back({ c.key, stats::signed_score(direction, p), kt->depth_min,
                    kt->support });
  }
  if (counts != nullptr)
    *counts = std::move(sorted);
  return map;
}

std::vector<AnchorTriplet> build_triplets(std::span<const SimilarPair> pairs,
                                          std::span<const int> labels,
                                          std::size_t cap_per_anchor) {
  struct Neighbour {
    std::size_t id;
    double sim;
  };
  std::map<std::size_t, std::vector<Neighbour>> neighbours;
  for (const SimilarPair &p : pairs) {
    neighbours[p.i].push_back({ p.j, p.similarity });
    neighbours[p.j].push_back({ p.i, p.similarity });
  }

  std::vector<AnchorTriplet> out;
  std::vector<AnchorTriplet> candidates;
  for (const auto &[anchor, nbrs] : neighbours) {
    if (anchor >= labels.size())
      throw DataError("pair references a molecule without a label");
    candidates.clear();
    for (const Neighbour &same : nbrs) {
      if (labels[same.id] != labels[anchor])
        continue;
      for (const Neighbour &other : nbrs) {
        if (labels[other.id] == labels[anchor])
          continue;
        candidates.push_back({ anchor, same.id, other.id, same.sim, other.sim });
      }
    }
    const auto better = [](const AnchorTriplet &l, const AnchorTriplet &r) {
      const double ml = std::min(l.sim_pos, l.sim_neg);
      const double mr = std::min(r.sim_pos, r.sim_neg);
      if (ml != mr)
        return ml > mr;
      return l.pos != r.pos ? l.pos < r.pos : l.neg < r.neg;
    };
    const std::size_t keep = std::min(cap_per_anchor, candidates.size());
    std::partial_sort(candidates.begin(), candidates.begin() + keep,
                      candidates.end(), better);
    out.insert(out.end(), candidates.begin(), candidates.begin() + keep);
  }
  return out;
}

double friedman_statistic(const double (&rank_sums)[3], double sum_sq_ranks,
                          double blocks) {
  constexpr double k = 3.0;
  const double expected = blocks * (k + 1.0) / 2.0;
  double spread = 0.0;
  for (double r : rank_sums)
    spread += (r - expected) * (r - expected);
  const double denom = sum_sq_ranks - blocks * k * (k + 1.0) * (k + 1.0) / 4.0;
  if (!(denom > 0.0))
    return 0.0;
  return (k - 1.0) * spread / denom;
}

namespace {

struct FriedmanAccum {
  double rank_sums[3] = { 0.0, 0.0, 0.0 };
  double sum_sq = 0.0;
  double blocks = 0.0;
};

// Average ranks of 0/1 presence within one block of three.
void add_block(FriedmanAccum &f, const bool (&present)[3]) {
  const int ones = present[0] + present[1] + present[2];
  const double zero_rank = (4.0 - ones) / 2.0;  // mean of 1..(3-ones)
  const double one_rank = (7.0 - ones) / 2.0;   // mean of (4-ones)..3
  for (int j = 0; j < 3; ++j) {
    const double r = present[j] ? one_rank : zero_rank;
    f.rank_sums[j] += r;
    f.sum_sq += r * r;
  }
  f.blocks += 1.0;
}

}  // namespace

ScoreMap triplet_scores(std::span<const AnchorTriplet> triplets,
                        std::span<const FragmentIndex> indexes,
                        std::span<const int> labels, const TableSet &tables,
                        std::string_view variant,
                        std::vector<TripletCount> *counts) {
  const bool friedman = variant == kStatFriedman;
  if (!friedman && variant != kStatBinomial)
    throw ConfigError("stat_3d",
                      "unknown statistic '" + std::string(variant) + "'");

  std::unordered_map<FragmentKey, TripletCount> acc;
  std::unordered_map<FragmentKey, FriedmanAccum> blocks;

  for (const AnchorTriplet &t : triplets) {
    const FragmentIndex &anchor = indexes[t.anchor];
    const FragmentIndex &pos = indexes[t.pos];
    const FragmentIndex &neg = indexes[t.neg];
    const bool anchor_positive = labels[t.anchor] == 1;
    for (const KeyOccurrence &k : anchor.keys) {
      const bool in_pos = pos.contains(k.key);
      const bool in_neg = neg.contains(k.key);
      if (in_pos == in_neg)
        continue;
      // in_pos: the key follows the anchor's class; in_neg: the other class.
      const bool favours_positive = in_pos == anchor_positive;
      TripletCount &c = acc[k.key];
      if (favours_positive)
        ++c.m_align;
      else
        ++c.m_anti;
    }
    if (!friedman)
      continue;
    // Union of the three key sets by a three-way merge.
    const auto &ka = anchor.keys;
    const auto &kp = pos.keys;
    const auto &kn = neg.keys;
    std::size_t ia = 0, ip = 0, in = 0;
    while (ia < ka.size() || ip < kp.size() || in < kn.size()) {
      FragmentKey next { ~std::uint64_t { 0 } };
      if (ia < ka.size()) next = std::min(next, ka[ia].key);
      if (ip < kp.size()) next = std::min(next, kp[ip].key);
      if (in < kn.size()) next = std::min(next, kn[in].key);
      bool present[3] = { false, false, false };
      if (ia < ka.size() && ka[ia].key == next) { present[0] = true; ++ia; }
      if (ip < kp.size() && kp[ip].key == next) { present[1] = true; ++ip; }
      if (in < kn.size() && kn[in].key == next) { present[2] = true; ++in; }
      add_block(blocks[next], present);
    }
  }

  std::vector<TripletCount> sorted = sorted_counts(acc);
  ScoreMap map(Order::k3D, std::string(variant));
  map.mutable_entries().reserve(sorted.size());
  for (const TripletCount &c : sorted) {
    const std::uint32_t total = c.m_align + c.m_anti;
    if (total == 0)
      continue;
    double p;
    if (friedman) {
      const FriedmanAccum &f = blocks.at(c.key);
      p = stats::chi2_survival_df2(friedman_statistic(f.rank_sums, f.sum_sq, f.blocks));
    } else {
      p = stats::binomial_upper_tail_half(std::max(c.m_align, c.m_anti), total);
    }
    const double direction =
        static_cast<double>(c.m_align) - static_cast<double>(c.m_anti);
    const KeyTable *kt = tables.find(c.key);
    if (kt == nullptr)
      throw InvariantError("meta-key has no 1D table entry");
    map.push_back({ c.key, stats::signed_score(direction, p), kt->depth_min,
                    kt->support });
  }
  if (counts != nullptr)
    *counts = std::move(sorted);
  return map;
}

}  // namespace molftp
