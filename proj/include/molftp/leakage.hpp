//
// molftp - Copyright 2026 The molftp Authors.
// SPDX-License-Identifier: Apache-2.0
//

#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <vector>

#include "molftp/fragments.hpp"
#include "molftp/prevalence.hpp"
#include "molftp/score_map.hpp"

namespace molftp {

struct FoldSpec {
  std::size_t fold_id = 0;
  std::vector<std::size_t> train_ids;  // sorted
  std::vector<std::size_t> test_ids;   // sorted
};

struct KeySupportEntry {
  FragmentKey key;
  std::uint32_t n_total = 0;  // molecules with the key, whole dataset
  std::uint32_t n_train = 0;  // of which in the training fold
};

struct KeySupport {
  std::optional<std::size_t> fold_id;  // unset: whole-dataset support only
  std::size_t molecules = 0;
  std::vector<KeySupportEntry> entries;  // sorted by key

  const KeySupportEntry *find(FragmentKey key) const;
};

/// Presence-based molecule support per key, optionally split by fold.
/// Throws DataError when the fold references rows outside the dataset.
KeySupport key_support(std::span<const FragmentIndex> indexes,
                       const FoldSpec *fold = nullptr);

/// Fold-level masking: keys unseen in training score 0, others are scaled
/// by n_train / n_total. Throws InvariantError if a scored key is missing
/// from `support` or the support belongs to another fold.
ScoreMap dummy_mask(const ScoreMap &scores, const KeySupport &support,
                    const FoldSpec &fold);

struct LooConfig {
  int k = 2;                      // minimum molecule support
  std::optional<double> s;        // scale; (N-1)/N when unset
  std::optional<double> c_alpha;  // bound constant; 2 log2((1+α)/α) when unset
  double alpha = kHaldaneAlpha;

  double resolved_s(std::size_t molecules) const;
  double resolved_c_alpha() const;
};

/// Fold-free adjustment: n_total < k scores 0, everything else is scaled
/// by s. Identical for 1D, 2D and 3D maps.
ScoreMap key_loo_adjust(const ScoreMap &scores, const KeySupport &support,
                        const LooConfig &cfg);

/// Support-weighted mean of log_odds over the four single-removal tables.
/// Branches with a zero cell carry zero weight and are skipped. Throws
/// std::invalid_argument when the table holds fewer than 2 observations.
double true_loo_weight(const ContingencyTable &t);

enum class Cell { kA, kB, kC, kD };

/// w(t with `cell` decremented) - w(t), by re-evaluating log_odds. Throws
/// std::invalid_argument when that cell is 0.
double influence_delta(const ContingencyTable &t, Cell cell);

struct BoundRow {
  FragmentKey key;
  std::uint32_t support = 0;
  double w = 0.0;
  double w_key_loo = 0.0;
  double w_true_loo = 0.0;
  double deviation = 0.0;  // |w_key_loo - w_true_loo|
  double bound = 0.0;      // C_α/k + |s - (N-1)/N| |w|
  bool within = false;
};

struct BoundReport {
  std::vector<BoundRow> rows;  // sorted by key
  double fraction_within = 0.0;
  // Same, with each key weighted by its molecule support.
  double fraction_within_weighted = 0.0;
  int k = 0;
  double s = 0.0;
  double c_alpha = 0.0;
  std::size_t molecules = 0;
};

/// Compares key-LOO weights against true fragment-level LOO for every key
/// of a presence-mode table set.
BoundReport loo_bound_report(const TableSet &tables, const LooConfig &cfg);

}  // namespace molftp
