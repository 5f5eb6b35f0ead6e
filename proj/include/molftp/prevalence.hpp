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
#include "molftp/score_map.hpp"

namespace molftp {

inline constexpr double kHaldaneAlpha = 0.5;

enum class CountMode { kPresence, kCount };

/// Key-by-class table. a/b: positives/negatives with the key, c/d: without.
struct ContingencyTable {
  std::int64_t a = 0;
  std::int64_t b = 0;
  std::int64_t c = 0;
  std::int64_t d = 0;
  double alpha = kHaldaneAlpha;

  std::int64_t total() const noexcept { return a + b + c + d; }
  friend bool operator==(const ContingencyTable &,
                         const ContingencyTable &) = default;
};

struct KeyStats {
  double w = 0.0;      // smoothed log2 odds ratio
  double var = 0.0;    // variance estimate of w
  double z = 0.0;
  double p = 1.0;      // two-sided normal tail
  double score = 0.0;  // sgn(w) * -log10(max(p, 1e-300))
};

/// log2((a+α)(d+α) / ((b+α)(c+α))).
///
/// Evaluated as ±log1p(|P-Q| / min(P,Q)) / ln 2 with P, Q the two products,
/// which keeps full relative precision near w = 0 and makes swapping
/// (a,d) with (b,c) negate the result bit for bit.
double log_odds(const ContingencyTable &t);

/// Variance, z, two-sided p and signed score of log_odds(t).
KeyStats significance(const ContingencyTable &t);

struct KeyTable {
  FragmentKey key;
  int depth_min = 0;
  int depth_max = 0;
  ContingencyTable table;
  std::uint32_t support = 0;           // molecules containing the key
  std::uint32_t positive_support = 0;  // of which labelled 1
};

struct TableSet {
  CountMode mode = CountMode::kPresence;
  double alpha = kHaldaneAlpha;
  std::size_t molecules = 0;
  std::size_t positives = 0;
  bool single_class = false;
  // Count mode breaks a+b+c+d == N, so those tables are flagged.
  bool count_mode_flagged = false;
  std::vector<KeyTable> entries;       // sorted by key
  std::vector<std::size_t> rows_read;  // dataset rows consumed, in order

  const KeyTable *find(FragmentKey key) const;
};

/// One table per observed key. Presence mode: each molecule adds 1 to one
/// cell. Count mode: a/b add per-molecule occurrence counts, c/d count the
/// molecules lacking the key. Throws DataError on an empty dataset, a label
/// outside {0,1} or misaligned inputs.
TableSet accumulate_tables(std::span<const FragmentIndex> indexes,
                           std::span<const int> labels, CountMode mode,
                           double alpha = kHaldaneAlpha);

/// Same, restricted to the listed dataset rows. No other row is touched.
TableSet accumulate_tables(std::span<const FragmentIndex> indexes,
                           std::span<const int> labels,
                           std::span<const std::size_t> rows, CountMode mode,
                           double alpha = kHaldaneAlpha);

inline constexpr std::string_view kStatFisher = "fisher_onetailed";
inline constexpr std::string_view kStatChi2 = "chi2";

/// Pearson chi-square p-value of the raw (unsmoothed) table, 1 d.o.f.
double chi2_p_value(const ContingencyTable &t);

/// 1D score map. fisher_onetailed uses significance(); chi2 replaces p by the
/// Pearson chi-square survival value and keeps the sign of w.
ScoreMap build_score_map(const TableSet &tables, std::string_view stat_variant);

}  // namespace molftp
