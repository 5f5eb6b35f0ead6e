//
// molftp - Copyright 2026 The molftp Authors.
// SPDX-License-Identifier: Apache-2.0
//

#include "molftp/prevalence.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <numeric>
#include <unordered_map>

#include "molftp/error.hpp"
#include "molftp/stats.hpp"

namespace molftp {

std::string_view to_string(Order order) {
  switch (order) {
  case Order::k1D:
    return "1D";
  case Order::k2D:
    return "2D";
  case Order::k3D:
    return "3D";
  }
  return "?";
}

void ScoreMap::push_back(const ScoreEntry &entry) {
  if (!entries_.empty() && !(entries_.back().key < entry.key))
    throw InvariantError("score map keys must be strictly increasing");
  entries_.push_back(entry);
}

const ScoreEntry *ScoreMap::find(FragmentKey key) const {
  auto it = std::lower_bound(
      entries_.begin(), entries_.end(), key,
      [](const ScoreEntry &e, FragmentKey k) { return e.key < k; });
  return (it != entries_.end() && it->key == key) ? &*it : nullptr;
}

double ScoreMap::score(FragmentKey key) const {
  const ScoreEntry *e = find(key);
  return e != nullptr ? e->score : 0.0;
}

double log_odds(const ContingencyTable &t) {
  const double alpha = t.alpha;
  const double p = (static_cast<double>(t.a) + alpha) *
                   (static_cast<double>(t.d) + alpha);
  const double q = (static_cast<double>(t.b) + alpha) *
                   (static_cast<double>(t.c) + alpha);
  if (p == q)
    return 0.0;
  if (p > q)
    return std::log1p((p - q) / q) / std::numbers::ln2;
  return -(std::log1p((q - p) / p) / std::numbers::ln2);
}

KeyStats significance(const ContingencyTable &t) {
  const double alpha = t.alpha;
  KeyStats s;
  s.w = log_odds(t);
  // Grouped so that swapping (a,d) with (b,c) leaves the sum bit-identical.
  const double inv = (1.0 / (static_cast<double>(t.a) + alpha) +
                      1.0 / (static_cast<double>(t.b) + alpha)) +
                     (1.0 / (static_cast<double>(t.c) + alpha) +
                      1.0 / (static_cast<double>(t.d) + alpha));
  s.var = inv / (std::numbers::ln2 * std::numbers::ln2);
  s.z = std::abs(s.w) / std::sqrt(s.var);
  s.p = stats::normal_two_sided(s.z);
  s.score = stats::signed_score(s.w, s.p);
  return s;
}

double chi2_p_value(const ContingencyTable &t) {
  const std::int64_t r1 = t.a + t.b;
  const std::int64_t r2 = t.c + t.d;
  const std::int64_t c1 = t.a + t.c;
  const std::int64_t c2 = t.b + t.d;
  if (r1 == 0 || r2 == 0 || c1 == 0 || c2 == 0)
    return 1.0;
  const double diff = static_cast<double>(t.a * t.d - t.b * t.c);
  const double n = static_cast<double>(t.total());
  const double denom = static_cast<double>(r1 * r2) * static_cast<double>(c1 * c2);
  return stats::chi2_survival_df1(n * diff * diff / denom);
}

const KeyTable *TableSet::find(FragmentKey key) const {
  auto it = std::lower_bound(
      entries.begin(), entries.end(), key,
      [](const KeyTable &e, FragmentKey k) { return e.key < k; });
  return (it != entries.end() && it->key == key) ? &*it : nullptr;
}

namespace {

struct Accum {
  std::int64_t pos_occ = 0;
  std::int64_t neg_occ = 0;
  std::uint32_t pos_mol = 0;
  std::uint32_t neg_mol = 0;
  int depth_min = 0;
  int depth_max = 0;
};

}  // namespace

TableSet accumulate_tables(std::span<const FragmentIndex> indexes,
                           std::span<const int> labels,
                           std::span<const std::size_t> rows, CountMode mode,
                           double alpha) {
  if (indexes.size() != labels.size())
    throw DataError("fragment indexes and labels differ in length");
  if (rows.empty())
    throw DataError("empty dataset");
  if (!(alpha > 0.0))
    throw DataError("Haldane alpha must be positive");

  TableSet out;
  out.mode = mode;
  out.alpha = alpha;
  out.molecules = rows.size();
  out.rows_read.reserve(rows.size());

  std::unordered_map<FragmentKey, Accum> acc;
  for (std::size_t row : rows) {
    if (row >= indexes.size())
      throw DataError("row index out of range");
    out.rows_read.push_back(row);
    const int y = labels[row];
    if (y != 0 && y != 1)
      throw DataError("labels must be 0 or 1");
    out.positives += static_cast<std::size_t>(y);
    for (const KeyOccurrence &k : indexes[row].keys) {
      auto [it, inserted] = acc.try_emplace(k.key);
      Accum &a = it->second;
      if (inserted) {
        a.depth_min = a.depth_max = k.depth;
      } else {
        a.depth_min = std::min(a.depth_min, k.depth);
        a.depth_max = std::max(a.depth_max, k.depth);
      }
      const std::int64_t add = mode == CountMode::kCount ? k.count : 1;
      if (y == 1) {
        a.pos_occ += add;
        ++a.pos_mol;
      } else {
        a.neg_occ += add;
        ++a.neg_mol;
      }
    }
  }

  const auto npos = static_cast<std::int64_t>(out.positives);
  const auto nneg = static_cast<std::int64_t>(out.molecules) - npos;
  out.single_class = npos == 0 || nneg == 0;
  out.count_mode_flagged = mode == CountMode::kCount;

  out.entries.reserve(acc.size());
  for (const auto &[key, a] : acc) {
    KeyTable kt;
    kt.key = key;
    kt.depth_min = a.depth_min;
    kt.depth_max = a.depth_max;
    kt.table = { a.pos_occ, a.neg_occ, npos - a.pos_mol, nneg - a.neg_mol,
                 alpha };
    kt.support = a.pos_mol + a.neg_mol;
    kt.positive_support = a.pos_mol;
    out.entries.push_back(kt);
  }
  std::sort(out.entries.begin(), out.entries.end(),
            [](const KeyTable &l, const KeyTable &r) { return l.key < r.key; });
  return out;
}

TableSet accumulate_tables(std::span<const FragmentIndex> indexes,
                           std::span<const int> labels, CountMode mode,
                           double alpha) {
  std::vector<std::size_t> rows(indexes.size());
  std::iota(rows.begin(), rows.end(), std::size_t { 0 });
  return accumulate_tables(indexes, labels, rows, mode, alpha);
}

ScoreMap build_score_map(const TableSet &tables, std::string_view stat_variant) {
  const bool chi2 = stat_variant == kStatChi2;
  if (!chi2 && stat_variant != kStatFisher)
    throw ConfigError("stat_1d",
                      "unknown statistic '" + std::string(stat_variant) + "'");
  ScoreMap map(Order::k1D, std::string(stat_variant));
  map.mutable_entries().reserve(tables.entries.size());
  for (const KeyTable &kt : tables.entries) {
    double score;
    if (chi2) {
      score = stats::signed_score(log_odds(kt.table), chi2_p_value(kt.table));
    } else {
      score = significance(kt.table).score;
    }
    map.push_back({ kt.key, score, kt.depth_min, kt.support });
  }
  return map;
}

}  // namespace molftp
