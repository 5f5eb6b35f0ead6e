//
// molftp - Copyright 2026 The molftp Authors.
// SPDX-License-Identifier: Apache-2.0
//

#include "molftp/leakage.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <unordered_map>

#include "molftp/error.hpp"

namespace molftp {

const KeySupportEntry *KeySupport::find(FragmentKey key) const {
  auto it = std::lower_bound(
      entries.begin(), entries.end(), key,
      [](const KeySupportEntry &e, FragmentKey k) { return e.key < k; });
  return (it != entries.end() && it->key == key) ? &*it : nullptr;
}

KeySupport key_support(std::span<const FragmentIndex> indexes,
                       const FoldSpec *fold) {
  KeySupport out;
  out.molecules = indexes.size();
  std::vector<char> in_train;
  if (fold != nullptr) {
    out.fold_id = fold->fold_id;
    in_train.assign(indexes.size(), 0);
    for (std::size_t id : fold->train_ids) {
      if (id >= indexes.size())
        throw DataError("fold references a row outside the dataset");
      in_train[id] = 1;
    }
    for (std::size_t id : fold->test_ids) {
      if (id >= indexes.size())
        throw DataError("fold references a row outside the dataset");
    }
  }

  std::unordered_map<FragmentKey, KeySupportEntry> acc;
  for (std::size_t row = 0; row < indexes.size(); ++row) {
    const bool train = fold != nullptr && in_train[row] != 0;
    for (const KeyOccurrence &k : indexes[row].keys) {
      KeySupportEntry &e = acc[k.key];
      ++e.n_total;
      if (train)
        ++e.n_train;
    }
  }
  out.entries.reserve(acc.size());
  for (auto &[key, e] : acc) {
    e.key = key;
    out.entries.push_back(e);
  }
  std::sort(out.entries.begin(), out.entries.end(),
            [](const KeySupportEntry &l, const KeySupportEntry &r) {
              return l.key < r.key;
            });
  return out;
}

ScoreMap dummy_mask(const ScoreMap &scores, const KeySupport &support,
                    const FoldSpec &fold) {
  if (!support.fold_id || *support.fold_id != fold.fold_id)
    throw InvariantError("key support was not computed for this fold");
  ScoreMap out(scores.order(), scores.stat_variant());
  out.mutable_entries().reserve(scores.size());
  for (const ScoreEntry &e : scores.entries()) {
    const KeySupportEntry *ks = support.find(e.key);
    if (ks == nullptr || ks->n_total == 0)
      throw InvariantError("scored key missing from key support");
    ScoreEntry masked = e;
    if (ks->n_train == 0) {
      masked.score = 0.0;
    } else if (ks->n_train != ks->n_total) {
      masked.score = e.score * (static_cast<double>(ks->n_train) /
                                static_cast<double>(ks->n_total));
    }
    out.push_back(masked);
  }
  return out;
}

double LooConfig::resolved_s(std::size_t molecules) const {
  if (s)
    return *s;
  if (molecules == 0)
    return 1.0;
  return static_cast<double>(molecules - 1) / static_cast<double>(molecules);
}

double LooConfig::resolved_c_alpha() const {
  if (c_alpha)
    return *c_alpha;
  return 2.0 * std::log2((1.0 + alpha) / alpha);
}

ScoreMap key_loo_adjust(const ScoreMap &scores, const KeySupport &support,
                        const LooConfig &cfg) {
  const double s = cfg.resolved_s(support.molecules);
  ScoreMap out(scores.order(), scores.stat_variant());
  out.mutable_entries().reserve(scores.size());
  for (const ScoreEntry &e : scores.entries()) {
    const KeySupportEntry *ks = support.find(e.key);
    if (ks == nullptr)
      throw InvariantError("scored key missing from key support");
    ScoreEntry adjusted = e;
    if (ks->n_total < static_cast<std::uint32_t>(std::max(cfg.k, 0)))
      adjusted.score = 0.0;
    else if (s != 1.0)
      adjusted.score = e.score * s;
    out.push_back(adjusted);
  }
  return out;
}

namespace {

ContingencyTable decremented(const ContingencyTable &t, Cell cell) {
  ContingencyTable out = t;
  switch (cell) {
  case Cell::kA: --out.a; break;
  case Cell::kB: --out.b; break;
  case Cell::kC: --out.c; break;
  case Cell::kD: --out.d; break;
  }
  return out;
}

std::int64_t cell_value(const ContingencyTable &t, Cell cell) {
  switch (cell) {
  case Cell::kA: return t.a;
  case Cell::kB: return t.b;
  case Cell::kC: return t.c;
  case Cell::kD: return t.d;
  }
  return 0;
}

constexpr Cell kCells[] = { Cell::kA, Cell::kB, Cell::kC, Cell::kD };

}  // namespace

double true_loo_weight(const ContingencyTable &t) {
  const std::int64_t n = t.total();
  if (n < 2)
    throw std::invalid_argument("true LOO needs at least 2 observations");
  double sum = 0.0;
  for (Cell cell : kCells) {
    const std::int64_t v = cell_value(t, cell);
    if (v == 0)
      continue;
    sum += static_cast<double>(v) / static_cast<double>(n) *
           log_odds(decremented(t, cell));
  }
  return sum;
}

double influence_delta(const ContingencyTable &t, Cell cell) {
  if (cell_value(t, cell) < 1)
    throw std::invalid_argument("cannot remove an observation from an empty cell");
  return log_odds(decremented(t, cell)) - log_odds(t);
}

BoundReport loo_bound_report(const TableSet &tables, const LooConfig &cfg) {
  if (tables.mode != CountMode::kPresence)
    throw DataError("LOO bound audit needs presence-mode tables");
  BoundReport report;
  report.molecules = tables.molecules;
  report.k = cfg.k;
  report.s = cfg.resolved_s(tables.molecules);
  report.c_alpha = cfg.resolved_c_alpha();

  const double n = static_cast<double>(tables.molecules);
  const double scale_gap = std::abs(report.s - (n - 1.0) / n);
  const double base = report.c_alpha / static_cast<double>(cfg.k);

  std::size_t within = 0;
  double weight_within = 0.0;
  double weight_total = 0.0;
  report.rows.reserve(tables.entries.size());
  for (const KeyTable &kt : tables.entries) {
    BoundRow row;
    row.key = kt.key;
    row.support = kt.support;
    row.w = log_odds(kt.table);
    // a + b equals the molecule support in presence mode.
    row.w_key_loo = kt.support < static_cast<std::uint32_t>(cfg.k) ? 0.0 : report.s * row.w;
    row.w_true_loo = true_loo_weight(kt.table);
    row.deviation = std::abs(row.w_key_loo - row.w_true_loo);
    row.bound = base + scale_gap * std::abs(row.w);
    row.within = row.deviation <= row.bound;
    within += row.within ? 1 : 0;
    weight_total += kt.support;
    weight_within += row.within ? kt.support : 0.0;
    report.rows.push_back(row);
  }
  report.fraction_within = report.rows.empty()
                               ? 1.0
                               : static_cast<double>(within) /
                                     static_cast<double>(report.rows.size());
  report.fraction_within_weighted =
      weight_total > 0.0 ? weight_within / weight_total : 1.0;
  return report;
}

}  // namespace molftp
