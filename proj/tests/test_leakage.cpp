//
// molftp - Copyright 2026 The molftp Authors.
// SPDX-License-Identifier: Apache-2.0
//

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include <doctest.h>

#include "helpers.hpp"
#include "molftp/error.hpp"
#include "molftp/leakage.hpp"
#include "molftp/rng.hpp"

using namespace molftp;

namespace {

FragmentIndex make_index(std::size_t id, std::vector<std::uint64_t> keys) {
  std::sort(keys.begin(), keys.end());
  FragmentIndex fi;
  fi.molecule_id = id;
  for (std::uint64_t k : keys)
    fi.keys.push_back({ FragmentKey{ k }, 0, 1 });
  return fi;
}

// 100 molecules; key 1 on the first 10, key 2 only on molecule 95.
std::vector<FragmentIndex> hundred() {
  std::vector<FragmentIndex> idx;
  for (std::size_t i = 0; i < 100; ++i) {
    std::vector<std::uint64_t> keys = { 3 };
    if (i < 10)
      keys.push_back(1);
    if (i == 95)
      keys.push_back(2);
    idx.push_back(make_index(i, keys));
  }
  return idx;
}

ScoreMap two_scores() {
  ScoreMap m(Order::k1D, "fisher_onetailed");
  m.push_back({ FragmentKey{ 1 }, 2.0, 0, 10 });
  m.push_back({ FragmentKey{ 2 }, -4.0, 0, 1 });
  return m;
}

ContingencyTable table(std::int64_t a, std::int64_t b, std::int64_t c, std::int64_t d) {
  ContingencyTable t;
  t.a = a;
  t.b = b;
  t.c = c;
  t.d = d;
  return t;
}

// Drop one observation from the raw table and average, weighting by cell size.
double brute_loo(const ContingencyTable &t) {
  const double n = static_cast<double>(t.total());
  double sum = 0.0;
  for (int cell = 0; cell < 4; ++cell) {
    ContingencyTable r = t;
    std::int64_t *v[] = { &r.a, &r.b, &r.c, &r.d };
    const std::int64_t count = *v[cell];
    if (count == 0)
      continue;
    --*v[cell];
    const double w = std::log2((r.a + 0.5) * (r.d + 0.5) / ((r.b + 0.5) * (r.c + 0.5)));
    sum += static_cast<double>(count) / n * w;
  }
  return sum;
}

}  // namespace

TEST_SUITE("leakage") {

TEST_CASE("fold support counts") {
  const auto idx = hundred();
  FoldSpec fold;
  fold.fold_id = 3;
  for (std::size_t i = 0; i < 100; ++i)
    ((i == 0 || i == 1 || i == 95) ? fold.test_ids : fold.train_ids).push_back(i);
  const KeySupport ks = key_support(idx, &fold);
  REQUIRE(ks.fold_id.has_value());
  CHECK(*ks.fold_id == 3);
  CHECK(ks.molecules == 100);
  const auto *e1 = ks.find(FragmentKey{ 1 });
  REQUIRE(e1 != nullptr);
  CHECK(e1->n_total == 10);
  CHECK(e1->n_train == 8);
  CHECK(ks.find(FragmentKey{ 2 })->n_train == 0);
  CHECK(ks.find(FragmentKey{ 3 })->n_total == 100);
  CHECK(ks.find(FragmentKey{ 4 }) == nullptr);

  FoldSpec bad = fold;
  bad.train_ids.push_back(100);
  CHECK_THROWS_AS(key_support(idx, &bad), DataError);
}

TEST_CASE("dummy masking scales by training share") {
  const auto idx = hundred();
  FoldSpec fold;
  fold.fold_id = 1;
  for (std::size_t i = 0; i < 100; ++i)
    ((i == 0 || i == 1 || i == 95) ? fold.test_ids : fold.train_ids).push_back(i);
  const KeySupport ks = key_support(idx, &fold);
  const ScoreMap masked = dummy_mask(two_scores(), ks, fold);
  CHECK(masked.score(FragmentKey{ 1 }) == doctest::Approx(1.6));
  CHECK(masked.score(FragmentKey{ 2 }) == 0.0);

  FoldSpec other = fold;
  other.fold_id = 2;
  CHECK_THROWS_AS(dummy_mask(two_scores(), ks, other), InvariantError);
  CHECK_THROWS_AS(dummy_mask(two_scores(), key_support(idx), fold), InvariantError);
  ScoreMap unknown(Order::k1D, "x");
  unknown.push_back({ FragmentKey{ 9 }, 1.0, 0, 1 });
  CHECK_THROWS_AS(dummy_mask(unknown, ks, fold), InvariantError);
}

TEST_CASE("key LOO scaling and singleton zeroing") {
  const auto idx = hundred();
  const KeySupport ks = key_support(idx);
  CHECK_FALSE(ks.fold_id.has_value());
  LooConfig cfg;
  const ScoreMap adj = key_loo_adjust(two_scores(), ks, cfg);
  CHECK(adj.score(FragmentKey{ 1 }) == doctest::Approx(1.98));
  CHECK(adj.score(FragmentKey{ 2 }) == 0.0);

  cfg.s = 1.0;
  CHECK(key_loo_adjust(two_scores(), ks, cfg).score(FragmentKey{ 1 }) == 2.0);
  cfg.k = 11;
  CHECK(key_loo_adjust(two_scores(), ks, cfg).score(FragmentKey{ 1 }) == 0.0);
  cfg.k = 1;
  CHECK(key_loo_adjust(two_scores(), ks, cfg).score(FragmentKey{ 2 }) == -4.0);
}

TEST_CASE("resolved constants") {
  LooConfig cfg;
  CHECK(cfg.resolved_s(100) == doctest::Approx(0.99));
  CHECK(cfg.resolved_c_alpha() == doctest::Approx(2.0 * std::log2(3.0)));
  cfg.alpha = 1.0;
  CHECK(cfg.resolved_c_alpha() == doctest::Approx(2.0));
  cfg.c_alpha = 0.25;
  CHECK(cfg.resolved_c_alpha() == 0.25);
}

TEST_CASE("adjustments never grow a score") {
  Rng rng(11);
  std::vector<FragmentIndex> idx;
  for (std::size_t i = 0; i < 60; ++i) {
    std::vector<std::uint64_t> keys;
    for (std::uint64_t k = 1; k <= 40; ++k)
      if (rng.uniform() < 1.0 / static_cast<double>(k))
        keys.push_back(k);
    idx.push_back(make_index(i, keys));
  }
  const KeySupport all = key_support(idx);
  ScoreMap scores(Order::k2D, "mcnemar");
  for (const auto &e : all.entries)
    scores.push_back({ e.key, (rng.uniform() - 0.5) * 10.0, 0, e.n_total });
  FoldSpec fold;
  fold.fold_id = 0;
  for (std::size_t i = 0; i < idx.size(); ++i)
    (rng.uniform() < 0.2 ? fold.test_ids : fold.train_ids).push_back(i);
  const ScoreMap masked = dummy_mask(scores, key_support(idx, &fold), fold);
  const ScoreMap loo = key_loo_adjust(scores, all, LooConfig{});
  for (std::size_t i = 0; i < scores.size(); ++i) {
    const double s = scores.entries()[i].score;
    CHECK(std::abs(masked.entries()[i].score) <= std::abs(s));
    CHECK(std::abs(loo.entries()[i].score) <= std::abs(s));
    CHECK(masked.entries()[i].score * s >= 0.0);
    CHECK(loo.entries()[i].score * s >= 0.0);
  }
  CHECK(masked.order() == Order::k2D);
  CHECK(loo.stat_variant() == "mcnemar");
}

TEST_CASE("true LOO of hand tables") {
  CHECK(true_loo_weight(table(1, 1, 1, 1)) == doctest::Approx(0.0).epsilon(1e-15));
  CHECK(true_loo_weight(table(3, 0, 0, 3)) == doctest::Approx(std::log2(35.0)).epsilon(1e-14));
  CHECK_THROWS_AS(true_loo_weight(table(1, 0, 0, 0)), std::invalid_argument);
}

TEST_CASE("influence of a single removal") {
  const ContingencyTable t = table(1, 1, 1, 1);
  CHECK(influence_delta(t, Cell::kA) == doctest::Approx(-std::log2(3.0)));
  CHECK(influence_delta(t, Cell::kB) == doctest::Approx(std::log2(3.0)));
  CHECK(influence_delta(t, Cell::kC) == doctest::Approx(std::log2(3.0)));
  CHECK(influence_delta(t, Cell::kD) == doctest::Approx(-std::log2(3.0)));
  CHECK_THROWS_AS(influence_delta(table(0, 2, 2, 2), Cell::kA), std::invalid_argument);
}

TEST_CASE("true LOO decomposes into single-removal influences") {
  Rng rng(5);
  for (int i = 0; i < 2000; ++i) {
    const ContingencyTable t = table(rng.below(30), rng.below(30), rng.below(30),
                                     2 + rng.below(30));
    const double n = static_cast<double>(t.total());
    double expected = 0.0;
    const Cell cells[] = { Cell::kA, Cell::kB, Cell::kC, Cell::kD };
    const std::int64_t values[] = { t.a, t.b, t.c, t.d };
    for (int c = 0; c < 4; ++c)
      if (values[c] > 0)
        expected += static_cast<double>(values[c]) / n * influence_delta(t, cells[c]);
    CHECK(true_loo_weight(t) - log_odds(t) == doctest::Approx(expected).epsilon(1e-9));
    CHECK(true_loo_weight(t) == doctest::Approx(brute_loo(t)).epsilon(1e-12));
  }
}

TEST_CASE("true LOO converges to the full weight for large tables") {
  double previous = 1e9;
  for (std::int64_t m : { 10, 100, 1000, 10000, 100000 }) {
    const ContingencyTable t = table(3 * m, m, 2 * m, 5 * m);
    const double gap = std::abs(true_loo_weight(t) - log_odds(t));
    CHECK(gap < previous);
    previous = gap;
  }
  CHECK(previous < 1e-5);
}

TEST_CASE("bound report with the default scale reduces to C over k") {
  const auto idx = test::index_all(test::sample_smiles(), 2);
  std::vector<int> labels(idx.size());
  for (std::size_t i = 0; i < labels.size(); ++i)
    labels[i] = i % 3 == 0 ? 1 : 0;
  const TableSet ts = accumulate_tables(idx, labels, CountMode::kPresence);
  LooConfig cfg;
  const BoundReport r = loo_bound_report(ts, cfg);
  CHECK(r.molecules == idx.size());
  CHECK(r.s == doctest::Approx(19.0 / 20.0));
  REQUIRE(r.rows.size() == ts.entries.size());
  std::size_t within = 0;
  for (const BoundRow &row : r.rows) {
    CHECK(row.bound == doctest::Approx(r.c_alpha / 2.0));
    CHECK(row.deviation == doctest::Approx(std::abs(row.w_key_loo - row.w_true_loo)));
    CHECK(row.within == (row.deviation <= row.bound));
    within += row.within;
    if (row.support < 2)
      CHECK(row.w_key_loo == 0.0);
  }
  CHECK(r.fraction_within == doctest::Approx(static_cast<double>(within) / r.rows.size()));
  CHECK(r.fraction_within_weighted >= 0.0);
  CHECK(r.fraction_within_weighted <= 1.0);

  cfg.s = 1.0;
  const BoundReport r1 = loo_bound_report(ts, cfg);
  for (const BoundRow &row : r1.rows)
    CHECK(row.bound == doctest::Approx(r1.c_alpha / 2.0 + std::abs(row.w) / 20.0));

  const TableSet counts = accumulate_tables(idx, labels, CountMode::kCount);
  CHECK_THROWS_AS(loo_bound_report(counts, cfg), DataError);
}

}  // TEST_SUITE
