//
// molftp - Copyright 2026 The molftp Authors.
// SPDX-License-Identifier: Apache-2.0
//

#include "molftp/pipeline.hpp"

#include <algorithm>
#include <chrono>
#include <unordered_map>

#include "molftp/error.hpp"
#include "molftp/logistic.hpp"
#include "molftp/parallel.hpp"
#include "molftp/vectorizer.hpp"

namespace molftp {

LooConfig loo_config(const PipelineConfig &cfg) {
  LooConfig c;
  c.k = cfg.loo_k;
  c.s = cfg.loo_s;
  c.c_alpha = cfg.c_alpha;
  c.alpha = cfg.alpha;
  return c;
}

namespace {

bool wants(const PipelineConfig &cfg, Order o) {
  return std::find(cfg.views.begin(), cfg.views.end(), o) != cfg.views.end();
}

std::vector<Order> sorted_views(const PipelineConfig &cfg) {
  std::vector<Order> v = cfg.views;
  std::sort(v.begin(), v.end());
  return v;
}

std::vector<int> labels_of(const Dataset &ds, const std::vector<std::size_t> &rows) {
  std::vector<int> out;
  out.reserve(rows.size());
  for (std::size_t r : rows)
    out.push_back(ds.labels[r]);
  return out;
}

struct Extras {
  std::vector<std::string> names;
  std::vector<std::vector<double>> columns;  // per name, per parsed molecule
};

Extras extras_for(const Dataset &ds, const PipelineConfig &cfg,
                  const std::vector<std::size_t> &rows) {
  Extras e;
  for (const std::string &name : cfg.extra_feature_columns) {
    std::vector<double> all;
    try {
      all = ds.extra_column(name);
    } catch (const DataError &err) {
      throw ConfigError("extra_feature_columns", err.what());
    }
    std::vector<double> col;
    col.reserve(rows.size());
    for (std::size_t r : rows)
      col.push_back(all[r]);
    e.names.push_back(name);
    e.columns.push_back(std::move(col));
  }
  return e;
}

ParsedDataset parse_or_throw(const Dataset &ds) {
  ParsedDataset parsed = parse_molecules(ds);
  if (parsed.molecules.empty())
    throw DataError("no SMILES in the dataset could be parsed");
  return parsed;
}

std::vector<FragmentKey> zeroed(const ScoreMap &raw, const ScoreMap &adjusted) {
  std::vector<FragmentKey> out;
  const auto &a = adjusted.entries();
  const auto &r = raw.entries();
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (a[i].score == 0.0 && r[i].score != 0.0)
      out.push_back(a[i].key);
  }
  return out;
}

}  // namespace

Corpus prepare_corpus(std::span<const Molecule> molecules, const PipelineConfig &cfg) {
  Corpus c;
  c.indexes.resize(molecules.size());
  parallel_for(molecules.size(), [&](std::size_t i) {
    c.indexes[i] = enumerate_fragments(molecules[i], cfg.radius, i);
  }, 16);
  if (wants(cfg, Order::k2D) || wants(cfg, Order::k3D)) {
    c.fingerprints.reserve(molecules.size());
    for (const FragmentIndex &idx : c.indexes)
      c.fingerprints.push_back(key_fingerprint(idx, cfg.sim_radius));
    c.pairs = similar_pairs(c.fingerprints, cfg.sim_threshold, &c.pair_stats);
  }
  return c;
}

ScoreBundle build_scores(const Corpus &corpus, std::span<const int> labels,
                         const PipelineConfig &cfg, std::span<const std::size_t> rows) {
  ScoreBundle b;
  b.tables = rows.empty()
                 ? accumulate_tables(corpus.indexes, labels, cfg.mode, cfg.alpha)
                 : accumulate_tables(corpus.indexes, labels, rows, cfg.mode, cfg.alpha);

  std::vector<SimilarPair> pairs;
  if (rows.empty()) {
    pairs = corpus.pairs;
  } else {
    std::vector<char> member(corpus.indexes.size(), 0);
    for (std::size_t r : rows)
      member.at(r) = 1;
    for (const SimilarPair &p : corpus.pairs) {
      if (member[p.i] && member[p.j])
        pairs.push_back(p);
    }
  }

  for (Order o : sorted_views(cfg)) {
    switch (o) {
    case Order::k1D:
      b.maps.push_back(build_score_map(b.tables, cfg.stat_1d));
      break;
    case Order::k2D: {
      const auto cpairs = build_contrast_pairs(pairs, labels);
      b.contrast_pairs = cpairs.size();
      b.maps.push_back(mcnemar_scores(cpairs, corpus.indexes, labels, b.tables));
      break;
    }
    case Order::k3D: {
      const auto triplets = build_triplets(pairs, labels,
                                           static_cast<std::size_t>(cfg.triplet_cap));
      b.triplets = triplets.size();
      b.maps.push_back(triplet_scores(triplets, corpus.indexes, labels, b.tables,
                                      cfg.stat_3d));
      break;
    }
    }
  }
  return b;
}

std::vector<ScoreMap> apply_leakage(const std::vector<ScoreMap> &maps,
                                    const Corpus &corpus, const PipelineConfig &cfg,
                                    const FoldSpec *fold) {
  std::vector<ScoreMap> out;
  out.reserve(maps.size());
  switch (cfg.leakage) {
  case LeakageMode::kNone:
    return maps;
  case LeakageMode::kKeyLoo: {
    const KeySupport support = key_support(corpus.indexes);
    const LooConfig loo = loo_config(cfg);
    for (const ScoreMap &m : maps)
      out.push_back(key_loo_adjust(m, support, loo));
    return out;
  }
  case LeakageMode::kDummyMask: {
    if (fold == nullptr)
      throw ConfigError("leakage", "dummy_mask needs a train/test split");
    const KeySupport support = key_support(corpus.indexes, fold);
    for (const ScoreMap &m : maps)
      out.push_back(dummy_mask(m, support, *fold));
    return out;
  }
  case LeakageMode::kTrainOnly:
    break;
  }
  throw ConfigError("leakage", "train_only scores are built from the training rows");
}

FeatureTable feature_table(const Corpus &corpus, const std::vector<ScoreMap> &maps,
                           const PipelineConfig &cfg,
                           const std::vector<std::vector<double>> &extras,
                           const std::vector<std::string> &extra_names) {
  std::vector<const ScoreMap *> ptrs;
  for (const ScoreMap &m : maps)
    ptrs.push_back(&m);
  const auto vectors = vectorize(corpus.indexes, ptrs, { cfg.pooling, cfg.gate });

  FeatureTable t;
  t.columns = column_names(sorted_views(cfg), cfg.radius);
  t.columns.insert(t.columns.end(), extra_names.begin(), extra_names.end());
  t.width = t.columns.size();
  t.values.reserve(vectors.size() * t.width);
  for (std::size_t i = 0; i < vectors.size(); ++i) {
    t.values.insert(t.values.end(), vectors[i].values.begin(), vectors[i].values.end());
    for (const auto &col : extras)
      t.values.push_back(col.at(i));
  }
  return t;
}

FeaturizeResult featurize(const Dataset &ds, const PipelineConfig &cfg,
                          const std::vector<std::size_t> *test_rows) {
  validate(cfg);
  if (test_rows == nullptr && cfg.leakage != LeakageMode::kKeyLoo)
    throw ConfigError("leakage", std::string(to_string(cfg.leakage)) +
                                     " needs held-out rows; only key_loo works on full data");
  const auto start = std::chrono::steady_clock::now();

  FeaturizeResult res;
  ParsedDataset parsed = parse_or_throw(ds);
  res.rows = parsed.rows;
  res.failures = std::move(parsed.failures);
  res.labels = labels_of(ds, res.rows);
  const Extras extras = extras_for(ds, cfg, res.rows);
  const Corpus corpus = prepare_corpus(parsed.molecules, cfg);

  FoldSpec fold;
  if (test_rows != nullptr) {
    std::unordered_map<std::size_t, std::size_t> mol_of_row;
    for (std::size_t m = 0; m < res.rows.size(); ++m)
      mol_of_row[res.rows[m]] = m;
    std::vector<char> is_test(res.rows.size(), 0);
    for (std::size_t r : *test_rows) {
      if (r >= ds.size())
        throw DataError("held-out row " + std::to_string(r) + " is outside the dataset");
      auto it = mol_of_row.find(r);
      if (it != mol_of_row.end())
        is_test[it->second] = 1;
    }
    for (std::size_t m = 0; m < res.rows.size(); ++m)
      (is_test[m] ? fold.test_ids : fold.train_ids).push_back(m);
  }

  if (cfg.leakage == LeakageMode::kTrainOnly) {
    res.scores = build_scores(corpus, res.labels, cfg, fold.train_ids);
    res.raw_maps = res.scores.maps;
  } else {
    res.scores = build_scores(corpus, res.labels, cfg);
    res.raw_maps = res.scores.maps;
    res.scores.maps = apply_leakage(res.raw_maps, corpus, cfg,
                                    test_rows != nullptr ? &fold : nullptr);
  }
  res.features = feature_table(corpus, res.scores.maps, cfg, extras.columns, extras.names);

  res.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  res.molecules_per_second =
      res.seconds > 0.0 ? static_cast<double>(res.rows.size()) / res.seconds : 0.0;
  return res;
}

namespace {

FeatureMatrix take_rows(const FeatureTable &t, const std::vector<std::size_t> &ids) {
  FeatureMatrix m(ids.size(), t.width);
  for (std::size_t r = 0; r < ids.size(); ++r)
    std::copy_n(t.values.begin() + static_cast<std::ptrdiff_t>(ids[r] * t.width), t.width,
                m.data.begin() + static_cast<std::ptrdiff_t>(r * t.width));
  return m;
}

}  // namespace

CvResult run_cv(const Dataset &ds, const PipelineConfig &cfg, const CvOptions &opts) {
  validate(cfg);
  CvResult res;
  ParsedDataset parsed = parse_or_throw(ds);
  res.rows = parsed.rows;
  res.failures = std::move(parsed.failures);
  res.labels = labels_of(ds, res.rows);
  const Extras extras = extras_for(ds, cfg, res.rows);
  const Corpus corpus = prepare_corpus(parsed.molecules, cfg);
  res.plan = stratified_folds(res.labels, static_cast<std::size_t>(cfg.cv_k), cfg.seed);

  const LogisticOptions lr{ cfg.l2, cfg.tol, cfg.max_iter };
  std::optional<ScoreBundle> full;
  std::optional<FeatureTable> shared;
  std::vector<ScoreMap> shared_maps;
  if (cfg.leakage != LeakageMode::kTrainOnly)
    full = build_scores(corpus, res.labels, cfg);
  if (cfg.leakage == LeakageMode::kKeyLoo || cfg.leakage == LeakageMode::kNone) {
    shared_maps = apply_leakage(full->maps, corpus, cfg, nullptr);
    shared = feature_table(corpus, shared_maps, cfg, extras.columns, extras.names);
  }

  res.oof_probability.assign(res.labels.size(), 0.0);
  std::vector<FoldMetrics> per_fold;
  for (const FoldSpec &fold : res.plan.folds) {
    std::vector<ScoreMap> maps;
    FeatureTable local;
    const FeatureTable *features = nullptr;
    if (shared) {
      features = &*shared;
      if (opts.keep_fold_maps)
        maps = shared_maps;
    } else if (cfg.leakage == LeakageMode::kDummyMask) {
      maps = apply_leakage(full->maps, corpus, cfg, &fold);
      local = feature_table(corpus, maps, cfg, extras.columns, extras.names);
      features = &local;
    } else {
      ScoreBundle b = build_scores(corpus, res.labels, cfg, fold.train_ids);
      res.rows_read.push_back(b.tables.rows_read);
      maps = std::move(b.maps);
      local = feature_table(corpus, maps, cfg, extras.columns, extras.names);
      features = &local;
    }
    if (opts.keep_fold_maps) {
      std::vector<std::vector<FragmentKey>> z;
      if (full) {
        for (std::size_t v = 0; v < maps.size(); ++v)
          z.push_back(zeroed(full->maps[v], maps[v]));
      }
      res.zeroed_keys.push_back(std::move(z));
      res.fold_maps.push_back(maps);
    }

    const FeatureMatrix train_x = take_rows(*features, fold.train_ids);
    const FeatureMatrix test_x = take_rows(*features, fold.test_ids);
    std::vector<int> train_y, test_y;
    for (std::size_t id : fold.train_ids)
      train_y.push_back(res.labels[id]);
    for (std::size_t id : fold.test_ids)
      test_y.push_back(res.labels[id]);
    LinearModel model;
    const auto prob = fit_predict(train_x, train_y, test_x, lr, &model);
    if (!model.warning.empty())
      res.warnings.push_back("fold " + std::to_string(fold.fold_id) + ": " + model.warning);
    else if (!model.converged)
      res.warnings.push_back("fold " + std::to_string(fold.fold_id) +
                             ": optimizer stopped at gradient norm " +
                             std::to_string(model.grad_norm) + " after " +
                             std::to_string(model.iterations) + " iterations");
    for (std::size_t r = 0; r < fold.test_ids.size(); ++r)
      res.oof_probability[fold.test_ids[r]] = prob[r];
    per_fold.push_back(compute_metrics(test_y, prob, cfg.threshold));
  }
  const FoldMetrics pooled = compute_metrics(res.labels, res.oof_probability, cfg.threshold);
  res.report = summarize(std::move(per_fold), pooled);
  return res;
}

AuditResult run_audit(const Dataset &ds, const PipelineConfig &cfg) {
  validate(cfg);
  AuditResult res;
  ParsedDataset parsed = parse_or_throw(ds);
  res.failures = std::move(parsed.failures);
  const std::vector<int> labels = labels_of(ds, parsed.rows);
  PipelineConfig one = cfg;
  one.views = { Order::k1D };
  const Corpus corpus = prepare_corpus(parsed.molecules, one);
  const TableSet tables =
      accumulate_tables(corpus.indexes, labels, CountMode::kPresence, cfg.alpha);
  res.report = loo_bound_report(tables, loo_config(cfg));
  return res;
}

}  // namespace molftp
