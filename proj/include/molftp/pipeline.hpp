//
// molftp - Copyright 2026 The molftp Authors.
// SPDX-License-Identifier: Apache-2.0
//

#pragma once

#include <cstddef>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "molftp/config.hpp"
#include "molftp/dataset.hpp"
#include "molftp/folds.hpp"
#include "molftp/fragments.hpp"
#include "molftp/leakage.hpp"
#include "molftp/metakeys.hpp"
#include "molftp/metrics.hpp"
#include "molftp/prevalence.hpp"
#include "molftp/score_map.hpp"
#include "molftp/similarity.hpp"

namespace molftp {

/// Label-free structure data: fragments, fingerprints and similar pairs.
/// Molecule ids are positions in `indexes`.
struct Corpus {
  std::vector<FragmentIndex> indexes;
  std::vector<KeySetFingerprint> fingerprints;
  std::vector<SimilarPair> pairs;
  PairSearchStats pair_stats;
};

Corpus prepare_corpus(std::span<const Molecule> molecules, const PipelineConfig &cfg);

/// Tables and one score map per configured view, in 1D, 2D, 3D order.
struct ScoreBundle {
  TableSet tables;
  std::vector<ScoreMap> maps;
  std::size_t contrast_pairs = 0;
  std::size_t triplets = 0;
};

/// Builds tables and score maps from the listed rows only (all rows when
/// `rows` is empty). Pairs and triplets are restricted to those rows too.
ScoreBundle build_scores(const Corpus &corpus, std::span<const int> labels,
                         const PipelineConfig &cfg,
                         std::span<const std::size_t> rows = {});

/// Applies dummy masking or key-LOO to every map; kNone returns a copy.
/// dummy_mask needs `fold`. kTrainOnly is handled by build_scores and is
/// rejected here.
std::vector<ScoreMap> apply_leakage(const std::vector<ScoreMap> &maps,
                                    const Corpus &corpus,
                                    const PipelineConfig &cfg,
                                    const FoldSpec *fold);

/// Row-major feature matrix: molFTP vector followed by extra columns.
struct FeatureTable {
  std::vector<std::string> columns;
  std::size_t width = 0;
  std::vector<double> values;  // rows x width
};

FeatureTable feature_table(const Corpus &corpus, const std::vector<ScoreMap> &maps,
                           const PipelineConfig &cfg,
                           const std::vector<std::vector<double>> &extras,
                           const std::vector<std::string> &extra_names);

struct FeaturizeResult {
  FeatureTable features;
  std::vector<std::size_t> rows;  // dataset row of each feature row
  std::vector<int> labels;
  std::vector<RowFailure> failures;
  ScoreBundle scores;              // after the leakage strategy
  std::vector<ScoreMap> raw_maps;  // before it
  double seconds = 0.0;
  double molecules_per_second = 0.0;
};

/// Full-data featurization. Without `test_rows` only key_loo is allowed;
/// with them the fold (rest = train) drives dummy_mask, train_only or none.
/// Throws DataError when no SMILES parses and ConfigError on a mode the
/// call cannot honour.
FeaturizeResult featurize(const Dataset &ds, const PipelineConfig &cfg,
                          const std::vector<std::size_t> *test_rows = nullptr);

struct CvResult {
  CvPlan plan;  // ids refer to parsed molecules
  MetricReport report;
  std::vector<std::size_t> rows;  // dataset row of each parsed molecule
  std::vector<int> labels;
  std::vector<double> oof_probability;
  std::vector<RowFailure> failures;
  std::vector<std::string> warnings;
  // train_only: molecule ids consumed by table construction, per fold.
  std::vector<std::vector<std::size_t>> rows_read;
  // Keys zeroed by the leakage strategy, per fold and view.
  std::vector<std::vector<std::vector<FragmentKey>>> zeroed_keys;
  std::vector<std::vector<ScoreMap>> fold_maps;  // kept when requested
};

struct CvOptions {
  bool keep_fold_maps = false;
};

/// Stratified k-fold cross-validation with the configured leakage strategy.
CvResult run_cv(const Dataset &ds, const PipelineConfig &cfg,
                const CvOptions &opts = {});

struct AuditResult {
  BoundReport report;
  std::vector<RowFailure> failures;
};

/// Key-LOO bound audit over all 1D keys of presence tables.
AuditResult run_audit(const Dataset &ds, const PipelineConfig &cfg);

LooConfig loo_config(const PipelineConfig &cfg);

}  // namespace molftp
