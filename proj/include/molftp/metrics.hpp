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

namespace molftp {

/// Mann-Whitney estimate with tie-averaged ranks. nullopt without both
/// classes.
std::optional<double> auroc(std::span<const int> y, std::span<const double> score);

/// Average precision: sum over distinct thresholds of (R_k - R_{k-1}) P_k.
/// nullopt without positives.
std::optional<double> auprc(std::span<const int> y, std::span<const double> score);

struct FoldMetrics {
  std::optional<double> auroc;
  std::optional<double> auprc;
  double precision = 0.0;  // 0 when nothing is predicted positive
  double recall = 0.0;
  double f1 = 0.0;
  double accuracy = 0.0;
  std::size_t n = 0;
  std::size_t positives = 0;
};

/// Throws DataError on mismatched lengths, empty input or bad labels.
FoldMetrics compute_metrics(std::span<const int> y, std::span<const double> prob,
                            double threshold = 0.5);

struct MetricSummary {
  double mean = 0.0;
  double std = 0.0;     // population standard deviation over folds
  std::size_t folds = 0;  // folds where the metric was defined
};

struct MetricReport {
  std::vector<FoldMetrics> per_fold;
  std::optional<MetricSummary> auroc;
  std::optional<MetricSummary> auprc;
  MetricSummary precision;
  MetricSummary recall;
  MetricSummary f1;
  MetricSummary accuracy;
  FoldMetrics pooled;  // all out-of-fold predictions at once
};

MetricReport summarize(std::vector<FoldMetrics> per_fold, const FoldMetrics &pooled);

inline constexpr const char *kMetricNames[] = { "auroc", "auprc", "precision",
                                                "recall", "f1", "accuracy" };

}  // namespace molftp
