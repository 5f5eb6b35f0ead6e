//
// molftp - Copyright 2026 The molftp Authors.
// SPDX-License-Identifier: Apache-2.0
//

#include "molftp/metrics.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "molftp/error.hpp"

namespace molftp {

namespace {

void check_inputs(std::span<const int> y, std::span<const double> score) {
  if (y.size() != score.size())
    throw DataError("labels and scores differ in length");
  for (int v : y) {
    if (v != 0 && v != 1)
      throw DataError("label outside {0,1}");
  }
}

std::vector<std::size_t> order_by_score_desc(std::span<const double> score) {
  std::vector<std::size_t> idx(score.size());
  std::iota(idx.begin(), idx.end(), std::size_t{ 0 });
  std::stable_sort(idx.begin(), idx.end(), [&](std::size_t a, std::size_t b) {
    return score[a] > score[b];
  });
  return idx;
}

}  // namespace

std::optional<double> auroc(std::span<const int> y, std::span<const double> score) {
  check_inputs(y, score);
  const std::size_t n = y.size();
  std::size_t pos = 0;
  for (int v : y)
    pos += static_cast<std::size_t>(v);
  const std::size_t neg = n - pos;
  if (pos == 0 || neg == 0)
    return std::nullopt;

  std::vector<std::size_t> idx(n);
  std::iota(idx.begin(), idx.end(), std::size_t{ 0 });
  std::sort(idx.begin(), idx.end(),
            [&](std::size_t a, std::size_t b) { return score[a] < score[b]; });
  double rank_sum = 0.0;
  std::size_t i = 0;
  while (i < n) {
    std::size_t j = i;
    while (j < n && score[idx[j]] == score[idx[i]])
      ++j;
    // Ranks i+1 .. j share their average.
    const double avg = 0.5 * static_cast<double>(i + 1 + j);
    for (std::size_t t = i; t < j; ++t) {
      if (y[idx[t]] == 1)
        rank_sum += avg;
    }
    i = j;
  }
  const double p = static_cast<double>(pos);
  const double u = rank_sum - p * (p + 1.0) / 2.0;
  return u / (p * static_cast<double>(neg));
}

std::optional<double> auprc(std::span<const int> y, std::span<const double> score) {
  check_inputs(y, score);
  std::size_t pos = 0;
  for (int v : y)
    pos += static_cast<std::size_t>(v);
  if (pos == 0)
    return std::nullopt;
  const auto idx = order_by_score_desc(score);
  double ap = 0.0;
  std::size_t tp = 0;
  std::size_t seen = 0;
  double prev_recall = 0.0;
  std::size_t i = 0;
  while (i < idx.size()) {
    std::size_t j = i;
    while (j < idx.size() && score[idx[j]] == score[idx[i]]) {
      tp += static_cast<std::size_t>(y[idx[j]]);
      ++j;
    }
    seen = j;
    const double recall = static_cast<double>(tp) / static_cast<double>(pos);
    const double precision = static_cast<double>(tp) / static_cast<double>(seen);
    ap += (recall - prev_recall) * precision;
    prev_recall = recall;
    i = j;
  }
  return ap;
}

FoldMetrics compute_metrics(std::span<const int> y, std::span<const double> prob,
                            double threshold) {
  check_inputs(y, prob);
  if (y.empty())
    throw DataError("no predictions to evaluate");
  FoldMetrics m;
  m.n = y.size();
  m.auroc = auroc(y, prob);
  m.auprc = auprc(y, prob);
  std::size_t tp = 0, fp = 0, tn = 0, fn = 0;
  for (std::size_t i = 0; i < y.size(); ++i) {
    const bool predicted = prob[i] >= threshold;
    if (y[i] == 1)
      predicted ? ++tp : ++fn;
    else
      predicted ? ++fp : ++tn;
  }
  m.positives = tp + fn;
  m.precision = tp + fp == 0 ? 0.0 : static_cast<double>(tp) / static_cast<double>(tp + fp);
  m.recall = tp + fn == 0 ? 0.0 : static_cast<double>(tp) / static_cast<double>(tp + fn);
  m.f1 = m.precision + m.recall == 0.0
             ? 0.0
             : 2.0 * m.precision * m.recall / (m.precision + m.recall);
  m.accuracy = static_cast<double>(tp + tn) / static_cast<double>(m.n);
  return m;
}

namespace {

MetricSummary summary_of(const std::vector<double> &v) {
  MetricSummary s;
  s.folds = v.size();
  if (v.empty())
    return s;
  double sum = 0.0;
  for (double x : v)
    sum += x;
  s.mean = sum / static_cast<double>(v.size());
  double ss = 0.0;
  for (double x : v)
    ss += (x - s.mean) * (x - s.mean);
  s.std = std::sqrt(ss / static_cast<double>(v.size()));
  return s;
}

}  // namespace

MetricReport summarize(std::vector<FoldMetrics> per_fold, const FoldMetrics &pooled) {
  MetricReport r;
  std::vector<double> roc, pr, prec, rec, f1, acc;
  for (const FoldMetrics &m : per_fold) {
    if (m.auroc)
      roc.push_back(*m.auroc);
    if (m.auprc)
      pr.push_back(*m.auprc);
    prec.push_back(m.precision);
    rec.push_back(m.recall);
    f1.push_back(m.f1);
    acc.push_back(m.accuracy);
  }
  if (!roc.empty())
    r.auroc = summary_of(roc);
  if (!pr.empty())
    r.auprc = summary_of(pr);
  r.precision = summary_of(prec);
  r.recall = summary_of(rec);
  r.f1 = summary_of(f1);
  r.accuracy = summary_of(acc);
  r.per_fold = std::move(per_fold);
  r.pooled = pooled;
  return r;
}

}  // namespace molftp
