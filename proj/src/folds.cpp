//
// molftp - Copyright 2026 The molftp Authors.
// SPDX-License-Identifier: Apache-2.0
//

#include "molftp/folds.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "molftp/error.hpp"
#include "molftp/rng.hpp"

namespace molftp {

CvPlan stratified_folds(std::span<const int> labels, std::size_t k,
                        std::uint64_t seed) {
  const std::size_t n = labels.size();
  if (k < 2)
    throw ConfigError("cv_k", "fold count must be at least 2");
  if (k > n)
    throw ConfigError("cv_k", "fold count exceeds the number of molecules");

  std::vector<std::size_t> cls[2];
  for (std::size_t i = 0; i < n; ++i) {
    if (labels[i] != 0 && labels[i] != 1)
      throw DataError("label at row " + std::to_string(i) + " is not 0 or 1");
    cls[labels[i]].push_back(i);
  }
  if (k != n) {
    for (int c = 0; c < 2; ++c) {
      if (cls[c].size() < k)
        throw DataError("class " + std::to_string(c) + " has " +
                        std::to_string(cls[c].size()) +
                        " members, fewer than cv_k = " + std::to_string(k));
    }
  }

  CvPlan plan;
  plan.k = k;
  plan.seed = seed;
  plan.folds.resize(k);
  Rng rng(seed);
  std::size_t slot = 0;
  for (int c = 1; c >= 0; --c) {
    rng.shuffle(cls[c]);
    for (std::size_t id : cls[c]) {
      plan.folds[slot].test_ids.push_back(id);
      slot = (slot + 1) % k;
    }
  }
  for (std::size_t f = 0; f < k; ++f) {
    FoldSpec &fold = plan.folds[f];
    fold.fold_id = f;
    std::sort(fold.test_ids.begin(), fold.test_ids.end());
    fold.train_ids.reserve(n - fold.test_ids.size());
    std::size_t t = 0;
    for (std::size_t i = 0; i < n; ++i) {
      if (t < fold.test_ids.size() && fold.test_ids[t] == i) {
        ++t;
        continue;
      }
      fold.train_ids.push_back(i);
    }
  }
  return plan;
}

FlipResult flip_labels(std::span<const int> labels, double fraction,
                       std::uint64_t seed) {
  if (!(fraction >= 0.0 && fraction <= 1.0))
    throw ConfigError("fraction", "flip fraction must lie in [0, 1]");
  const std::size_t n = labels.size();
  const auto count = static_cast<std::size_t>(
      std::llround(fraction * static_cast<double>(n)));

  FlipResult out;
  out.labels.assign(labels.begin(), labels.end());
  out.mask.assign(n, 0);
  std::vector<std::size_t> order(n);
  for (std::size_t i = 0; i < n; ++i)
    order[i] = i;
  Rng rng(seed);
  for (std::size_t i = 0; i < count; ++i) {
    const std::size_t j = i + static_cast<std::size_t>(rng.below(n - i));
    std::swap(order[i], order[j]);
    out.mask[order[i]] = 1;
    out.labels[order[i]] = 1 - out.labels[order[i]];
  }
  out.flipped = count;
  return out;
}

}  // namespace molftp
