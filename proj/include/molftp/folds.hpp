//
// molftp - Copyright 2026 The molftp Authors.
// SPDX-License-Identifier: Apache-2.0
//

#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

#include "molftp/leakage.hpp"

namespace molftp {

struct CvPlan {
  std::size_t k = 0;
  std::uint64_t seed = 0;
  std::vector<FoldSpec> folds;
};

/// Stratified k-fold split. Each class is shuffled with `seed` and dealt
/// round-robin, continuing the rotation across classes so fold sizes differ
/// by at most one. k equal to the dataset size yields the leave-one-out plan.
/// Throws ConfigError("cv_k") for k < 2 or k above the dataset size, and
/// DataError when a class has fewer than k members (except for k = N).
CvPlan stratified_folds(std::span<const int> labels, std::size_t k,
                        std::uint64_t seed);

struct FlipResult {
  std::vector<int> labels;
  std::vector<char> mask;  // 1 where the label was inverted
  std::size_t flipped = 0;
};

/// Inverts exactly round(fraction * N) labels chosen uniformly by seed.
/// Throws ConfigError("fraction") outside [0, 1].
FlipResult flip_labels(std::span<const int> labels, double fraction,
                       std::uint64_t seed);

}  // namespace molftp
