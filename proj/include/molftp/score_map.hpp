//
// molftp - Copyright 2026 The molftp Authors.
// SPDX-License-Identifier: Apache-2.0
//

#pragma once

#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

#include "molftp/fragments.hpp"

namespace molftp {

enum class Order { k1D = 0, k2D = 1, k3D = 2 };

std::string_view to_string(Order order);

struct ScoreEntry {
  FragmentKey key;
  double score = 0.0;
  int depth = 0;
  std::uint32_t support = 0;  // molecules containing the key
};

/// Signed per-key scores for one interaction order, sorted by key.
class ScoreMap {
public:
  ScoreMap() = default;
  ScoreMap(Order order, std::string stat_variant)
      : order_(order), stat_variant_(std::move(stat_variant)) { }

  Order order() const noexcept { return order_; }
  const std::string &stat_variant() const noexcept { return stat_variant_; }

  const std::vector<ScoreEntry> &entries() const noexcept { return entries_; }
  std::vector<ScoreEntry> &mutable_entries() noexcept { return entries_; }
  std::size_t size() const noexcept { return entries_.size(); }
  bool empty() const noexcept { return entries_.empty(); }

  // Entries must be appended in strictly increasing key order.
  void push_back(const ScoreEntry &entry);

  const ScoreEntry *find(FragmentKey key) const;
  // 0 for keys without an entry.
  double score(FragmentKey key) const;

private:
  Order order_ = Order::k1D;
  std::string stat_variant_;
  std::vector<ScoreEntry> entries_;
};

}  // namespace molftp
