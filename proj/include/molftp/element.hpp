//
// molftp - Copyright 2026 The molftp Authors.
// SPDX-License-Identifier: Apache-2.0
//

#pragma once

#include <span>
#include <string_view>

namespace molftp {

struct ElementInfo {
  int atomic_number;
  std::string_view symbol;
  double mass;
  // Allowed valences in increasing order; empty outside the organic subset.
  std::span<const int> valences;
};

// Lookup by exact (case-sensitive) symbol. Returns nullptr when unknown.
const ElementInfo *find_element(std::string_view symbol);
const ElementInfo &element_by_number(int atomic_number);

bool is_organic_subset(std::string_view symbol);

}  // namespace molftp
