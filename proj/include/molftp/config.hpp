//
// molftp - Copyright 2026 The molftp Authors.
// SPDX-License-Identifier: Apache-2.0
//

#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "molftp/prevalence.hpp"
#include "molftp/score_map.hpp"
#include "molftp/vectorizer.hpp"

namespace molftp {

enum class LeakageMode { kDummyMask, kKeyLoo, kTrainOnly, kNone };

std::string_view to_string(LeakageMode m);
std::optional<LeakageMode> parse_leakage(std::string_view name);

std::string_view to_string(CountMode m);
std::optional<CountMode> parse_count_mode(std::string_view name);

std::optional<Order> parse_order(std::string_view name);

struct PipelineConfig {
  int radius = 6;
  double sim_threshold = 0.5;
  int sim_radius = 2;
  CountMode mode = CountMode::kPresence;
  std::string stat_1d = "fisher_onetailed";
  std::string stat_3d = "binomial";
  Pooling pooling = Pooling::kMarginCount;
  double gate = 0.0;
  std::vector<Order> views = { Order::k1D, Order::k2D, Order::k3D };
  LeakageMode leakage = LeakageMode::kKeyLoo;
  int loo_k = 2;
  std::optional<double> loo_s;    // (N-1)/N when unset
  std::optional<double> c_alpha;  // 2 log2((1+alpha)/alpha) when unset
  double alpha = kHaldaneAlpha;
  int cv_k = 10;
  std::uint64_t seed = 0;
  std::vector<std::string> extra_feature_columns;
  int triplet_cap = 10;
  double l2 = 1.0;
  double tol = 1e-8;
  int max_iter = 1000;
  double threshold = 0.5;

  friend bool operator==(const PipelineConfig &, const PipelineConfig &) = default;
};

/// Throws ConfigError naming the first out-of-range key.
void validate(const PipelineConfig &cfg);

/// Parses a JSON object. Missing keys take defaults; unknown keys, wrong
/// types and out-of-range values throw ConfigError.
PipelineConfig parse_config(std::string_view json_text);
PipelineConfig load_config_file(const std::string &path);

/// Single-line JSON with every key, in a fixed order.
std::string serialize_config(const PipelineConfig &cfg);

/// Every config key, as accepted by parse_config.
const std::vector<std::string> &config_keys();

}  // namespace molftp
