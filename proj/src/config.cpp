//
// molftp - Copyright 2026 The molftp Authors.
// SPDX-License-Identifier: Apache-2.0
//

#include "molftp/config.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <sstream>

#include <json.hpp>

#include "molftp/error.hpp"
#include "molftp/metakeys.hpp"

namespace molftp {

using json = nlohmann::ordered_json;

std::string_view to_string(LeakageMode m) {
  switch (m) {
  case LeakageMode::kDummyMask: return "dummy_mask";
  case LeakageMode::kKeyLoo: return "key_loo";
  case LeakageMode::kTrainOnly: return "train_only";
  case LeakageMode::kNone: return "none";
  }
  return "?";
}

std::optional<LeakageMode> parse_leakage(std::string_view name) {
  for (LeakageMode m : { LeakageMode::kDummyMask, LeakageMode::kKeyLoo,
                         LeakageMode::kTrainOnly, LeakageMode::kNone }) {
    if (to_string(m) == name)
      return m;
  }
  return std::nullopt;
}

std::string_view to_string(CountMode m) {
  return m == CountMode::kPresence ? "presence" : "count";
}

std::optional<CountMode> parse_count_mode(std::string_view name) {
  if (name == "presence")
    return CountMode::kPresence;
  if (name == "count")
    return CountMode::kCount;
  return std::nullopt;
}

std::optional<Order> parse_order(std::string_view name) {
  for (Order o : { Order::k1D, Order::k2D, Order::k3D }) {
    if (to_string(o) == name)
      return o;
  }
  return std::nullopt;
}

const std::vector<std::string> &config_keys() {
  static const std::vector<std::string> keys = {
    "radius",  "sim_threshold", "sim_radius", "mode",
    "stat_1d", "stat_3d",       "pooling",    "gate",
    "views",   "leakage",       "loo_k",      "loo_s",
    "c_alpha", "alpha",         "cv_k",       "seed",
    "extra_feature_columns",    "triplet_cap", "l2",
    "tol",     "max_iter",      "threshold",
  };
  return keys;
}

namespace {

bool finite(double v) { return std::isfinite(v); }

void require(bool ok, const char *key, const char *what) {
  if (!ok)
    throw ConfigError(key, what);
}

}  // namespace

void validate(const PipelineConfig &c) {
  require(c.radius >= 0 && c.radius <= 16, "radius", "must be in [0, 16]");
  require(finite(c.sim_threshold) && c.sim_threshold > 0.0 && c.sim_threshold <= 1.0,
          "sim_threshold", "must be in (0, 1]");
  require(c.sim_radius >= 0 && c.sim_radius <= c.radius, "sim_radius",
          "must be in [0, radius]");
  require(c.stat_1d == kStatFisher || c.stat_1d == kStatChi2, "stat_1d",
          "must be fisher_onetailed or chi2");
  require(c.stat_3d == kStatBinomial || c.stat_3d == kStatFriedman, "stat_3d",
          "must be binomial or friedman");
  require(finite(c.gate) && c.gate >= 0.0, "gate", "must be a finite value >= 0");
  require(!c.views.empty(), "views", "must name at least one of 1D, 2D, 3D");
  for (std::size_t i = 0; i < c.views.size(); ++i) {
    for (std::size_t j = i + 1; j < c.views.size(); ++j)
      require(c.views[i] != c.views[j], "views", "must not repeat a view");
  }
  require(c.loo_k >= 1, "loo_k", "must be >= 1");
  if (c.loo_s)
    require(finite(*c.loo_s) && *c.loo_s > 0.0 && *c.loo_s <= 1.0, "loo_s",
            "must be in (0, 1]");
  if (c.c_alpha)
    require(finite(*c.c_alpha) && *c.c_alpha > 0.0, "c_alpha", "must be > 0");
  require(finite(c.alpha) && c.alpha > 0.0, "alpha", "must be > 0");
  require(c.cv_k >= 2, "cv_k", "must be >= 2");
  require(c.triplet_cap >= 1, "triplet_cap", "must be >= 1");
  require(finite(c.l2) && c.l2 >= 0.0, "l2", "must be a finite value >= 0");
  require(finite(c.tol) && c.tol > 0.0, "tol", "must be > 0");
  require(c.max_iter >= 1, "max_iter", "must be >= 1");
  require(finite(c.threshold) && c.threshold >= 0.0 && c.threshold <= 1.0,
          "threshold", "must be in [0, 1]");
}

namespace {

template <class T>
T get(const json &j, const char *key) {
  try {
    return j.get<T>();
  } catch (const json::exception &) {
    throw ConfigError(key, "has the wrong type");
  }
}

int get_int(const json &j, const char *key) {
  if (!j.is_number_integer())
    throw ConfigError(key, "must be an integer");
  const auto v = j.get<std::int64_t>();
  if (v < INT32_MIN || v > INT32_MAX)
    throw ConfigError(key, "is out of range");
  return static_cast<int>(v);
}

double get_double(const json &j, const char *key) {
  if (!j.is_number())
    throw ConfigError(key, "must be a number");
  return j.get<double>();
}

std::string get_string(const json &j, const char *key) {
  if (!j.is_string())
    throw ConfigError(key, "must be a string");
  return j.get<std::string>();
}

}  // namespace

PipelineConfig parse_config(std::string_view text) {
  json j;
  try {
    j = json::parse(text.begin(), text.end(), nullptr, true, true);
  } catch (const json::parse_error &e) {
    throw ConfigError("config", std::string("malformed JSON: ") + e.what());
  }
  if (j.is_null())
    j = json::object();
  if (!j.is_object())
    throw ConfigError("config", "must be a JSON object");

  const auto &known = config_keys();
  for (const auto &item : j.items()) {
    if (std::find(known.begin(), known.end(), item.key()) == known.end())
      throw ConfigError(item.key(), "unknown configuration key");
  }

  PipelineConfig c;
  auto has = [&](const char *k) { return j.contains(k); };
  if (has("radius"))
    c.radius = get_int(j["radius"], "radius");
  if (has("sim_threshold"))
    c.sim_threshold = get_double(j["sim_threshold"], "sim_threshold");
  if (has("sim_radius"))
    c.sim_radius = get_int(j["sim_radius"], "sim_radius");
  if (has("mode")) {
    auto m = parse_count_mode(get_string(j["mode"], "mode"));
    if (!m)
      throw ConfigError("mode", "must be presence or count");
    c.mode = *m;
  }
  if (has("stat_1d"))
    c.stat_1d = get_string(j["stat_1d"], "stat_1d");
  if (has("stat_3d"))
    c.stat_3d = get_string(j["stat_3d"], "stat_3d");
  if (has("pooling")) {
    auto p = parse_pooling(get_string(j["pooling"], "pooling"));
    if (!p)
      throw ConfigError("pooling", "unknown pooling operator");
    c.pooling = *p;
  }
  if (has("gate"))
    c.gate = get_double(j["gate"], "gate");
  if (has("views")) {
    if (!j["views"].is_array())
      throw ConfigError("views", "must be a list");
    c.views.clear();
    for (const auto &v : j["views"]) {
      auto o = parse_order(get_string(v, "views"));
      if (!o)
        throw ConfigError("views", "entries must be 1D, 2D or 3D");
      c.views.push_back(*o);
    }
  }
  if (has("leakage")) {
    auto m = parse_leakage(get_string(j["leakage"], "leakage"));
    if (!m)
      throw ConfigError("leakage", "must be dummy_mask, key_loo, train_only or none");
    c.leakage = *m;
  }
  if (has("loo_k"))
    c.loo_k = get_int(j["loo_k"], "loo_k");
  if (has("loo_s") && !j["loo_s"].is_null())
    c.loo_s = get_double(j["loo_s"], "loo_s");
  if (has("c_alpha") && !j["c_alpha"].is_null())
    c.c_alpha = get_double(j["c_alpha"], "c_alpha");
  if (has("alpha"))
    c.alpha = get_double(j["alpha"], "alpha");
  if (has("cv_k"))
    c.cv_k = get_int(j["cv_k"], "cv_k");
  if (has("seed")) {
    if (!j["seed"].is_number_unsigned())
      throw ConfigError("seed", "must be a non-negative integer");
    c.seed = get<std::uint64_t>(j["seed"], "seed");
  }
  if (has("extra_feature_columns")) {
    if (!j["extra_feature_columns"].is_array())
      throw ConfigError("extra_feature_columns", "must be a list");
    for (const auto &v : j["extra_feature_columns"])
      c.extra_feature_columns.push_back(get_string(v, "extra_feature_columns"));
  }
  if (has("triplet_cap"))
    c.triplet_cap = get_int(j["triplet_cap"], "triplet_cap");
  if (has("l2"))
    c.l2 = get_double(j["l2"], "l2");
  if (has("tol"))
    c.tol = get_double(j["tol"], "tol");
  if (has("max_iter"))
    c.max_iter = get_int(j["max_iter"], "max_iter");
  if (has("threshold"))
    c.threshold = get_double(j["threshold"], "threshold");
  validate(c);
  return c;
}

PipelineConfig load_config_file(const std::string &path) {
  std::ifstream in(path);
  if (!in)
    throw ConfigError("config", "cannot open " + path);
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse_config(buf.str());
}

std::string serialize_config(const PipelineConfig &c) {
  json j;
  j["radius"] = c.radius;
  j["sim_threshold"] = c.sim_threshold;
  j["sim_radius"] = c.sim_radius;
  j["mode"] = to_string(c.mode);
  j["stat_1d"] = c.stat_1d;
  j["stat_3d"] = c.stat_3d;
  j["pooling"] = to_string(c.pooling);
  j["gate"] = c.gate;
  json views = json::array();
  for (Order o : c.views)
    views.push_back(to_string(o));
  j["views"] = views;
  j["leakage"] = to_string(c.leakage);
  j["loo_k"] = c.loo_k;
  j["loo_s"] = c.loo_s ? json(*c.loo_s) : json(nullptr);
  j["c_alpha"] = c.c_alpha ? json(*c.c_alpha) : json(nullptr);
  j["alpha"] = c.alpha;
  j["cv_k"] = c.cv_k;
  j["seed"] = c.seed;
  j["extra_feature_columns"] = c.extra_feature_columns;
  j["triplet_cap"] = c.triplet_cap;
  j["l2"] = c.l2;
  j["tol"] = c.tol;
  j["max_iter"] = c.max_iter;
  j["threshold"] = c.threshold;
  return j.dump();
}

}  // namespace molftp
