//
// molftp - Copyright 2026 The molftp Authors.
// SPDX-License-Identifier: Apache-2.0
//

#pragma once

#include <iosfwd>
#include <string>
#include <string_view>
#include <vector>

#include "molftp/config.hpp"
#include "molftp/leakage.hpp"
#include "molftp/pipeline.hpp"

namespace molftp {

inline constexpr std::string_view kVersion = "0.1.0";

/// "molftp <version> <command>" and "config <json>", written as '# ' lines
/// at the top of every output file.
std::vector<std::string> provenance(const PipelineConfig &cfg, std::string_view command);

std::string key_hex(FragmentKey key);

/// Shortest text that parses back to the same double.
std::string format_double(double v);

void write_comments(std::ostream &out, const std::vector<std::string> &lines);

/// molecule_id (dataset row), label, then one column per feature.
void write_vectors(std::ostream &out, const FeaturizeResult &res,
                   const std::vector<std::string> &header);

/// Per-key statistics of every map, plus the 1D table cells.
void write_scores(std::ostream &out, const ScoreBundle &bundle,
                  const std::vector<ScoreMap> &raw_maps,
                  const std::vector<std::string> &header);

void write_metrics_json(std::ostream &out, const CvResult &res, const PipelineConfig &cfg);

void write_metrics_folds(std::ostream &out, const CvResult &res,
                         const std::vector<std::string> &header);

std::string bound_summary(const BoundReport &r);

void write_bound_report(std::ostream &out, const BoundReport &r,
                        const std::vector<std::string> &header);

void write_failures(std::ostream &err, const std::vector<RowFailure> &failures);

}  // namespace molftp
