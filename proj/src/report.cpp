//
// molftp - Copyright 2026 The molftp Authors.
// SPDX-License-Identifier: Apache-2.0
//

#include "molftp/report.hpp"

#include <charconv>
#include <cstdio>
#include <ostream>

#include <json.hpp>

namespace molftp {

using json = nlohmann::ordered_json;

std::vector<std::string> provenance(const PipelineConfig &cfg, std::string_view command) {
  return { "molftp " + std::string(kVersion) + " " + std::string(command),
           "config " + serialize_config(cfg) };
}

std::string key_hex(FragmentKey key) {
  char buf[24];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(key.value));
  return buf;
}

std::string format_double(double v) {
  char buf[40];
  auto [ptr, ec] = std::to_chars(buf, buf + sizeof buf, v);
  return std::string(buf, ptr);
}

void write_comments(std::ostream &out, const std::vector<std::string> &lines) {
  for (const std::string &l : lines)
    out << "# " << l << '\n';
}

void write_vectors(std::ostream &out, const FeaturizeResult &res,
                   const std::vector<std::string> &header) {
  write_comments(out, header);
  out << "molecule_id,label";
  for (const std::string &c : res.features.columns)
    out << ',' << c;
  out << '\n';
  const std::size_t w = res.features.width;
  for (std::size_t r = 0; r < res.rows.size(); ++r) {
    out << res.rows[r] << ',' << res.labels[r];
    for (std::size_t c = 0; c < w; ++c)
      out << ',' << format_double(res.features.values[r * w + c]);
    out << '\n';
  }
}

void write_scores(std::ostream &out, const ScoreBundle &bundle,
                  const std::vector<ScoreMap> &raw_maps,
                  const std::vector<std::string> &header) {
  write_comments(out, header);
  out << "order,key,depth,support,a,b,c,d,w,raw_score,score\n";
  for (std::size_t m = 0; m < bundle.maps.size(); ++m) {
    const ScoreMap &map = bundle.maps[m];
    const ScoreMap &raw = raw_maps.at(m);
    for (std::size_t i = 0; i < map.size(); ++i) {
      const ScoreEntry &e = map.entries()[i];
      out << to_string(map.order()) << ',' << key_hex(e.key) << ',' << e.depth << ','
          << e.support;
      const KeyTable *kt = bundle.tables.find(e.key);
      if (map.order() == Order::k1D && kt != nullptr) {
        out << ',' << kt->table.a << ',' << kt->table.b << ',' << kt->table.c << ','
            << kt->table.d << ',' << format_double(log_odds(kt->table));
      } else {
        out << ",,,,,";
      }
      out << ',' << format_double(raw.entries()[i].score) << ','
          << format_double(e.score) << '\n';
    }
  }
}

namespace {

json fold_json(const FoldMetrics &m) {
  json j;
  j["n"] = m.n;
  j["positives"] = m.positives;
  j["auroc"] = m.auroc ? json(*m.auroc) : json(nullptr);
  j["auprc"] = m.auprc ? json(*m.auprc) : json(nullptr);
  j["precision"] = m.precision;
  j["recall"] = m.recall;
  j["f1"] = m.f1;
  j["accuracy"] = m.accuracy;
  return j;
}

json summary_json(const MetricSummary &s) {
  return json{ { "mean", s.mean }, { "std", s.std }, { "folds", s.folds } };
}

}  // namespace

void write_metrics_json(std::ostream &out, const CvResult &res, const PipelineConfig &cfg) {
  json j;
  j["tool"] = "molftp " + std::string(kVersion);
  j["config"] = json::parse(serialize_config(cfg));
  j["leakage"] = to_string(cfg.leakage);
  if (cfg.leakage == LeakageMode::kNone)
    j["note"] = "leaky baseline: scores use held-out labels";
  j["molecules"] = res.labels.size();
  j["failed_rows"] = res.failures.size();
  j["folds"] = res.plan.k;
  json summary;
  summary["auroc"] = res.report.auroc ? summary_json(*res.report.auroc) : json(nullptr);
  summary["auprc"] = res.report.auprc ? summary_json(*res.report.auprc) : json(nullptr);
  summary["precision"] = summary_json(res.report.precision);
  summary["recall"] = summary_json(res.report.recall);
  summary["f1"] = summary_json(res.report.f1);
  summary["accuracy"] = summary_json(res.report.accuracy);
  j["summary"] = summary;
  j["pooled"] = fold_json(res.report.pooled);
  json folds = json::array();
  for (const FoldMetrics &m : res.report.per_fold)
    folds.push_back(fold_json(m));
  j["per_fold"] = folds;
  j["warnings"] = res.warnings;
  out << j.dump(2) << '\n';
}

void write_metrics_folds(std::ostream &out, const CvResult &res,
                         const std::vector<std::string> &header) {
  write_comments(out, header);
  out << "fold,n,positives,auroc,auprc,precision,recall,f1,accuracy\n";
  for (std::size_t f = 0; f < res.report.per_fold.size(); ++f) {
    const FoldMetrics &m = res.report.per_fold[f];
    out << f << ',' << m.n << ',' << m.positives << ','
        << (m.auroc ? format_double(*m.auroc) : "") << ','
        << (m.auprc ? format_double(*m.auprc) : "") << ',' << format_double(m.precision)
        << ',' << format_double(m.recall) << ',' << format_double(m.f1) << ','
        << format_double(m.accuracy) << '\n';
  }
}

std::string bound_summary(const BoundReport &r) {
  char buf[200];
  std::snprintf(buf, sizeof buf,
                "fraction_within=%.6f fraction_within_weighted=%.6f keys=%zu k=%d s=%.9g "
                "c_alpha=%.9g molecules=%zu",
                r.fraction_within, r.fraction_within_weighted, r.rows.size(), r.k, r.s, r.c_alpha, r.molecules);
  return buf;
}

void write_bound_report(std::ostream &out, const BoundReport &r,
                        const std::vector<std::string> &header) {
  write_comments(out, header);
  out << "# summary " << bound_summary(r) << '\n';
  out << "key,support,w,w_key_loo,w_true_loo,deviation,bound,within\n";
  for (const BoundRow &row : r.rows) {
    out << key_hex(row.key) << ',' << row.support << ',' << format_double(row.w) << ','
        << format_double(row.w_key_loo) << ',' << format_double(row.w_true_loo) << ','
        << format_double(row.deviation) << ',' << format_double(row.bound) << ','
        << (row.within ? 1 : 0) << '\n';
  }
}

void write_failures(std::ostream &err, const std::vector<RowFailure> &failures) {
  for (const RowFailure &f : failures)
    err << "line " << f.line << ": cannot parse '" << f.smiles << "': " << f.message << '\n';
}

}  // namespace molftp
