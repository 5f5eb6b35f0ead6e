//
// molftp - Copyright 2026 The molftp Authors.
// SPDX-License-Identifier: Apache-2.0
//

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "molftp/config.hpp"
#include "molftp/dataset.hpp"
#include "molftp/error.hpp"
#include "molftp/folds.hpp"
#include "molftp/pipeline.hpp"
#include "molftp/report.hpp"
#include "molftp/synthetic.hpp"

namespace {

using json = nlohmann::ordered_json;

enum Exit { kOk = 0, kUsage = 1, kData = 2, kInternal = 3 };

// Command-line overrides of PipelineConfig keys. Flags use the key name
// with '_' replaced by '-'.
struct ConfigFlags {
  std::string config_file;
  std::optional<int> radius, sim_radius, loo_k, cv_k, triplet_cap, max_iter;
  std::optional<double> sim_threshold, gate, loo_s, c_alpha, alpha, l2, tol, threshold;
  std::optional<std::string> mode, stat_1d, stat_3d, pooling, leakage;
  std::optional<std::uint64_t> seed;
  std::vector<std::string> views, extra_feature_columns;

  void attach(CLI::App *app) {
    app->add_option("-c,--config", config_file, "JSON config file");
    app->add_option("--radius", radius, "Maximum fragment radius");
    app->add_option("--sim-threshold", sim_threshold, "Tanimoto threshold for pairs");
    app->add_option("--sim-radius", sim_radius, "Fragment radius used for similarity");
    app->add_option("--mode", mode, "presence or count");
    app->add_option("--stat-1d", stat_1d, "fisher_onetailed or chi2");
    app->add_option("--stat-3d", stat_3d, "binomial or friedman");
    app->add_option("--pooling", pooling,
                    "margin_count, max, mean, median, softmax or logsumexp");
    app->add_option("--gate", gate, "Atom score gate");
    app->add_option("--views", views, "Subset of 1D 2D 3D");
    app->add_option("--leakage", leakage, "dummy_mask, key_loo, train_only or none");
    app->add_option("--loo-k", loo_k, "Minimum key support for key-LOO");
    app->add_option("--loo-s", loo_s, "Key-LOO scale factor");
    app->add_option("--c-alpha", c_alpha, "Bound constant");
    app->add_option("--alpha", alpha, "Smoothing pseudo-count");
    app->add_option("--cv-k", cv_k, "Number of folds");
    app->add_option("--seed", seed, "Random seed");
    app->add_option("--extra-feature-columns", extra_feature_columns,
                    "Dataset columns appended to the vectors");
    app->add_option("--triplet-cap", triplet_cap, "Triplets kept per anchor");
    app->add_option("--l2", l2, "L2 penalty of the logistic model");
    app->add_option("--tol", tol, "Gradient-norm tolerance");
    app->add_option("--max-iter", max_iter, "Newton iteration limit");
    app->add_option("--threshold", threshold, "Probability threshold");
  }

  molftp::PipelineConfig resolve() const {
    json j = json::object();
    if (!config_file.empty()) {
      std::ifstream in(config_file);
      if (!in)
        throw molftp::ConfigError("config", "cannot open " + config_file);
      std::ostringstream buf;
      buf << in.rdbuf();
      // Validates the file on its own before flags are layered on top.
      j = json::parse(molftp::serialize_config(molftp::parse_config(buf.str())));
    }
    auto set = [&](const char *key, const auto &v) {
      if (v)
        j[key] = *v;
    };
    set("radius", radius);
    set("sim_threshold", sim_threshold);
    set("sim_radius", sim_radius);
    set("mode", mode);
    set("stat_1d", stat_1d);
    set("stat_3d", stat_3d);
    set("pooling", pooling);
    set("gate", gate);
    set("leakage", leakage);
    set("loo_k", loo_k);
    set("loo_s", loo_s);
    set("c_alpha", c_alpha);
    set("alpha", alpha);
    set("cv_k", cv_k);
    set("seed", seed);
    set("triplet_cap", triplet_cap);
    set("l2", l2);
    set("tol", tol);
    set("max_iter", max_iter);
    set("threshold", threshold);
    if (!views.empty())
      j["views"] = views;
    if (!extra_feature_columns.empty())
      j["extra_feature_columns"] = extra_feature_columns;
    return molftp::parse_config(j.dump());
  }
};

std::ofstream open_out(const std::string &path) {
  std::ofstream out(path);
  if (!out)
    throw molftp::DataError("cannot write " + path);
  return out;
}

std::vector<std::size_t> read_ids(const std::string &path) {
  std::ifstream in(path);
  if (!in)
    throw molftp::DataError("cannot open " + path);
  std::vector<std::size_t> ids;
  std::string line;
  std::size_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (line.empty() || line.front() == '#')
      continue;
    try {
      std::size_t pos = 0;
      const unsigned long long v = std::stoull(line, &pos);
      if (line.find_first_not_of(" \t\r", pos) != std::string::npos)
        throw std::invalid_argument(line);
      ids.push_back(static_cast<std::size_t>(v));
    } catch (const std::exception &) {
      throw molftp::DataError(path + ":" + std::to_string(lineno) + ": not a row index");
    }
  }
  return ids;
}

int report_failures(const std::vector<molftp::RowFailure> &failures) {
  if (failures.empty())
    return kOk;
  molftp::write_failures(std::cerr, failures);
  std::cerr << failures.size() << " row(s) skipped\n";
  return kData;
}

}  // namespace

int main(int argc, char **argv) {
  CLI::App app{ "Fragment-target prevalence featurization with leakage control" };
  app.require_subcommand(1);
  app.set_version_flag("--version", std::string(molftp::kVersion));

  std::string input;
  std::string output;

  ConfigFlags feat_flags;
  std::string test_ids_file, scores_file;
  auto *feat = app.add_subcommand("featurize", "Write molFTP vectors for a dataset");
  feat->add_option("-i,--input", input, "Dataset CSV (smiles,label[,extras])")->required();
  feat->add_option("-o,--output", output, "Vector CSV")->default_val("vectors.csv");
  feat->add_option("--test-ids", test_ids_file,
                   "File of held-out dataset rows (0-based), one per line");
  feat->add_option("--scores", scores_file, "Also write per-key score tables here");
  feat_flags.attach(feat);

  ConfigFlags cv_flags;
  std::string out_dir = ".";
  auto *cv = app.add_subcommand("cv", "Cross-validate a logistic model on molFTP vectors");
  cv->add_option("-i,--input", input, "Dataset CSV")->required();
  cv->add_option("-d,--out-dir", out_dir, "Directory for metrics.json and metrics_folds.csv");
  cv_flags.attach(cv);

  ConfigFlags audit_flags;
  auto *audit = app.add_subcommand("audit-loo", "Check key-LOO against exact fragment LOO");
  audit->add_option("-i,--input", input, "Dataset CSV")->required();
  audit->add_option("-o,--output", output, "Bound report CSV")->default_val("bound_report.csv");
  audit_flags.attach(audit);

  double fraction = 0.1;
  std::uint64_t flip_seed = 0;
  std::string mask_file;
  auto *flip = app.add_subcommand("flip", "Copy a dataset with a fraction of labels inverted");
  flip->add_option("-i,--input", input, "Dataset CSV")->required();
  flip->add_option("-o,--output", output, "Output dataset CSV")->required();
  flip->add_option("--fraction", fraction, "Fraction of labels to invert")->default_val(0.1);
  flip->add_option("--seed", flip_seed, "Random seed")->default_val(0);
  flip->add_option("--mask", mask_file, "Flip mask CSV (default: <output>.mask.csv)");

  molftp::SyntheticOptions syn;
  std::string kind = "corpus";
  auto *gen = app.add_subcommand("gen-synthetic", "Generate a synthetic dataset");
  gen->add_option("--kind", kind, "corpus or leak")->default_val("corpus");
  gen->add_option("-n,--molecules", syn.n, "Number of molecules")->default_val(2000);
  gen->add_option("--noise", syn.noise, "Fraction of labels flipped")->default_val(0.1);
  gen->add_option("--positive-rate", syn.positive_rate, "Corpus positive fraction")
      ->default_val(0.7);
  gen->add_option("--seed", syn.seed, "Random seed")->default_val(0);
  gen->add_option("-o,--output", output, "Output dataset CSV")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError &e) {
    const int code = app.exit(e);
    return code == 0 ? kOk : kUsage;
  }

  try {
    if (*feat) {
      const molftp::PipelineConfig cfg = feat_flags.resolve();
      const molftp::Dataset ds = molftp::load_dataset_file(input);
      std::optional<std::vector<std::size_t>> test_rows;
      if (!test_ids_file.empty())
        test_rows = read_ids(test_ids_file);
      const auto res = molftp::featurize(ds, cfg, test_rows ? &*test_rows : nullptr);
      const auto header = molftp::provenance(cfg, "featurize");
      auto out = open_out(output);
      molftp::write_vectors(out, res, header);
      if (!scores_file.empty()) {
        auto sout = open_out(scores_file);
        molftp::write_scores(sout, res.scores, res.raw_maps, header);
      }
      std::fprintf(stderr, "featurized %zu molecules in %.3f s (%.0f molecules/s)\n",
                   res.rows.size(), res.seconds, res.molecules_per_second);
      return report_failures(res.failures);
    }
    if (*cv) {
      const molftp::PipelineConfig cfg = cv_flags.resolve();
      const molftp::Dataset ds = molftp::load_dataset_file(input);
      const auto res = molftp::run_cv(ds, cfg);
      std::filesystem::create_directories(out_dir);
      const std::filesystem::path dir(out_dir);
      auto mj = open_out((dir / "metrics.json").string());
      molftp::write_metrics_json(mj, res, cfg);
      auto mf = open_out((dir / "metrics_folds.csv").string());
      molftp::write_metrics_folds(mf, res, molftp::provenance(cfg, "cv"));
      for (const std::string &w : res.warnings)
        std::cerr << "warning: " << w << '\n';
      const auto &r = res.report;
      auto num = [](const auto &v) {
        return v ? std::to_string(*v) : std::string("n/a");
      };
      std::printf("leakage=%s auroc=%s auprc=%s accuracy=%.4f pooled_auroc=%s "
                  "pooled_auprc=%s\n",
                  std::string(molftp::to_string(cfg.leakage)).c_str(),
                  r.auroc ? std::to_string(r.auroc->mean).c_str() : "n/a",
                  r.auprc ? std::to_string(r.auprc->mean).c_str() : "n/a",
                  r.accuracy.mean, num(r.pooled.auroc).c_str(), num(r.pooled.auprc).c_str());
      return report_failures(res.failures);
    }
    if (*audit) {
      const molftp::PipelineConfig cfg = audit_flags.resolve();
      const molftp::Dataset ds = molftp::load_dataset_file(input);
      const auto res = molftp::run_audit(ds, cfg);
      auto out = open_out(output);
      molftp::write_bound_report(out, res.report, molftp::provenance(cfg, "audit-loo"));
      std::printf("%s\n", molftp::bound_summary(res.report).c_str());
      return report_failures(res.failures);
    }
    if (*flip) {
      const molftp::Dataset ds = molftp::load_dataset_file(input);
      const auto f = molftp::flip_labels(ds.labels, fraction, flip_seed);
      molftp::Dataset flipped = ds;
      flipped.labels = f.labels;
      char note[128];
      std::snprintf(note, sizeof note, "molftp %s flip fraction=%.9g seed=%llu flips=%zu",
                    std::string(molftp::kVersion).c_str(), fraction,
                    static_cast<unsigned long long>(flip_seed), f.flipped);
      auto out = open_out(output);
      molftp::write_dataset(out, flipped, { note });
      if (mask_file.empty())
        mask_file = output + ".mask.csv";
      auto mout = open_out(mask_file);
      mout << "# " << note << "\nrow,flipped\n";
      for (std::size_t i = 0; i < f.mask.size(); ++i)
        mout << i << ',' << static_cast<int>(f.mask[i]) << '\n';
      std::printf("%zu of %zu labels flipped\n", f.flipped, ds.size());
      return kOk;
    }
    if (*gen) {
      auto k = molftp::parse_synthetic_kind(kind);
      if (!k)
        throw molftp::ConfigError("kind", "must be corpus or leak");
      syn.kind = *k;
      const molftp::Dataset ds = molftp::generate_synthetic(syn);
      char note[160];
      std::snprintf(note, sizeof note,
                    "molftp %s gen-synthetic kind=%s n=%zu noise=%.9g positive_rate=%.9g "
                    "seed=%llu",
                    std::string(molftp::kVersion).c_str(), kind.c_str(), syn.n, syn.noise,
                    syn.positive_rate, static_cast<unsigned long long>(syn.seed));
      auto out = open_out(output);
      molftp::write_dataset(out, ds, { note });
      return kOk;
    }
  } catch (const molftp::ConfigError &e) {
    std::cerr << "config error: " << e.what() << '\n';
    return kUsage;
  } catch (const molftp::InvariantError &e) {
    std::cerr << "internal error: " << e.what() << '\n';
    return kInternal;
  } catch (const molftp::Error &e) {
    std::cerr << "data error: " << e.what() << '\n';
    return kData;
  } catch (const std::exception &e) {
    std::cerr << "internal error: " << e.what() << '\n';
    return kInternal;
  }
  return kUsage;
}
