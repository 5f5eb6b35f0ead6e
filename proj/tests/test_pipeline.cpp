//
// molftp - Copyright 2026 The molftp Authors.
// SPDX-License-Identifier: Apache-2.0
//

#include <sys/wait.h>

#include <algorithm>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <set>
#include <sstream>

#include <doctest.h>

#include "molftp/config.hpp"
#include "molftp/dataset.hpp"
#include "molftp/error.hpp"
#include "molftp/pipeline.hpp"
#include "molftp/report.hpp"
#include "molftp/synthetic.hpp"

using namespace molftp;
namespace fs = std::filesystem;

namespace {

Dataset corpus(std::size_t n, std::uint64_t seed = 1) {
  SyntheticOptions opts;
  opts.n = n;
  opts.seed = seed;
  return generate_synthetic(opts);
}

fs::path scratch(const std::string &name) {
  const fs::path dir = fs::temp_directory_path() / ("molftp_test_" + name);
  fs::remove_all(dir);
  fs::create_directories(dir);
  return dir;
}

int run_cli(const std::string &args) {
  const std::string cmd = std::string(MOLFTP_CLI) + " " + args + " >/dev/null 2>&1";
  const int status = std::system(cmd.c_str());
  return WIFEXITED(status) ? WEXITSTATUS(status) : -1;
}

std::string slurp(const fs::path &p) {
  std::ifstream in(p);
  std::ostringstream s;
  s << in.rdbuf();
  return s.str();
}

std::string metrics_text(const CvResult &r, const PipelineConfig &cfg) {
  std::ostringstream out;
  write_metrics_json(out, r, cfg);
  write_metrics_folds(out, r, provenance(cfg, "cv"));
  return out.str();
}

}  // namespace

TEST_SUITE("pipeline") {

TEST_CASE("configuration defaults and validation") {
  const PipelineConfig d = parse_config("{}");
  CHECK(d == PipelineConfig{});
  CHECK(d.radius == 6);
  CHECK(d.leakage == LeakageMode::kKeyLoo);
  CHECK(d.views.size() == 3);
  CHECK(d.sim_threshold == 0.5);

  try {
    parse_config(R"({"radius": -1})");
    FAIL("negative radius accepted");
  } catch (const ConfigError &e) {
    CHECK(e.key() == "radius");
  }
  try {
    parse_config(R"({"radius": 6, "pooling_op": "max"})");
    FAIL("unknown key accepted");
  } catch (const ConfigError &e) {
    CHECK(e.key() == "pooling_op");
  }
  CHECK_THROWS_AS(parse_config(R"({"leakage": "sometimes"})"), ConfigError);
  CHECK_THROWS_AS(parse_config(R"({"views": ["4D"]})"), ConfigError);
  CHECK_THROWS_AS(parse_config("[1, 2]"), ConfigError);
  CHECK_THROWS_AS(parse_config("{ radius: "), ConfigError);
}

TEST_CASE("configuration round-trips through JSON") {
  PipelineConfig c;
  c.radius = 4;
  c.views = { Order::k1D, Order::k3D };
  c.leakage = LeakageMode::kDummyMask;
  c.loo_s = 0.9;
  c.pooling = Pooling::kSoftmax;
  c.extra_feature_columns = { "sqrt_mw" };
  c.seed = 12345;
  CHECK(parse_config(serialize_config(c)) == c);
  CHECK(parse_config(serialize_config(PipelineConfig{})) == PipelineConfig{});
  for (const std::string &key : config_keys())
    CHECK(serialize_config(c).find('"' + key + '"') != std::string::npos);
}

TEST_CASE("CSV records with quotes") {
  const auto f = split_csv_line(R"(a,"b,c","say ""hi""",)");
  REQUIRE(f.size() == 4);
  CHECK(f[1] == "b,c");
  CHECK(f[2] == "say \"hi\"");
  CHECK(f[3].empty());
  CHECK(csv_field("x,y") == "\"x,y\"");
  CHECK(csv_field("plain") == "plain");
  CHECK_THROWS_AS(split_csv_line("\"open"), DataError);

  std::istringstream in("\xEF\xBB\xBFsmiles,label,mw\r\n# note\n\nCCO,1,46.1\n\"C(C)O\",0.0,60\n");
  const Dataset ds = load_dataset(in);
  REQUIRE(ds.size() == 2);
  CHECK(ds.smiles[1] == "C(C)O");
  CHECK(ds.labels == std::vector<int>{ 1, 0 });
  CHECK(ds.line_numbers == std::vector<std::size_t>{ 4, 5 });
  CHECK(ds.extra_column("mw")[0] == doctest::Approx(46.1));
  CHECK_THROWS_AS(ds.extra_column("logp"), DataError);

  std::istringstream bad_label("smiles,label\nCC,2\n");
  CHECK_THROWS_AS(load_dataset(bad_label), DataError);
  std::istringstream no_label("smiles,y\nCC,1\n");
  CHECK_THROWS_AS(load_dataset(no_label), DataError);
  std::istringstream empty("smiles,label\n");
  CHECK_THROWS_AS(load_dataset(empty), DataError);
}

TEST_CASE("featurize produces one row per parsed molecule") {
  const Dataset ds = corpus(100);
  PipelineConfig cfg;
  const FeaturizeResult all = featurize(ds, cfg);
  CHECK(all.rows.size() == 100);
  CHECK(all.features.width == 27);
  CHECK(all.features.values.size() == 100 * 27);
  CHECK(all.features.columns.front() == "d1_margin");

  cfg.views = { Order::k1D };
  CHECK(featurize(ds, cfg).features.width == 9);

  cfg.extra_feature_columns = { "sqrt_mw", "sqrt_atoms" };
  const FeaturizeResult ex = featurize(ds, cfg);
  CHECK(ex.features.width == 11);
  CHECK(ex.features.columns.back() == "sqrt_atoms");

  cfg.extra_feature_columns = { "nope" };
  CHECK_THROWS_AS(featurize(ds, cfg), ConfigError);
}

TEST_CASE("an unparsable SMILES row is reported and skipped") {
  Dataset ds = corpus(40);
  ds.smiles[7] = "C1CC(";
  const FeaturizeResult r = featurize(ds, PipelineConfig{});
  REQUIRE(r.failures.size() == 1);
  CHECK(r.failures[0].row == 7);
  CHECK(r.failures[0].line == ds.line_numbers[7]);
  CHECK(r.rows.size() == 39);
  CHECK(std::find(r.rows.begin(), r.rows.end(), 7) == r.rows.end());
  CHECK(r.labels.size() == 39);
}

TEST_CASE("fold-dependent strategies need held-out rows") {
  const Dataset ds = corpus(60);
  PipelineConfig cfg;
  cfg.leakage = LeakageMode::kDummyMask;
  CHECK_THROWS_AS(featurize(ds, cfg), ConfigError);
  const std::vector<std::size_t> test = { 1, 5, 9 };
  const FeaturizeResult r = featurize(ds, cfg, &test);
  CHECK(r.rows.size() == 60);
  cfg.leakage = LeakageMode::kTrainOnly;
  const FeaturizeResult t = featurize(ds, cfg, &test);
  CHECK(t.scores.tables.molecules == 57);
  const std::vector<std::size_t> outside = { 600 };
  CHECK_THROWS_AS(featurize(ds, cfg, &outside), DataError);
}

TEST_CASE("cross-validation output is byte-identical for a fixed seed") {
  const Dataset ds = corpus(200, 3);
  PipelineConfig cfg;
  cfg.cv_k = 5;
  cfg.seed = 17;
  const std::string a = metrics_text(run_cv(ds, cfg), cfg);
  const std::string b = metrics_text(run_cv(ds, cfg), cfg);
  CHECK(a == b);
  cfg.seed = 18;
  CHECK(metrics_text(run_cv(ds, cfg), cfg) != a);
}

TEST_CASE("train_only reads only training rows") {
  const Dataset ds = corpus(150, 4);
  PipelineConfig cfg;
  cfg.cv_k = 5;
  cfg.leakage = LeakageMode::kTrainOnly;
  const CvResult r = run_cv(ds, cfg);
  REQUIRE(r.rows_read.size() == 5);
  for (std::size_t f = 0; f < 5; ++f) {
    const auto &train = r.plan.folds[f].train_ids;
    CHECK(r.rows_read[f].size() == train.size());
    for (std::size_t id : r.rows_read[f])
      CHECK(std::binary_search(train.begin(), train.end(), id));
  }
}

TEST_CASE("N-fold masking and key-LOO zero the same keys") {
  const Dataset ds = corpus(50, 5);
  PipelineConfig cfg;
  cfg.cv_k = 50;
  cfg.max_iter = 50;
  CvOptions opts;
  opts.keep_fold_maps = true;
  cfg.leakage = LeakageMode::kDummyMask;
  const CvResult dm = run_cv(ds, cfg, opts);
  cfg.leakage = LeakageMode::kKeyLoo;
  const CvResult kl = run_cv(ds, cfg, opts);

  PipelineConfig prep = cfg;
  const ParsedDataset parsed = parse_molecules(ds);
  const Corpus c = prepare_corpus(parsed.molecules, prep);
  REQUIRE(dm.plan.folds.size() == 50);
  const double s = 49.0 / 50.0;
  for (std::size_t f = 0; f < 50; ++f) {
    REQUIRE(dm.plan.folds[f].test_ids.size() == 1);
    const FragmentIndex &held = c.indexes[dm.plan.folds[f].test_ids[0]];
    for (std::size_t v = 0; v < 3; ++v) {
      std::set<FragmentKey> a, b;
      for (FragmentKey k : dm.zeroed_keys[f][v])
        if (held.contains(k))
          a.insert(k);
      for (FragmentKey k : kl.zeroed_keys[f][v])
        if (held.contains(k))
          b.insert(k);
      CHECK(a == b);
      const ScoreMap &md = dm.fold_maps[f][v];
      const ScoreMap &mk = kl.fold_maps[f][v];
      REQUIRE(md.size() == mk.size());
      for (std::size_t i = 0; i < md.size(); ++i) {
        const ScoreEntry &ed = md.entries()[i];
        if (!held.contains(ed.key) || ed.score == 0.0)
          continue;
        // Masking scales by (n-1)/n, key-LOO by (N-1)/N.
        const double n = static_cast<double>(ed.support);
        const double raw = ed.score * n / (n - 1.0);
        CHECK(mk.entries()[i].score == doctest::Approx(raw * s).epsilon(1e-12));
      }
    }
  }
}

TEST_CASE("audit covers every key") {
  const Dataset ds = corpus(120, 6);
  const AuditResult a = run_audit(ds, PipelineConfig{});
  CHECK(a.failures.empty());
  CHECK(a.report.molecules == 120);
  CHECK_FALSE(a.report.rows.empty());
  CHECK(bound_summary(a.report).find("fraction_within") != std::string::npos);
}

TEST_CASE("command line exit codes and outputs") {
  const fs::path dir = scratch("cli");
  const std::string data = (dir / "data.csv").string();
  CHECK(run_cli("gen-synthetic -n 80 --seed 2 -o " + data) == 0);
  CHECK(fs::exists(data));
  CHECK(run_cli("featurize -i " + data + " -o " + (dir / "v.csv").string() + " --scores " +
                (dir / "s.csv").string()) == 0);
  const std::string vec = slurp(dir / "v.csv");
  CHECK(vec.rfind("# molftp 0.1.0 featurize", 0) == 0);
  CHECK(vec.find("molecule_id,label,d1_margin") != std::string::npos);
  CHECK(fs::exists(dir / "s.csv"));

  CHECK(run_cli("cv -i " + data + " --cv-k 4 -d " + (dir / "cv").string()) == 0);
  CHECK(fs::exists(dir / "cv" / "metrics.json"));
  CHECK(fs::exists(dir / "cv" / "metrics_folds.csv"));
  CHECK(run_cli("audit-loo -i " + data + " -o " + (dir / "b.csv").string()) == 0);
  CHECK(run_cli("flip -i " + data + " -o " + (dir / "f.csv").string() + " --fraction 0.25") == 0);
  CHECK(fs::exists(dir / "f.csv.mask.csv"));

  CHECK(run_cli("") == 1);
  CHECK(run_cli("featurize") == 1);
  CHECK(run_cli("featurize -i " + data + " --radius -1 -o " + (dir / "x.csv").string()) == 1);
  CHECK(run_cli("featurize -i " + data + " --leakage dummy_mask -o " +
                (dir / "x.csv").string()) == 1);
  CHECK(run_cli("featurize -i " + (dir / "missing.csv").string()) == 2);

  std::ofstream(dir / "bad.csv") << "smiles,label\nCCO,1\nC1CC(,0\nCCN,0\nCCCl,1\n";
  CHECK(run_cli("featurize --views 1D -i " + (dir / "bad.csv").string() + " -o " +
                (dir / "bad_v.csv").string()) == 2);
  CHECK(fs::exists(dir / "bad_v.csv"));
  fs::remove_all(dir);
}

}  // TEST_SUITE
