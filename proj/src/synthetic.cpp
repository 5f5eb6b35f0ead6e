//
// molftp - Copyright 2026 The molftp Authors.
// SPDX-License-Identifier: Apache-2.0
//

#include "molftp/synthetic.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <cstdio>
#include <numeric>
#include <string>
#include <unordered_set>
#include <vector>

#include "molftp/element.hpp"
#include "molftp/error.hpp"
#include "molftp/folds.hpp"
#include "molftp/rng.hpp"
#include "molftp/smiles.hpp"

namespace molftp {

std::optional<SyntheticKind> parse_synthetic_kind(std::string_view name) {
  if (name == "corpus")
    return SyntheticKind::kCorpus;
  if (name == "leak")
    return SyntheticKind::kLeak;
  return std::nullopt;
}

double molecular_weight(const Molecule &mol) {
  constexpr double kHydrogen = 1.008;
  double mw = 0.0;
  for (const Atom &a : mol.atoms()) {
    mw += element_by_number(a.atomic_number).mass + kHydrogen * a.total_h();
  }
  return mw;
}

namespace {

// '{}' marks a substitution site; an empty substituent means hydrogen.
constexpr std::array kScaffolds = {
  "c1cc{}ccc1{}",        "c1c{}cc{}cc1",         "c1cc{}ncc1{}",
  "C1CC{}CCN1{}",        "C1CN{}CCN1{}",         "c1ccc2c(c1)cc{}n2{}",
  "C{}C(=O)NC{}",        "O=C(NC{})c1ccc{}cc1",  "c1csc{}c1{}",
  "C1CCC{}C1{}",         "c1ccc(cc1)C{}C{}",     "N{}C(=O)CC{}",
  "c1cc{}cc{}c1{}",      "C1CC{}OC{}C1",         "c1nc{}sc1{}",
  "CC{}(C)OC(=O)N{}",
};

struct Substituent {
  const char *smiles;
  double effect;
};

constexpr std::array kSubstituents = {
  Substituent{ "", 0.0 },
  Substituent{ "C", 0.1 },
  Substituent{ "CC", 0.3 },
  Substituent{ "F", 0.4 },
  Substituent{ "Cl", 1.2 },
  Substituent{ "Br", 1.0 },
  Substituent{ "O", -1.0 },
  Substituent{ "OC", 0.2 },
  Substituent{ "N", -0.8 },
  Substituent{ "C(F)(F)F", 1.4 },
  Substituent{ "C#N", -0.3 },
  Substituent{ "C(=O)O", -1.6 },
  Substituent{ "C(=O)N", -1.1 },
  Substituent{ "S(=O)(=O)C", -0.6 },
  Substituent{ "c1ccccc1", 1.1 },
  Substituent{ "C1CC1", 0.6 },
  Substituent{ "CO", -0.7 },
  Substituent{ "N(C)C", 0.5 },
  Substituent{ "OCC", 0.3 },
  Substituent{ "[N+](=O)[O-]", -0.9 },
};

// Element tags for the leak design. Any one tag is common; the unordered
// triple on a molecule is unique.
constexpr std::array kTags = {
  "[Li]", "[Be]", "[B]",  "[Na]", "[Mg]", "[Al]", "[Si]", "[K]",  "[Ca]", "[Ti]",
  "[V]",  "[Cr]", "[Mn]", "[Fe]", "[Co]", "[Ni]", "[Cu]", "[Zn]", "[Ga]", "[Ge]",
  "[As]", "[Se]", "[Rb]", "[Sr]", "[Zr]", "[Mo]", "[Ru]", "[Rh]", "[Pd]", "[Ag]",
  "[Cd]", "[In]", "[Sn]", "[Sb]", "[Te]", "[Cs]", "[Ba]", "[Hf]", "[W]",  "[Pt]",
};

std::string fill_sites(std::string_view tmpl, const std::vector<std::size_t> &subs) {
  std::string out;
  std::size_t site = 0;
  for (std::size_t i = 0; i < tmpl.size(); ++i) {
    if (tmpl[i] == '{' && i + 1 < tmpl.size() && tmpl[i + 1] == '}') {
      const char *s = kSubstituents[subs.at(site++)].smiles;
      if (*s != '\0') {
        out += '(';
        out += s;
        out += ')';
      }
      ++i;
    } else {
      out += tmpl[i];
    }
  }
  return out;
}

std::size_t site_count(std::string_view tmpl) {
  std::size_t n = 0;
  for (std::size_t i = 0; i + 1 < tmpl.size(); ++i) {
    if (tmpl[i] == '{' && tmpl[i + 1] == '}')
      ++n;
  }
  return n;
}

std::string format_number(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.6f", v);
  return buf;
}

void add_descriptors(Dataset &ds) {
  ds.extra_names = { "sqrt_mw", "sqrt_atoms", "sqrt_carbons" };
  ds.extras.clear();
  for (const std::string &s : ds.smiles) {
    const Molecule mol = parse_smiles(s);
    std::size_t carbons = 0;
    for (const Atom &a : mol.atoms())
      carbons += a.atomic_number == 6 ? 1 : 0;
    ds.extras.push_back({ format_number(std::sqrt(molecular_weight(mol))),
                          format_number(std::sqrt(static_cast<double>(mol.size()))),
                          format_number(std::sqrt(static_cast<double>(carbons))) });
  }
}

std::size_t max_unique(SyntheticKind kind) {
  if (kind == SyntheticKind::kLeak) {
    const std::size_t t = kTags.size();
    return (t + 2) * (t + 1) * t / 6 / 2;
  }
  std::size_t total = 0;
  for (const char *t : kScaffolds) {
    std::size_t combos = 1;
    for (std::size_t s = 0; s < site_count(t); ++s)
      combos *= kSubstituents.size();
    total += combos;
  }
  // Leaves room for rejection sampling to finish quickly.
  return total / 2;
}

Dataset corpus(const SyntheticOptions &opts, Rng &rng) {
  std::unordered_set<std::string> seen;
  std::vector<double> effect;
  Dataset ds;
  // Per-scaffold offsets keep scaffolds from being label-neutral.
  std::vector<double> offset(kScaffolds.size());
  for (double &o : offset)
    o = rng.uniform() - 0.5;

  while (ds.smiles.size() < opts.n) {
    const std::size_t sc = static_cast<std::size_t>(rng.below(kScaffolds.size()));
    const std::size_t sites = site_count(kScaffolds[sc]);
    std::vector<std::size_t> subs(sites);
    double e = offset[sc];
    for (std::size_t s = 0; s < sites; ++s) {
      subs[s] = static_cast<std::size_t>(rng.below(kSubstituents.size()));
      e += kSubstituents[subs[s]].effect;
    }
    std::string smi = fill_sites(kScaffolds[sc], subs);
    if (!seen.insert(smi).second)
      continue;
    ds.smiles.push_back(std::move(smi));
    effect.push_back(e);
  }

  std::vector<double> sorted = effect;
  std::sort(sorted.begin(), sorted.end());
  const auto negatives = static_cast<std::size_t>(
      std::llround((1.0 - opts.positive_rate) * static_cast<double>(opts.n)));
  const double cut = negatives == 0 ? -INFINITY
                     : negatives >= opts.n ? INFINITY
                                           : sorted[negatives - 1];
  for (double e : effect)
    ds.labels.push_back(e > cut ? 1 : 0);
  return ds;
}

Dataset leak(const SyntheticOptions &opts, Rng &rng) {
  static constexpr std::array kCores = { "c1ccccc1", "C1CCNCC1", "CC(=O)N",
                                         "c1ccncc1", "C1CCOC1", "CCOC(=O)" };
  std::unordered_set<std::string> seen;
  Dataset ds;
  while (ds.smiles.size() < opts.n) {
    std::array<std::size_t, 3> tag;
    for (std::size_t &t : tag)
      t = static_cast<std::size_t>(rng.below(kTags.size()));
    std::sort(tag.begin(), tag.end());
    std::string barcode = std::string("C(C") + kTags[tag[0]] + ")(C" + kTags[tag[1]] +
                          ")C" + kTags[tag[2]];
    if (!seen.insert(barcode).second)
      continue;
    ds.smiles.push_back(std::string(kCores[rng.below(kCores.size())]) + barcode);
  }
  ds.labels.assign(opts.n, 0);
  std::vector<std::size_t> order(opts.n);
  std::iota(order.begin(), order.end(), std::size_t{ 0 });
  rng.shuffle(order);
  for (std::size_t i = 0; i < opts.n / 2; ++i)
    ds.labels[order[i]] = 1;
  return ds;
}

}  // namespace

Dataset generate_synthetic(const SyntheticOptions &opts) {
  if (opts.n < 2)
    throw ConfigError("n", "synthetic datasets need at least 2 molecules");
  if (opts.n > max_unique(opts.kind))
    throw ConfigError("n", "too many molecules for the synthetic design");
  if (!(opts.noise >= 0.0 && opts.noise <= 1.0))
    throw ConfigError("noise", "must lie in [0, 1]");
  if (!(opts.positive_rate >= 0.0 && opts.positive_rate <= 1.0))
    throw ConfigError("positive_rate", "must lie in [0, 1]");

  Rng rng(opts.seed);
  Dataset ds = opts.kind == SyntheticKind::kCorpus ? corpus(opts, rng) : leak(opts, rng);
  if (opts.kind == SyntheticKind::kCorpus && opts.noise > 0.0) {
    const FlipResult f = flip_labels(ds.labels, opts.noise, rng.next());
    ds.labels = f.labels;
  }
  add_descriptors(ds);
  ds.line_numbers.resize(ds.size());
  std::iota(ds.line_numbers.begin(), ds.line_numbers.end(), std::size_t{ 2 });
  return ds;
}

}  // namespace molftp
