//
// molftp - Copyright 2026 The molftp Authors.
// SPDX-License-Identifier: Apache-2.0
//

#include "molftp/similarity.hpp"

#include <algorithm>
#include <stdexcept>

#include "molftp/parallel.hpp"

namespace molftp {

KeySetFingerprint key_fingerprint(const FragmentIndex &index, int sim_radius) {
  if (sim_radius < 0 || sim_radius > index.radius)
    throw std::invalid_argument("sim_radius must lie in [0, enumeration radius]");
  KeySetFingerprint fp;
  fp.molecule_id = index.molecule_id;
  for (const KeyOccurrence &k : index.keys) {
    if (k.depth <= sim_radius)
      fp.keys.push_back(k.key);
  }
  return fp;
}

namespace {

std::size_t intersection_size(const std::vector<FragmentKey> &a,
                              const std::vector<FragmentKey> &b) {
  std::size_t n = 0;
  auto ia = a.begin();
  auto ib = b.begin();
  while (ia != a.end() && ib != b.end()) {
    if (*ia < *ib) {
      ++ia;
    } else if (*ib < *ia) {
      ++ib;
    } else {
      ++n;
      ++ia;
      ++ib;
    }
  }
  return n;
}

}  // namespace

double tanimoto(const KeySetFingerprint &a, const KeySetFingerprint &b) {
  const std::size_t inter = intersection_size(a.keys, b.keys);
  const std::size_t uni = a.keys.size() + b.keys.size() - inter;
  if (uni == 0)
    return 0.0;
  return static_cast<double>(inter) / static_cast<double>(uni);
}

std::vector<SimilarPair> similar_pairs(std::span<const KeySetFingerprint> fps,
                                       double tau, PairSearchStats *stats) {
  if (!(tau >= 0.0 && tau <= 1.0))
    throw std::invalid_argument("tau must lie in [0, 1]");

  const std::size_t n = fps.size();
  std::vector<std::vector<SimilarPair>> rows(n);
  std::vector<std::size_t> pruned(n, 0);

  parallel_for(
      n,
      [&](std::size_t i) {
        const std::size_t si = fps[i].keys.size();
        for (std::size_t j = i + 1; j < n; ++j) {
          const std::size_t sj = fps[j].keys.size();
          const std::size_t lo = std::min(si, sj);
          const std::size_t hi = std::max(si, sj);
          // |a∩b|/|a∪b| <= min/max; skip when that ceiling is below tau.
          // Same rounded division as tanimoto(), so the skip is exact.
          if (hi > 0 &&
              static_cast<double>(lo) / static_cast<double>(hi) < tau) {
            ++pruned[i];
            continue;
          }
          const double sim = tanimoto(fps[i], fps[j]);
          if (sim >= tau) {
            auto a = fps[i].molecule_id;
            auto b = fps[j].molecule_id;
            if (b < a)
              std::swap(a, b);
            rows[i].push_back({ a, b, sim });
          }
        }
      },
      8);

  std::vector<SimilarPair> out;
  for (auto &r : rows)
    out.insert(out.end(), r.begin(), r.end());
  std::sort(out.begin(), out.end(), [](const SimilarPair &l, const SimilarPair &r) {
    return l.i != r.i ? l.i < r.i : l.j < r.j;
  });
  if (stats != nullptr) {
    stats->empty_fingerprints = static_cast<std::size_t>(
        std::count_if(fps.begin(), fps.end(),
                      [](const KeySetFingerprint &f) { return f.keys.empty(); }));
    stats->candidates_pruned = 0;
    for (std::size_t p : pruned)
      stats->candidates_pruned += p;
  }
  return out;
}

}  // namespace molftp
