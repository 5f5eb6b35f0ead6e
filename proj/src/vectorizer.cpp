//
// molftp - Copyright 2026 The molftp Authors.
// SPDX-License-Identifier: Apache-2.0
//

#include "molftp/vectorizer.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "molftp/parallel.hpp"

namespace molftp {

AtomScoreTable::AtomScoreTable(std::size_t atoms, int radius)
    : atoms_(atoms), radius_(radius) {
  if (radius < 0)
    throw std::invalid_argument("radius must be non-negative");
  cells_.assign(atoms * depths(), 0.0);
}

double AtomScoreTable::at(std::size_t atom, int depth) const {
  return cells_.at(atom * depths() + static_cast<std::size_t>(depth));
}

double &AtomScoreTable::at(std::size_t atom, int depth) {
  return cells_.at(atom * depths() + static_cast<std::size_t>(depth));
}

double AtomScoreTable::atom_total(std::size_t atom) const {
  double s = 0.0;
  for (int d = 0; d <= radius_; ++d)
    s += at(atom, d);
  return s;
}

std::vector<double> AtomScoreTable::atom_totals() const {
  std::vector<double> out(atoms_);
  for (std::size_t a = 0; a < atoms_; ++a)
    out[a] = atom_total(a);
  return out;
}

std::vector<double> AtomScoreTable::column(int depth) const {
  std::vector<double> out(atoms_);
  for (std::size_t a = 0; a < atoms_; ++a)
    out[a] = at(a, depth);
  return out;
}

AtomScoreTable atom_score_table(const FragmentIndex &index,
                                const ScoreMap &scores) {
  AtomScoreTable t(index.atom_count, index.radius);
  for (const FragmentHit &h : index.hits) {
    const double s = scores.score(h.key);
    if (s != 0.0)
      t.at(static_cast<std::size_t>(h.center), h.depth) += s * h.count;
  }
  return t;
}

namespace {

double gate_count(std::span<const double> s, double gate) {
  long long pos = 0;
  long long neg = 0;
  for (double v : s) {
    if (v >= gate)
      ++pos;
    if (v <= -gate)
      ++neg;
  }
  return static_cast<double>(pos - neg);
}

double lse(std::span<const double> v) {
  if (v.empty())
    return 0.0;
  const double m = *std::max_element(v.begin(), v.end());
  double sum = 0.0;
  for (double x : v)
    sum += std::exp(x - m);
  return m + std::log(sum);
}

}  // namespace

std::vector<double> margin_block(const AtomScoreTable &t, double gate) {
  if (t.atoms() == 0)
    throw std::invalid_argument("margin block of a molecule without atoms");
  if (gate < 0.0)
    throw std::invalid_argument("gate must be non-negative");
  const double n = static_cast<double>(t.atoms());
  std::vector<double> out;
  out.reserve(block_width(t.radius()));
  const auto totals = t.atom_totals();
  const double margin = gate_count(totals, gate);
  out.push_back(margin);
  out.push_back(margin / n);
  for (int d = 0; d <= t.radius(); ++d)
    out.push_back(gate_count(t.column(d), gate) / n);
  return out;
}

std::string_view to_string(Pooling p) {
  switch (p) {
  case Pooling::kMarginCount: return "margin_count";
  case Pooling::kMax: return "max";
  case Pooling::kMean: return "mean";
  case Pooling::kMedian: return "median";
  case Pooling::kSoftmax: return "softmax";
  case Pooling::kLogSumExp: return "logsumexp";
  }
  return "?";
}

std::optional<Pooling> parse_pooling(std::string_view name) {
  for (Pooling p : { Pooling::kMarginCount, Pooling::kMax, Pooling::kMean,
                     Pooling::kMedian, Pooling::kSoftmax, Pooling::kLogSumExp }) {
    if (to_string(p) == name)
      return p;
  }
  return std::nullopt;
}

double pool_scores(std::span<const double> s, Pooling op) {
  if (s.empty())
    return 0.0;
  switch (op) {
  case Pooling::kMax: {
    const double hi = std::max(*std::max_element(s.begin(), s.end()), 0.0);
    const double lo = std::min(*std::min_element(s.begin(), s.end()), 0.0);
    const double sum = hi + lo;
    if (sum == 0.0)
      return 0.0;
    return std::copysign(hi - lo, sum);
  }
  case Pooling::kMean: {
    double sum = 0.0;
    for (double v : s)
      sum += v;
    return sum / static_cast<double>(s.size());
  }
  case Pooling::kMedian: {
    std::vector<double> v(s.begin(), s.end());
    std::sort(v.begin(), v.end());
    const std::size_t mid = v.size() / 2;
    if (v.size() % 2 == 1)
      return v[mid];
    return 0.5 * (v[mid - 1] + v[mid]);
  }
  case Pooling::kSoftmax: {
    // Weights e^{|s|} keep the pool odd under s -> -s.
    double m = 0.0;
    for (double v : s)
      m = std::max(m, std::abs(v));
    double num = 0.0;
    double den = 0.0;
    for (double v : s) {
      const double w = std::exp(std::abs(v) - m);
      num += w * v;
      den += w;
    }
    return num / den;
  }
  case Pooling::kLogSumExp: {
    std::vector<double> pos;
    std::vector<double> neg;
    for (double v : s) {
      if (v > 0.0)
        pos.push_back(v);
      else if (v < 0.0)
        neg.push_back(-v);
    }
    return lse(pos) - lse(neg);
  }
  case Pooling::kMarginCount:
    break;
  }
  throw std::invalid_argument("pooling op is not a scalar pool");
}

std::vector<double> pooled_margin(const AtomScoreTable &t, Pooling op) {
  if (t.atoms() == 0)
    throw std::invalid_argument("pooled margin of a molecule without atoms");
  const auto totals = t.atom_totals();
  const double margin = pool_scores(totals, op);
  double scale = 0.0;
  for (double v : totals)
    scale = std::max(scale, std::abs(v));
  if (scale == 0.0)
    scale = 1.0;

  std::vector<double> out;
  out.reserve(block_width(t.radius()));
  out.push_back(margin);
  out.push_back(margin / scale);
  const double mag = std::abs(margin);
  for (int d = 0; d <= t.radius(); ++d) {
    if (mag == 0.0) {
      out.push_back(0.0);
      continue;
    }
    out.push_back(pool_scores(t.column(d), op) / mag);
  }
  return out;
}

std::vector<double> molecule_block(const AtomScoreTable &t, Pooling op,
                                   double gate) {
  if (op == Pooling::kMarginCount)
    return margin_block(t, gate);
  return pooled_margin(t, op);
}

std::size_t block_width(int radius) {
  return static_cast<std::size_t>(radius) + 3;
}

MolFtpVector assemble_molftp(std::span<const OrderBlock> blocks) {
  if (blocks.empty())
    throw std::invalid_argument("molFTP vector needs at least one block");
  const OrderBlock *slot[3] = { nullptr, nullptr, nullptr };
  const int radius = blocks.front().radius;
  for (const OrderBlock &b : blocks) {
    if (b.radius != radius)
      throw std::invalid_argument("blocks disagree on radius");
    if (b.values.size() != block_width(radius))
      throw std::invalid_argument("block has the wrong width");
    auto &s = slot[static_cast<int>(b.order)];
    if (s != nullptr)
      throw std::invalid_argument("order appears twice");
    s = &b;
  }
  MolFtpVector out;
  out.radius = radius;
  out.values.reserve(blocks.size() * block_width(radius));
  for (const OrderBlock *b : slot) {
    if (b == nullptr)
      continue;
    out.orders.push_back(b->order);
    out.values.insert(out.values.end(), b->values.begin(), b->values.end());
  }
  return out;
}

std::vector<std::string> column_names(std::span<const Order> orders,
                                      int radius) {
  std::vector<std::string> out;
  for (Order o : orders) {
    const std::string prefix = "d" + std::to_string(static_cast<int>(o) + 1) + "_";
    out.push_back(prefix + "margin");
    out.push_back(prefix + "margin_rel");
    for (int d = 0; d <= radius; ++d)
      out.push_back(prefix + "net_" + std::to_string(d));
  }
  return out;
}

std::vector<MolFtpVector> vectorize(std::span<const FragmentIndex> indexes,
                                    std::span<const ScoreMap *const> maps,
                                    const VectorizerOptions &opts) {
  std::vector<MolFtpVector> out(indexes.size());
  parallel_for(indexes.size(), [&](std::size_t i) {
    const FragmentIndex &idx = indexes[i];
    std::vector<OrderBlock> blocks;
    blocks.reserve(maps.size());
    for (const ScoreMap *m : maps) {
      const AtomScoreTable t = atom_score_table(idx, *m);
      blocks.push_back({ m->order(), idx.radius,
                         molecule_block(t, opts.pooling, opts.gate) });
    }
    out[i] = assemble_molftp(blocks);
  });
  return out;
}

}  // namespace molftp
