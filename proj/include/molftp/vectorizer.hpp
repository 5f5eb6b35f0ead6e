//
// molftp - Copyright 2026 The molftp Authors.
// SPDX-License-Identifier: Apache-2.0
//

#pragma once

#include <cstddef>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "molftp/fragments.hpp"
#include "molftp/score_map.hpp"

namespace molftp {

/// Per-atom, per-depth localized scores of one molecule.
class AtomScoreTable {
public:
  AtomScoreTable(std::size_t atoms, int radius);

  std::size_t atoms() const noexcept { return atoms_; }
  int radius() const noexcept { return radius_; }
  std::size_t depths() const noexcept { return static_cast<std::size_t>(radius_) + 1; }

  double at(std::size_t atom, int depth) const;
  double &at(std::size_t atom, int depth);

  // s_a, summed over depths.
  double atom_total(std::size_t atom) const;
  std::vector<double> atom_totals() const;
  std::vector<double> column(int depth) const;

private:
  std::size_t atoms_ = 0;
  int radius_ = 0;
  std::vector<double> cells_;  // row-major atoms x depths
};

/// Places score(key) on every hit of the index. Keys without an entry add 0.
AtomScoreTable atom_score_table(const FragmentIndex &index,
                                const ScoreMap &scores);

/// [margin, margin_rel, net_0 .. net_R] with gate counting. At g = 0 an
/// atom scoring exactly 0 counts on both sides and cancels.
std::vector<double> margin_block(const AtomScoreTable &t, double gate);

enum class Pooling { kMarginCount, kMax, kMean, kMedian, kSoftmax, kLogSumExp };

std::string_view to_string(Pooling p);
std::optional<Pooling> parse_pooling(std::string_view name);

/// Scalar pooling of a list of atom scores. kMarginCount is not a scalar
/// pool and throws std::invalid_argument.
double pool_scores(std::span<const double> s, Pooling op);

/// margin = pool(s_a), margin_rel = margin / max|s_a| (1 if all zero),
/// net_d = pool(s_{.,d}) / |margin| (0 when margin is 0).
std::vector<double> pooled_margin(const AtomScoreTable &t, Pooling op);

/// Dispatches to margin_block for kMarginCount, pooled_margin otherwise.
std::vector<double> molecule_block(const AtomScoreTable &t, Pooling op,
                                   double gate);

struct OrderBlock {
  Order order = Order::k1D;
  int radius = 0;
  std::vector<double> values;  // radius + 3 entries
};

struct MolFtpVector {
  int radius = 0;
  std::vector<Order> orders;  // 1D, 2D, 3D subset in that order
  std::vector<double> values;
};

/// Concatenates blocks in 1D, 2D, 3D order. Throws std::invalid_argument on
/// an empty selection, a repeated order, a radius mismatch or a block of the
/// wrong width.
MolFtpVector assemble_molftp(std::span<const OrderBlock> blocks);

std::size_t block_width(int radius);

/// d1_margin, d1_margin_rel, d1_net_0, ... for each selected order.
std::vector<std::string> column_names(std::span<const Order> orders,
                                      int radius);

struct VectorizerOptions {
  Pooling pooling = Pooling::kMarginCount;
  double gate = 0.0;
};

/// One molFTP vector per index; `maps` holds one score map per selected
/// order. Rows are computed in parallel.
std::vector<MolFtpVector> vectorize(std::span<const FragmentIndex> indexes,
                                    std::span<const ScoreMap *const> maps,
                                    const VectorizerOptions &opts);

}  // namespace molftp
