//
// molftp - Copyright 2026 The molftp Authors.
// SPDX-License-Identifier: Apache-2.0
//

#include "molftp/molecule.hpp"

#include <algorithm>
#include <stdexcept>
#include <utility>

namespace molftp {
namespace {

// Marks every bond that is not a bridge as a ring bond (iterative Tarjan).
void mark_ring_bonds(const std::vector<std::vector<int>> &adj,
                     std::vector<Bond> &bonds) {
  const int n = static_cast<int>(adj.size());
  std::vector<int> disc(n, -1), low(n, 0);
  std::vector<char> tree_edge(bonds.size(), 0);
  int timer = 0;

  struct Frame {
    int atom;
    int parent_bond;
    std::size_t next;
  };
  std::vector<Frame> stack;

  for (int root = 0; root < n; ++root) {
    if (disc[root] >= 0)
      continue;
    disc[root] = low[root] = timer++;
    stack.push_back({ root, -1, 0 });
    while (!stack.empty()) {
      Frame &f = stack.back();
      if (f.next < adj[f.atom].size()) {
        const int b = adj[f.atom][f.next++];
        if (b == f.parent_bond)
          continue;
        const int nb = bonds[b].other(f.atom);
        if (disc[nb] < 0) {
          disc[nb] = low[nb] = timer++;
          tree_edge[b] = 1;
          stack.push_back({ nb, b, 0 });
        } else {
          low[f.atom] = std::min(low[f.atom], disc[nb]);
        }
        continue;
      }
      const Frame done = f;
      stack.pop_back();
      if (stack.empty())
        continue;
      const int parent = stack.back().atom;
      low[parent] = std::min(low[parent], low[done.atom]);
      // Tree edge parent->done is a bridge iff low[done] > disc[parent].
      bonds[done.parent_bond].ring_member = low[done.atom] <= disc[parent];
    }
  }
  // Back edges close a cycle by definition.
  for (std::size_t b = 0; b < bonds.size(); ++b) {
    if (tree_edge[b] == 0)
      bonds[b].ring_member = true;
  }
}

}  // namespace

MoleculeBuilder::MoleculeBuilder(std::string source) {
  mol_.source_ = std::move(source);
}

int MoleculeBuilder::add_atom(const Atom &atom) {
  mol_.atoms_.push_back(atom);
  mol_.adjacency_.emplace_back();
  return static_cast<int>(mol_.atoms_.size()) - 1;
}

bool MoleculeBuilder::has_bond(int begin, int end) const {
  if (begin < 0 || begin >= static_cast<int>(mol_.adjacency_.size()))
    return false;
  return std::any_of(mol_.adjacency_[begin].begin(),
                     mol_.adjacency_[begin].end(), [&](int b) {
                       return mol_.bonds_[b].other(begin) == end;
                     });
}

int MoleculeBuilder::add_bond(int begin, int end, BondOrder order) {
  const int n = static_cast<int>(mol_.atoms_.size());
  if (begin < 0 || end < 0 || begin >= n || end >= n)
    throw std::invalid_argument("bond endpoint out of range");
  if (begin == end)
    throw std::invalid_argument("self-bond");
  if (has_bond(begin, end))
    throw std::invalid_argument("duplicate bond");
  mol_.bonds_.push_back({ begin, end, order, false });
  const int idx = static_cast<int>(mol_.bonds_.size()) - 1;
  mol_.adjacency_[begin].push_back(idx);
  mol_.adjacency_[end].push_back(idx);
  return idx;
}

void MoleculeBuilder::perceive() {
  for (auto &b : mol_.bonds_)
    b.ring_member = false;
  mark_ring_bonds(mol_.adjacency_, mol_.bonds_);
  for (std::size_t i = 0; i < mol_.atoms_.size(); ++i) {
    Atom &a = mol_.atoms_[i];
    a.degree = static_cast<int>(mol_.adjacency_[i].size());
    a.ring_member = std::any_of(
        mol_.adjacency_[i].begin(), mol_.adjacency_[i].end(),
        [&](int b) { return mol_.bonds_[b].ring_member; });
  }
}

Molecule MoleculeBuilder::finish() && {
  perceive();
  return std::move(mol_);
}

}  // namespace molftp
