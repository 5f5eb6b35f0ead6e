//
// molftp - Copyright 2026 The molftp Authors.
// SPDX-License-Identifier: Apache-2.0
//

#include "molftp/fragments.hpp"

#include <algorithm>
#include <deque>
#include <stdexcept>
#include <utility>

namespace molftp {

std::uint64_t mix64(std::uint64_t x) noexcept {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

std::uint64_t hash_combine(std::uint64_t seed, std::uint64_t value) noexcept {
  return mix64(seed ^ (mix64(value) + 0x9e3779b97f4a7c15ULL + (seed << 6) +
                       (seed >> 2)));
}

namespace {

std::uint64_t bond_code(BondOrder order) {
  return static_cast<std::uint64_t>(order);
}

// Charges are offset so negative values hash as distinct small integers.
std::uint64_t encode_charge(int charge) {
  return static_cast<std::uint64_t>(static_cast<std::int64_t>(charge) + 128);
}

}  // namespace

bool FragmentIndex::contains(FragmentKey key) const {
  return count(key) > 0;
}

std::uint32_t FragmentIndex::count(FragmentKey key) const {
  auto it = std::lower_bound(
      keys.begin(), keys.end(), key,
      [](const KeyOccurrence &k, FragmentKey v) { return k.key < v; });
  return (it != keys.end() && it->key == key) ? it->count : 0;
}

std::vector<FragmentKey> FragmentIndex::key_presence() const {
  std::vector<FragmentKey> out;
  out.reserve(keys.size());
  for (const auto &k : keys)
    out.push_back(k.key);
  return out;
}

std::vector<std::uint64_t> initial_invariants(const Molecule &mol) {
  std::vector<std::uint64_t> codes;
  codes.reserve(mol.size());
  for (const Atom &a : mol.atoms()) {
    std::uint64_t h = 0x6d6f6c6674700000ULL;  // domain tag
    h = hash_combine(h, static_cast<std::uint64_t>(a.atomic_number));
    h = hash_combine(h, static_cast<std::uint64_t>(a.degree));
    h = hash_combine(h, encode_charge(a.formal_charge));
    h = hash_combine(h, static_cast<std::uint64_t>(a.total_h()));
    h = hash_combine(h, a.ring_member ? 1U : 0U);
    h = hash_combine(h, a.aromatic ? 1U : 0U);
    codes.push_back(h);
  }
  return codes;
}

std::vector<int> eccentricities(const Molecule &mol) {
  const std::size_t n = mol.size();
  std::vector<int> ecc(n, 0);
  std::vector<int> dist(n);
  std::deque<int> queue;
  for (std::size_t s = 0; s < n; ++s) {
    std::fill(dist.begin(), dist.end(), -1);
    dist[s] = 0;
    queue.assign(1, static_cast<int>(s));
    int far = 0;
    while (!queue.empty()) {
      const int u = queue.front();
      queue.pop_front();
      far = std::max(far, dist[u]);
      for (int b : mol.incident_bonds(u)) {
        const int v = mol.bonds()[b].other(u);
        if (dist[v] < 0) {
          dist[v] = dist[u] + 1;
          queue.push_back(v);
        }
      }
    }
    ecc[s] = far;
  }
  return ecc;
}

FragmentIndex enumerate_fragments(const Molecule &mol, int radius,
                                  std::size_t molecule_id) {
  if (radius < 0)
    throw std::invalid_argument("radius must be >= 0");

  FragmentIndex index;
  index.molecule_id = molecule_id;
  index.radius = radius;
  index.atom_count = mol.size();

  const std::size_t n = mol.size();
  const std::vector<int> ecc = eccentricities(mol);
  std::vector<std::uint64_t> codes = initial_invariants(mol);
  std::vector<std::uint64_t> next(n);
  std::vector<std::pair<std::uint64_t, std::uint64_t>> env;

  for (int r = 0; r <= radius; ++r) {
    if (r > 0) {
      for (std::size_t a = 0; a < n; ++a) {
        env.clear();
        for (int b : mol.incident_bonds(a)) {
          const Bond &bond = mol.bonds()[b];
          env.emplace_back(bond_code(bond.order),
                           codes[static_cast<std::size_t>(bond.other(
                               static_cast<int>(a)))]);
        }
        std::sort(env.begin(), env.end());
        std::uint64_t h = hash_combine(static_cast<std::uint64_t>(r), codes[a]);
        for (const auto &[order, code] : env) {
          h = hash_combine(h, order);
          h = hash_combine(h, code);
        }
        next[a] = h;
      }
      codes.swap(next);
    }
    bool any = false;
    for (std::size_t a = 0; a < n; ++a) {
      if (r > ecc[a])
        continue;
      any = true;
      index.hits.push_back({ FragmentKey { codes[a] }, r, static_cast<int>(a), 1 });
    }
    if (!any)
      break;
  }

  std::vector<KeyOccurrence> occ;
  occ.reserve(index.hits.size());
  for (const FragmentHit &h : index.hits)
    occ.push_back({ h.key, h.depth, 1 });
  std::sort(occ.begin(), occ.end(),
            [](const KeyOccurrence &l, const KeyOccurrence &r) {
              return l.key != r.key ? l.key < r.key : l.depth < r.depth;
            });
  for (const KeyOccurrence &o : occ) {
    if (!index.keys.empty() && index.keys.back().key == o.key)
      ++index.keys.back().count;
    else
      index.keys.push_back(o);
  }
  return index;
}

}  // namespace molftp
