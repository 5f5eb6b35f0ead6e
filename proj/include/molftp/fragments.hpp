//
// molftp - Copyright 2026 The molftp Authors.
// SPDX-License-Identifier: Apache-2.0
//

#pragma once

#include <compare>
#include <cstddef>
#include <cstdint>
#include <functional>
#include <vector>

#include "molftp/molecule.hpp"

namespace molftp {

/// Unfolded 64-bit circular-fragment identifier. Keys of different radii
/// never compare equal except by hash collision.
struct FragmentKey {
  std::uint64_t value = 0;

  friend auto operator<=>(const FragmentKey &, const FragmentKey &) = default;
};

struct FragmentHit {
  FragmentKey key;
  int depth = 0;
  int center = 0;
  int count = 1;
};

struct KeyOccurrence {
  FragmentKey key;
  int depth = 0;              // radius at which the key was generated
  std::uint32_t count = 0;    // hits carrying this key in the molecule
};

/// Every atom-centered fragment of one molecule for radii 0..radius.
struct FragmentIndex {
  std::size_t molecule_id = 0;
  int radius = 0;
  std::size_t atom_count = 0;
  std::vector<FragmentHit> hits;     // depth-major, then atom index
  std::vector<KeyOccurrence> keys;   // distinct keys, sorted by key

  bool contains(FragmentKey key) const;
  std::uint32_t count(FragmentKey key) const;
  std::vector<FragmentKey> key_presence() const;
};

/// 64-bit mixing used for every key in the library. Pure integer arithmetic,
/// so identical on every platform.
std::uint64_t mix64(std::uint64_t x) noexcept;
std::uint64_t hash_combine(std::uint64_t seed, std::uint64_t value) noexcept;

/// Seed codes from (element, degree, formal charge, total H, ring, aromatic).
std::vector<std::uint64_t> initial_invariants(const Molecule &mol);

/// Largest shortest-path distance from each atom within its component.
std::vector<int> eccentricities(const Molecule &mol);

/// ECFP-style iteration: the radius-r code of an atom hashes its radius-(r-1)
/// code with the sorted (bond order, neighbor code) pairs. Every atom emits
/// one hit per r in [0, min(radius, eccentricity)]. Symmetric duplicates are
/// kept in hits and collapsed only in keys.
FragmentIndex enumerate_fragments(const Molecule &mol, int radius,
                                  std::size_t molecule_id = 0);

}  // namespace molftp

template <>
struct std::hash<molftp::FragmentKey> {
  std::size_t operator()(const molftp::FragmentKey &k) const noexcept {
    return static_cast<std::size_t>(k.value);
  }
};
