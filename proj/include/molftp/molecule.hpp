//
// molftp - Copyright 2026 The molftp Authors.
// SPDX-License-Identifier: Apache-2.0
//

#pragma once

#include <cstdint>
#include <string>
#include <vector>

namespace molftp {

enum class BondOrder : std::uint8_t {
  kSingle = 1,
  kDouble = 2,
  kTriple = 3,
  kAromatic = 4,
};

struct Atom {
  int atomic_number = 0;
  int formal_charge = 0;
  int isotope = 0;       // 0 when unspecified
  int explicit_h = 0;    // hydrogens written inside a bracket atom
  int implicit_h = 0;    // hydrogens added by the valence model
  int degree = 0;        // heavy-atom (graph) neighbors
  bool aromatic = false;
  bool ring_member = false;
  bool bracket = false;

  int total_h() const noexcept { return explicit_h + implicit_h; }
};

struct Bond {
  int begin = 0;
  int end = 0;
  BondOrder order = BondOrder::kSingle;
  bool ring_member = false;

  int other(int atom) const noexcept { return atom == begin ? end : begin; }
};

class Molecule {
public:
  Molecule() = default;

  const std::vector<Atom> &atoms() const noexcept { return atoms_; }
  const std::vector<Bond> &bonds() const noexcept { return bonds_; }
  const std::string &source_text() const noexcept { return source_; }

  std::size_t size() const noexcept { return atoms_.size(); }
  const Atom &atom(std::size_t i) const { return atoms_[i]; }

  // Indices into bonds() of the bonds incident to atom i.
  const std::vector<int> &incident_bonds(std::size_t i) const {
    return adjacency_[i];
  }

  // Built by parse_smiles; exposed for tests that assemble graphs directly.
  friend class MoleculeBuilder;

private:
  std::vector<Atom> atoms_;
  std::vector<Bond> bonds_;
  std::vector<std::vector<int>> adjacency_;
  std::string source_;
};

/// Assembles a Molecule atom by atom, validating bond endpoints, then
/// derives degree and ring membership in finish().
class MoleculeBuilder {
public:
  explicit MoleculeBuilder(std::string source = {});

  int add_atom(const Atom &atom);
  // Throws std::invalid_argument on self-bonds, duplicates or bad indices.
  int add_bond(int begin, int end, BondOrder order);
  bool has_bond(int begin, int end) const;

  std::vector<Atom> &atoms() noexcept { return mol_.atoms_; }
  std::vector<Bond> &bonds() noexcept { return mol_.bonds_; }

  // Recomputes degree and ring flags (bridge detection) in place.
  void perceive();
  // perceive() and hand over the finished graph.
  Molecule finish() &&;

private:
  Molecule mol_;
};

}  // namespace molftp
