//
// molftp - Copyright 2026 The molftp Authors.
// SPDX-License-Identifier: Apache-2.0
//

#include "molftp/smiles.hpp"

#include <algorithm>
#include <cctype>
#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "molftp/element.hpp"
#include "molftp/error.hpp"

namespace molftp {
namespace {

bool is_digit(char c) {
  return c >= '0' && c <= '9';
}

bool is_bond_symbol(char c) {
  return c == '-' || c == '=' || c == '#' || c == ':' || c == '/' || c == '\\';
}

// Directional bonds are plain single bonds here.
char normalize_bond(char c) {
  return (c == '/' || c == '\\') ? '-' : c;
}

int aromatic_atomic_number(std::string_view sym) {
  if (sym == "b") return 5;
  if (sym == "c") return 6;
  if (sym == "n") return 7;
  if (sym == "o") return 8;
  if (sym == "p") return 15;
  if (sym == "s") return 16;
  if (sym == "se") return 34;
  if (sym == "as") return 33;
  return 0;
}

struct RingOpening {
  int atom;
  char bond;
  std::size_t offset;
};

class SmilesParser {
public:
  explicit SmilesParser(std::string_view text)
      : text_(text), builder_(std::string(text)) { }

  Molecule run();

private:
  char peek(std::size_t ahead = 0) const {
    return pos_ + ahead < text_.size() ? text_[pos_ + ahead] : '\0';
  }

  int parse_organic_atom();
  int parse_bracket_atom();
  int parse_ring_number();
  void connect(int a, int b, char symbol, std::size_t offset);
  void assign_implicit_hydrogens();

  std::string_view text_;
  std::size_t pos_ = 0;
  MoleculeBuilder builder_;
  std::vector<std::size_t> atom_offsets_;
  std::vector<char> implicit_aromatic_;  // per bond
};

int SmilesParser::parse_organic_atom() {
  const std::size_t start = pos_;
  const char c = peek();
  Atom atom;
  if (c == 'C' && peek(1) == 'l') {
    atom.atomic_number = 17;
    pos_ += 2;
  } else if (c == 'B' && peek(1) == 'r') {
    atom.atomic_number = 35;
    pos_ += 2;
  } else if (std::islower(static_cast<unsigned char>(c))) {
    const int z = aromatic_atomic_number(std::string_view(&text_[pos_], 1));
    if (z == 0)
      throw ParseError(start, std::string("unknown element '") + c + "'");
    atom.atomic_number = z;
    atom.aromatic = true;
    ++pos_;
  } else {
    const std::string_view sym(&text_[pos_], 1);
    if (!is_organic_subset(sym)) {
      std::size_t len = 1;
      if (std::islower(static_cast<unsigned char>(peek(1))))
        len = 2;
      throw ParseError(start, "unknown element '" +
                                  std::string(text_.substr(pos_, len)) +
                                  "' outside brackets");
    }
    atom.atomic_number = find_element(sym)->atomic_number;
    ++pos_;
  }
  atom_offsets_.push_back(start);
  return builder_.add_atom(atom);
}

int SmilesParser::parse_bracket_atom() {
  const std::size_t start = pos_;
  ++pos_;  // '['
  Atom atom;
  atom.bracket = true;

  while (is_digit(peek()))
    atom.isotope = atom.isotope * 10 + (text_[pos_++] - '0');

  const char c = peek();
  if (std::islower(static_cast<unsigned char>(c))) {
    std::string_view two = text_.substr(pos_, 2);
    int z = two.size() == 2 ? aromatic_atomic_number(two) : 0;
    if (z != 0) {
      pos_ += 2;
    } else {
      z = aromatic_atomic_number(text_.substr(pos_, 1));
      if (z == 0)
        throw ParseError(pos_, std::string("unknown element '") + c + "'");
      ++pos_;
    }
    atom.atomic_number = z;
    atom.aromatic = true;
  } else if (std::isupper(static_cast<unsigned char>(c))) {
    const ElementInfo *e = nullptr;
    if (std::islower(static_cast<unsigned char>(peek(1)))) {
      e = find_element(text_.substr(pos_, 2));
      if (e != nullptr)
        pos_ += 2;
    }
    if (e == nullptr) {
      e = find_element(text_.substr(pos_, 1));
      if (e == nullptr)
        throw ParseError(pos_, std::string("unknown element '") + c + "'");
      ++pos_;
    }
    atom.atomic_number = e->atomic_number;
  } else {
    throw ParseError(pos_, c == '\0' ? "unterminated bracket atom"
                                     : std::string("unknown element '") + c +
                                           "'");
  }

  // Chirality is parsed and dropped.
  if (peek() == '@') {
    ++pos_;
    if (peek() == '@') {
      ++pos_;
    } else {
      const std::string_view cls = text_.substr(pos_, 2);
      if (cls == "TH" || cls == "AL" || cls == "SP" || cls == "TB" ||
          cls == "OH") {
        pos_ += 2;
        while (is_digit(peek()))
          ++pos_;
      }
    }
  }

  if (peek() == 'H') {
    ++pos_;
    if (is_digit(peek())) {
      atom.explicit_h = 0;
      while (is_digit(peek()))
        atom.explicit_h = atom.explicit_h * 10 + (text_[pos_++] - '0');
    } else {
      atom.explicit_h = 1;
    }
  }

  if (peek() == '+' || peek() == '-') {
    const char sign = text_[pos_++];
    int magnitude = 1;
    if (is_digit(peek())) {
      magnitude = 0;
      while (is_digit(peek()))
        magnitude = magnitude * 10 + (text_[pos_++] - '0');
    } else {
      while (peek() == sign) {
        ++magnitude;
        ++pos_;
      }
    }
    atom.formal_charge = sign == '+' ? magnitude : -magnitude;
  }

  if (peek() == ':') {
    ++pos_;
    if (!is_digit(peek()))
      throw ParseError(pos_, "expected atom class digits");
    while (is_digit(peek()))
      ++pos_;
  }

  if (peek() != ']')
    throw ParseError(peek() == '\0' ? start : pos_,
                     peek() == '\0' ? "unterminated bracket atom"
                                    : "unexpected character in bracket atom");
  ++pos_;
  atom_offsets_.push_back(start);
  return builder_.add_atom(atom);
}

int SmilesParser::parse_ring_number() {
  if (peek() == '%') {
    if (!is_digit(peek(1)) || !is_digit(peek(2)))
      throw ParseError(pos_, "expected two digits after '%'");
    const int n = (peek(1) - '0') * 10 + (peek(2) - '0');
    pos_ += 3;
    return n;
  }
  return text_[pos_++] - '0';
}

void SmilesParser::connect(int a, int b, char symbol, std::size_t offset) {
  const auto &atoms = builder_.atoms();
  BondOrder order = BondOrder::kSingle;
  bool implicit_aromatic = false;
  switch (normalize_bond(symbol)) {
  case '\0':
    if (atoms[a].aromatic && atoms[b].aromatic) {
      order = BondOrder::kAromatic;
      implicit_aromatic = true;
    }
    break;
  case '-':
    break;
  case '=':
    order = BondOrder::kDouble;
    break;
  case '#':
    order = BondOrder::kTriple;
    break;
  case ':':
    order = BondOrder::kAromatic;
    break;
  default:
    throw ParseError(offset, "unsupported bond symbol");
  }
  try {
    builder_.add_bond(a, b, order);
  } catch (const std::invalid_argument &e) {
    throw ParseError(offset, e.what());
  }
  implicit_aromatic_.push_back(implicit_aromatic ? 1 : 0);
}

void SmilesParser::assign_implicit_hydrogens() {
  auto &atoms = builder_.atoms();
  const auto &bonds = builder_.bonds();
  std::vector<int> valence_sum(atoms.size(), 0);
  for (const Bond &b : bonds) {
    const int v = b.order == BondOrder::kAromatic ? 1 : static_cast<int>(b.order);
    valence_sum[b.begin] += v;
    valence_sum[b.end] += v;
  }
  for (std::size_t i = 0; i < atoms.size(); ++i) {
    Atom &atom = atoms[i];
    if (atom.bracket)
      continue;
    const auto valences = element_by_number(atom.atomic_number).valences;
    const int sum = valence_sum[i];
    auto fit = std::find_if(valences.begin(), valences.end(),
                            [&](int v) { return v >= sum; });
    if (fit == valences.end())
      throw ParseError(atom_offsets_[i],
                       "valence overflow on " +
                           std::string(element_by_number(atom.atomic_number)
                                           .symbol));
    // An aromatic atom spends one valence on the delocalized system.
    atom.implicit_h = std::max(0, *fit - sum - (atom.aromatic ? 1 : 0));
  }
}

Molecule SmilesParser::run() {
  if (text_.empty())
    throw ParseError(0, "empty SMILES");

  int prev = -1;
  char pending_bond = '\0';
  std::size_t pending_offset = 0;
  std::vector<std::pair<int, std::size_t>> branches;
  std::map<int, RingOpening> rings;

  while (pos_ < text_.size()) {
    const char c = peek();
    if (c == ' ' || c == '\t' || c == '\r' || c == '\n')
      break;

    if (c == '[' || std::isalpha(static_cast<unsigned char>(c))) {
      const std::size_t offset = pos_;
      const int atom = c == '[' ? parse_bracket_atom() : parse_organic_atom();
      if (prev >= 0)
        connect(prev, atom, pending_bond, offset);
      else if (pending_bond != '\0')
        throw ParseError(pending_offset, "bond without a preceding atom");
      prev = atom;
      pending_bond = '\0';
    } else if (c == '(') {
      if (prev < 0)
        throw ParseError(pos_, "branch without a preceding atom");
      if (pending_bond != '\0')
        throw ParseError(pending_offset, "bond before branch");
      branches.emplace_back(prev, pos_);
      ++pos_;
    } else if (c == ')') {
      if (branches.empty())
        throw ParseError(pos_, "unbalanced parenthesis");
      if (pending_bond != '\0')
        throw ParseError(pending_offset, "dangling bond");
      prev = branches.back().first;
      branches.pop_back();
      ++pos_;
    } else if (is_bond_symbol(c)) {
      if (pending_bond != '\0')
        throw ParseError(pos_, "consecutive bond symbols");
      pending_bond = c;
      pending_offset = pos_;
      ++pos_;
    } else if (is_digit(c) || c == '%') {
      const std::size_t offset = pos_;
      if (prev < 0)
        throw ParseError(offset, "ring closure without a preceding atom");
      const int number = parse_ring_number();
      auto it = rings.find(number);
      if (it == rings.end()) {
        rings.emplace(number, RingOpening { prev, pending_bond, offset });
      } else {
        const char open = normalize_bond(it->second.bond);
        const char close = normalize_bond(pending_bond);
        if (open != '\0' && close != '\0' && open != close)
          throw ParseError(offset, "conflicting ring-closure bond symbols");
        connect(it->second.atom, prev, open != '\0' ? open : close, offset);
        rings.erase(it);
      }
      pending_bond = '\0';
    } else if (c == '.') {
      if (pending_bond != '\0')
        throw ParseError(pending_offset, "dangling bond");
      if (!branches.empty())
        throw ParseError(pos_, "disconnection inside a branch");
      prev = -1;
      ++pos_;
    } else {
      throw ParseError(pos_, std::string("unexpected character '") + c + "'");
    }
  }

  if (pending_bond != '\0')
    throw ParseError(pending_offset, "dangling bond");
  if (!branches.empty())
    throw ParseError(branches.back().second, "unbalanced parenthesis");
  if (!rings.empty()) {
    const auto first = std::min_element(
        rings.begin(), rings.end(), [](const auto &l, const auto &r) {
          return l.second.offset < r.second.offset;
        });
    throw ParseError(first->second.offset, "unmatched ring closure " +
                                               std::to_string(first->first));
  }
  if (builder_.atoms().empty())
    throw ParseError(0, "no atoms");

  // Implicit aromatic bonds outside rings (biaryl links) are single bonds.
  builder_.perceive();
  auto &bonds = builder_.bonds();
  for (std::size_t b = 0; b < bonds.size(); ++b) {
    if (implicit_aromatic_[b] != 0 && !bonds[b].ring_member)
      bonds[b].order = BondOrder::kSingle;
  }
  assign_implicit_hydrogens();
  return std::move(builder_).finish();
}

}  // namespace

Molecule parse_smiles(std::string_view text) {
  return SmilesParser(text).run();
}

}  // namespace molftp
