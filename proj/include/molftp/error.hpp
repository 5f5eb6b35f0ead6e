//
// molftp - Copyright 2026 The molftp Authors.
// SPDX-License-Identifier: Apache-2.0
//

#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace molftp {

class Error : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

/// SMILES syntax or chemistry error, positioned at a character offset.
class ParseError : public Error {
public:
  ParseError(std::size_t offset, const std::string &what)
      : Error(what + " at offset " + std::to_string(offset)), offset_(offset) {
  }

  std::size_t offset() const noexcept { return offset_; }

private:
  std::size_t offset_;
};

/// Invalid configuration value; `key()` names the offending setting.
class ConfigError : public Error {
public:
  ConfigError(std::string key, const std::string &what)
      : Error(key + ": " + what), key_(std::move(key)) { }

  const std::string &key() const noexcept { return key_; }

private:
  std::string key_;
};

/// Bad input data (empty dataset, non-binary labels, single-class folds).
class DataError : public Error {
public:
  using Error::Error;
};

/// Violated internal consistency (e.g. a scored key missing from support).
class InvariantError : public Error {
public:
  using Error::Error;
};

}  // namespace molftp
