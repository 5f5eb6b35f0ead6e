//
// molftp - Copyright 2026 The molftp Authors.
// SPDX-License-Identifier: Apache-2.0
//

#pragma once

#include <cstddef>
#include <iosfwd>
#include <string>
#include <string_view>
#include <vector>

#include "molftp/molecule.hpp"

namespace molftp {

/// Splits one CSV record. Double quotes wrap fields, "" escapes a quote.
/// Throws DataError on an unterminated quote.
std::vector<std::string> split_csv_line(std::string_view line);

/// Quotes a field when it holds a comma, quote or leading/trailing space.
std::string csv_field(std::string_view field);

struct CsvTable {
  std::vector<std::string> header;
  std::vector<std::vector<std::string>> rows;
  std::vector<std::size_t> line_numbers;  // 1-based source line per row
};

/// Lines starting with '#' and blank lines are skipped. The first remaining
/// line is the header. Throws DataError on a missing header or a row whose
/// width differs from the header.
CsvTable read_csv(std::istream &in);
CsvTable read_csv_file(const std::string &path);

struct Dataset {
  std::vector<std::string> smiles;
  std::vector<int> labels;
  std::vector<std::string> extra_names;
  std::vector<std::vector<std::string>> extras;  // per row, per extra column
  std::vector<std::size_t> line_numbers;

  std::size_t size() const noexcept { return smiles.size(); }

  /// Numeric values of an extra column. Throws DataError for an unknown
  /// column or a non-numeric value.
  std::vector<double> extra_column(std::string_view name) const;
};

/// Headered CSV with `smiles` and `label` columns; other columns are kept
/// as extras. Throws DataError on an empty dataset or a label outside {0,1}.
Dataset load_dataset(std::istream &in);
Dataset load_dataset_file(const std::string &path);

/// Writes the dataset back as CSV, preceded by `# ` comment lines.
void write_dataset(std::ostream &out, const Dataset &ds,
                   const std::vector<std::string> &comments);

struct RowFailure {
  std::size_t row = 0;   // 0-based dataset row
  std::size_t line = 0;  // 1-based source line
  std::string smiles;
  std::string message;
};

struct ParsedDataset {
  std::vector<Molecule> molecules;
  std::vector<std::size_t> rows;  // dataset row of each molecule
  std::vector<RowFailure> failures;
};

/// Parses every SMILES in parallel. Failing rows are reported, not thrown.
ParsedDataset parse_molecules(const Dataset &ds);

/// Restricts a dataset to the listed rows, in order.
Dataset subset(const Dataset &ds, const std::vector<std::size_t> &rows);

}  // namespace molftp
