//
// molftp - Copyright 2026 The molftp Authors.
// SPDX-License-Identifier: Apache-2.0
//

#include "molftp/dataset.hpp"

#include <algorithm>
#include <charconv>
#include <fstream>
#include <istream>
#include <optional>
#include <ostream>

#include "molftp/error.hpp"
#include "molftp/parallel.hpp"
#include "molftp/smiles.hpp"

namespace molftp {

std::vector<std::string> split_csv_line(std::string_view line) {
  std::vector<std::string> out;
  std::string cur;
  bool quoted = false;
  for (std::size_t i = 0; i < line.size(); ++i) {
    const char ch = line[i];
    if (quoted) {
      if (ch == '"') {
        if (i + 1 < line.size() && line[i + 1] == '"') {
          cur += '"';
          ++i;
        } else {
          quoted = false;
        }
      } else {
        cur += ch;
      }
    } else if (ch == '"') {
      quoted = true;
    } else if (ch == ',') {
      out.push_back(std::move(cur));
      cur.clear();
    } else {
      cur += ch;
    }
  }
  if (quoted)
    throw DataError("unterminated quote in CSV record");
  out.push_back(std::move(cur));
  return out;
}

std::string csv_field(std::string_view field) {
  const bool needs = field.find_first_of(",\"\n") != std::string_view::npos ||
                     (!field.empty() && (field.front() == ' ' || field.back() == ' '));
  if (!needs)
    return std::string(field);
  std::string out = "\"";
  for (char ch : field) {
    if (ch == '"')
      out += '"';
    out += ch;
  }
  out += '"';
  return out;
}

CsvTable read_csv(std::istream &in) {
  CsvTable t;
  std::string line;
  std::size_t lineno = 0;
  bool have_header = false;
  while (std::getline(in, line)) {
    ++lineno;
    if (!line.empty() && line.back() == '\r')
      line.pop_back();
    if (lineno == 1 && line.rfind("\xEF\xBB\xBF", 0) == 0)
      line.erase(0, 3);
    if (line.empty() || line.front() == '#')
      continue;
    std::vector<std::string> fields;
    try {
      fields = split_csv_line(line);
    } catch (const DataError &e) {
      throw DataError("line " + std::to_string(lineno) + ": " + e.what());
    }
    if (!have_header) {
      t.header = std::move(fields);
      have_header = true;
      continue;
    }
    if (fields.size() != t.header.size())
      throw DataError("line " + std::to_string(lineno) + ": expected " +
                      std::to_string(t.header.size()) + " fields, found " +
                      std::to_string(fields.size()));
    t.rows.push_back(std::move(fields));
    t.line_numbers.push_back(lineno);
  }
  if (!have_header)
    throw DataError("CSV input has no header");
  return t;
}

CsvTable read_csv_file(const std::string &path) {
  std::ifstream in(path);
  if (!in)
    throw DataError("cannot open " + path);
  return read_csv(in);
}

namespace {

std::optional<double> to_double(std::string_view s) {
  while (!s.empty() && s.front() == ' ')
    s.remove_prefix(1);
  while (!s.empty() && s.back() == ' ')
    s.remove_suffix(1);
  if (s.empty())
    return std::nullopt;
  double v = 0.0;
  auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (ec != std::errc() || ptr != s.data() + s.size())
    return std::nullopt;
  return v;
}

}  // namespace

std::vector<double> Dataset::extra_column(std::string_view name) const {
  auto it = std::find(extra_names.begin(), extra_names.end(), name);
  if (it == extra_names.end())
    throw DataError("dataset has no column named " + std::string(name));
  const auto col = static_cast<std::size_t>(it - extra_names.begin());
  std::vector<double> out(size());
  for (std::size_t i = 0; i < size(); ++i) {
    auto v = to_double(extras[i][col]);
    if (!v)
      throw DataError("line " + std::to_string(line_numbers[i]) + ": column " +
                      std::string(name) + " is not numeric");
    out[i] = *v;
  }
  return out;
}

Dataset load_dataset(std::istream &in) {
  CsvTable t = read_csv(in);
  std::optional<std::size_t> smiles_col;
  std::optional<std::size_t> label_col;
  Dataset ds;
  std::vector<std::size_t> extra_cols;
  for (std::size_t c = 0; c < t.header.size(); ++c) {
    const std::string &h = t.header[c];
    if (h == "smiles" && !smiles_col)
      smiles_col = c;
    else if (h == "label" && !label_col)
      label_col = c;
    else {
      ds.extra_names.push_back(h);
      extra_cols.push_back(c);
    }
  }
  if (!smiles_col || !label_col)
    throw DataError("header must name 'smiles' and 'label' columns");
  if (t.rows.empty())
    throw DataError("dataset has no rows");

  for (std::size_t r = 0; r < t.rows.size(); ++r) {
    auto &row = t.rows[r];
    const std::string &lab = row[*label_col];
    int label;
    if (lab == "0" || lab == "0.0")
      label = 0;
    else if (lab == "1" || lab == "1.0")
      label = 1;
    else
      throw DataError("line " + std::to_string(t.line_numbers[r]) +
                      ": label '" + lab + "' is not 0 or 1");
    ds.smiles.push_back(std::move(row[*smiles_col]));
    ds.labels.push_back(label);
    std::vector<std::string> extras;
    extras.reserve(extra_cols.size());
    for (std::size_t c : extra_cols)
      extras.push_back(std::move(row[c]));
    ds.extras.push_back(std::move(extras));
    ds.line_numbers.push_back(t.line_numbers[r]);
  }
  return ds;
}

Dataset load_dataset_file(const std::string &path) {
  std::ifstream in(path);
  if (!in)
    throw DataError("cannot open " + path);
  return load_dataset(in);
}

void write_dataset(std::ostream &out, const Dataset &ds,
                   const std::vector<std::string> &comments) {
  for (const std::string &c : comments)
    out << "# " << c << '\n';
  out << "smiles,label";
  for (const std::string &n : ds.extra_names)
    out << ',' << csv_field(n);
  out << '\n';
  for (std::size_t i = 0; i < ds.size(); ++i) {
    out << csv_field(ds.smiles[i]) << ',' << ds.labels[i];
    for (const std::string &v : ds.extras[i])
      out << ',' << csv_field(v);
    out << '\n';
  }
}

ParsedDataset parse_molecules(const Dataset &ds) {
  std::vector<Molecule> mols(ds.size());
  std::vector<std::string> errors(ds.size());
  std::vector<char> ok(ds.size(), 0);
  parallel_for(ds.size(), [&](std::size_t i) {
    try {
      mols[i] = parse_smiles(ds.smiles[i]);
      if (mols[i].size() == 0)
        errors[i] = "empty SMILES";
      else
        ok[i] = 1;
    } catch (const std::exception &e) {
      errors[i] = e.what();
    }
  });
  ParsedDataset out;
  for (std::size_t i = 0; i < ds.size(); ++i) {
    if (ok[i]) {
      out.molecules.push_back(std::move(mols[i]));
      out.rows.push_back(i);
    } else {
      out.failures.push_back({ i, ds.line_numbers[i], ds.smiles[i], errors[i] });
    }
  }
  return out;
}

Dataset subset(const Dataset &ds, const std::vector<std::size_t> &rows) {
  Dataset out;
  out.extra_names = ds.extra_names;
  for (std::size_t r : rows) {
    out.smiles.push_back(ds.smiles[r]);
    out.labels.push_back(ds.labels[r]);
    out.extras.push_back(ds.extras[r]);
    out.line_numbers.push_back(ds.line_numbers[r]);
  }
  return out;
}

}  // namespace molftp
