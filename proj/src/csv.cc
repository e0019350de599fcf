//
// Copyright 2026 The Test-of-Tests Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.
//

#include "src/csv.h"

#include <algorithm>
#include <cerrno>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <map>
#include <ostream>
#include <sstream>

#include "absl/strings/numbers.h"
#include "absl/strings/str_cat.h"
#include "src/status_macros.h"

namespace tot {
namespace {

absl::StatusOr<double> ParseNumber(const std::string& text, std::size_t line,
                                   std::string_view column) {
  const char* begin = text.c_str();
  while (*begin == ' ' || *begin == '\t') ++begin;
  char* end = nullptr;
  errno = 0;
  const double v = std::strtod(begin, &end);
  while (end != nullptr && (*end == ' ' || *end == '\t')) ++end;
  if (end == begin || *end != '\0' || errno == ERANGE || !std::isfinite(v)) {
    return absl::InvalidArgumentError(absl::StrCat(
        "line ", line, ": column '", std::string(column),
        "' is not a finite number: '", text, "'"));
  }
  return v;
}

int ColumnIndex(const std::vector<std::string>& header, std::string_view name) {
  const auto it = std::find(header.begin(), header.end(), name);
  return it == header.end() ? -1 : static_cast<int>(it - header.begin());
}

}  // namespace

absl::StatusOr<CsvTable> ParseCsv(std::string_view text) {
  if (text.substr(0, 3) == "\xEF\xBB\xBF") text.remove_prefix(3);
  std::vector<std::vector<std::string>> records;
  std::vector<std::string> record;
  std::string field;
  bool in_quotes = false;
  bool field_started = false;
  std::size_t line = 1;
  auto end_record = [&] {
    record.push_back(std::move(field));
    field.clear();
    field_started = false;
    // A blank line yields one empty field; skip it.
    if (!(record.size() == 1 && record[0].empty())) {
      records.push_back(std::move(record));
    }
    record.clear();
  };
  for (std::size_t i = 0; i < text.size(); ++i) {
    const char c = text[i];
    if (in_quotes) {
      if (c == '"') {
        if (i + 1 < text.size() && text[i + 1] == '"') {
          field.push_back('"');
          ++i;
        } else {
          in_quotes = false;
        }
      } else {
        if (c == '\n') ++line;
        field.push_back(c);
      }
      continue;
    }
    switch (c) {
      case '"':
        if (field_started && !field.empty()) {
          return absl::InvalidArgumentError(
              absl::StrCat("line ", line, ": stray quote inside a field"));
        }
        in_quotes = true;
        field_started = true;
        break;
      case ',':
        record.push_back(std::move(field));
        field.clear();
        field_started = false;
        break;
      case '\r':
        if (i + 1 < text.size() && text[i + 1] == '\n') break;
        end_record();
        ++line;
        break;
      case '\n':
        end_record();
        ++line;
        break;
      default:
        field.push_back(c);
        field_started = true;
    }
  }
  if (in_quotes) return absl::InvalidArgumentError("unterminated quoted field");
  if (field_started || !field.empty() || !record.empty()) end_record();
  if (records.empty()) return absl::InvalidArgumentError("CSV has no header row");

  CsvTable table;
  table.header = std::move(records.front());
  for (std::size_t r = 1; r < records.size(); ++r) {
    if (records[r].size() != table.header.size()) {
      return absl::InvalidArgumentError(absl::StrCat(
          "record ", r + 1, " has ", records[r].size(), " fields, header has ",
          table.header.size()));
    }
    table.rows.push_back(std::move(records[r]));
  }
  return table;
}

absl::StatusOr<CsvTable> ReadCsvFile(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) return absl::NotFoundError(absl::StrCat("cannot open '", path, "'"));
  std::ostringstream buf;
  buf << in.rdbuf();
  return ParseCsv(buf.str());
}

std::string CsvEscape(std::string_view field) {
  if (field.find_first_of(",\"\r\n") == std::string_view::npos) {
    return std::string(field);
  }
  std::string out = "\"";
  for (char c : field) {
    if (c == '"') out.push_back('"');
    out.push_back(c);
  }
  out.push_back('"');
  return out;
}

void WriteCsvRow(std::ostream& out, const std::vector<std::string>& fields) {
  for (std::size_t i = 0; i < fields.size(); ++i) {
    if (i > 0) out << ',';
    out << CsvEscape(fields[i]);
  }
  out << '\n';
}

std::string FormatDouble(double v) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

absl::StatusOr<Dataset> DatasetFromCsv(const CsvTable& table,
                                       TestFamily family) {
  const auto& h = table.header;
  const std::size_t n = table.rows.size();
  // Data lines start at file line 2.
  if (family == TestFamily::kMvnMean) {
    std::vector<int> cols;
    for (int j = 1;; ++j) {
      const int idx = ColumnIndex(h, absl::StrCat("x", j));
      if (idx < 0) break;
      cols.push_back(idx);
    }
    if (cols.empty()) {
      return absl::InvalidArgumentError(
          "multivariate input needs columns x1..xd");
    }
    // A gap such as x1,x3 is almost certainly a mistake; refuse it rather
    // than silently dropping columns.
    for (const std::string& name : h) {
      int j = 0;
      if (name.size() > 1 && name[0] == 'x' && absl::SimpleAtoi(name.substr(1), &j) &&
          (j < 1 || static_cast<std::size_t>(j) > cols.size())) {
        return absl::InvalidArgumentError(absl::StrCat(
            "column '", name, "' is not part of a consecutive x1..x", cols.size(), " run"));
      }
    }
    std::vector<double> values;
    values.reserve(n * cols.size());
    for (std::size_t r = 0; r < n; ++r) {
      for (std::size_t j = 0; j < cols.size(); ++j) {
        TOT_ASSIGN_OR_RETURN(double v, ParseNumber(table.rows[r][cols[j]], r + 2,
                                                   h[cols[j]]));
        values.push_back(v);
      }
    }
    return Dataset::Create(std::move(values), cols.size());
  }

  const int value_col = ColumnIndex(h, "value");
  if (value_col < 0) return absl::InvalidArgumentError("missing column 'value'");
  std::vector<double> values(n);
  for (std::size_t r = 0; r < n; ++r) {
    TOT_ASSIGN_OR_RETURN(values[r],
                         ParseNumber(table.rows[r][value_col], r + 2, "value"));
  }
  if (family != TestFamily::kAnova) return Dataset::Create(std::move(values), 1);

  const int group_col = ColumnIndex(h, "group");
  if (group_col < 0) return absl::InvalidArgumentError("missing column 'group'");
  std::map<std::string, int> ids;
  for (const auto& row : table.rows) {
    if (row[group_col].empty()) {
      return absl::InvalidArgumentError("empty group label");
    }
    ids.emplace(row[group_col], 0);
  }
  std::vector<std::string> names;
  for (auto& [name, id] : ids) {
    id = static_cast<int>(names.size());
    names.push_back(name);
  }
  std::vector<int> groups(n);
  for (std::size_t r = 0; r < n; ++r) groups[r] = ids[table.rows[r][group_col]];
  return Dataset::Create(std::move(values), 1, std::move(groups), std::move(names));
}

absl::StatusOr<Dataset> ReadDatasetCsv(const std::string& path,
                                       TestFamily family) {
  TOT_ASSIGN_OR_RETURN(CsvTable table, ReadCsvFile(path));
  return DatasetFromCsv(table, family);
}

void WriteDatasetCsv(std::ostream& out, const Dataset& data, TestFamily family) {
  std::vector<std::string> header;
  const bool multivariate = family == TestFamily::kMvnMean || data.cols() > 1;
  if (multivariate) {
    for (std::size_t j = 0; j < data.cols(); ++j) header.push_back(absl::StrCat("x", j + 1));
  } else {
    header.push_back("value");
    if (data.has_groups()) header.push_back("group");
  }
  WriteCsvRow(out, header);
  std::vector<std::string> fields;
  for (std::size_t r = 0; r < data.rows(); ++r) {
    fields.clear();
    for (std::size_t j = 0; j < data.cols(); ++j) fields.push_back(FormatDouble(data.value(r, j)));
    if (!multivariate && data.has_groups()) fields.push_back(data.group_names()[data.group(r)]);
    WriteCsvRow(out, fields);
  }
}

}  // namespace tot
