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

// Minimal RFC 4180 CSV handling and the dataset file contract: univariate
// tests read column `value`, ANOVA also reads `group` (string labels), and
// the multivariate mean test reads x1..xd.

#ifndef TOT_SRC_CSV_H_
#define TOT_SRC_CSV_H_

#include <iosfwd>
#include <string>
#include <string_view>
#include <vector>

#include "absl/status/status.h"
#include "absl/status/statusor.h"
#include "src/dataset.h"
#include "src/public_tests.h"

namespace tot {

struct CsvTable {
  std::vector<std::string> header;
  std::vector<std::vector<std::string>> rows;
};

// Parses text with a required header row. Accepts a UTF-8 BOM, CRLF line
// ends, and double-quoted fields with "" escapes. Every row must have as
// many fields as the header.
absl::StatusOr<CsvTable> ParseCsv(std::string_view text);
absl::StatusOr<CsvTable> ReadCsvFile(const std::string& path);

// Quotes a field only when it contains a comma, quote, or line break.
std::string CsvEscape(std::string_view field);
void WriteCsvRow(std::ostream& out, const std::vector<std::string>& fields);

// Shortest text that round-trips through strtod ("%.17g").
std::string FormatDouble(double v);

// Builds a dataset from a parsed table per the contract above. Group labels
// are numbered in sorted label order so the numbering does not depend on
// row order.
absl::StatusOr<Dataset> DatasetFromCsv(const CsvTable& table, TestFamily family);
absl::StatusOr<Dataset> ReadDatasetCsv(const std::string& path, TestFamily family);

// Inverse of DatasetFromCsv: columns `value` (+ `group`) or x1..xd.
void WriteDatasetCsv(std::ostream& out, const Dataset& data, TestFamily family);

}  // namespace tot

#endif  // TOT_SRC_CSV_H_
