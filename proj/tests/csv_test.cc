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

#include <sstream>

#include "gtest/gtest.h"
#include "src/rng.h"
#include "src/sim_harness.h"

namespace tot {
namespace {

TEST(CsvTest, ParsesQuotesCrlfAndBom) {
  const auto t = *ParseCsv("\xEF\xBB\xBFvalue,group\r\n1.5,\"a,b\"\r\n\r\n-2,\"say \"\"hi\"\"\"\n");
  ASSERT_EQ(t.header.size(), 2u);
  EXPECT_EQ(t.header[0], "value");
  ASSERT_EQ(t.rows.size(), 2u);
  EXPECT_EQ(t.rows[0][1], "a,b");
  EXPECT_EQ(t.rows[1][1], "say \"hi\"");
}

TEST(CsvTest, RejectsMalformedInput) {
  EXPECT_FALSE(ParseCsv("value\n1,2\n").ok());
  EXPECT_FALSE(ParseCsv("value\n\"1\n").ok());
  EXPECT_FALSE(DatasetFromCsv(*ParseCsv("x\n1\n"), TestFamily::kZ).ok());
  EXPECT_FALSE(DatasetFromCsv(*ParseCsv("value\nabc\n"), TestFamily::kZ).ok());
  EXPECT_FALSE(DatasetFromCsv(*ParseCsv("value\n1\n"), TestFamily::kAnova).ok());
  EXPECT_FALSE(DatasetFromCsv(*ParseCsv("x1,x3\n1,2\n"), TestFamily::kMvnMean).ok());
  EXPECT_FALSE(ReadDatasetCsv("/nonexistent/file.csv", TestFamily::kZ).ok());
}

TEST(CsvTest, EscapeRoundTrip) {
  for (const std::string s : {"plain", "a,b", "q\"uote", "line\nbreak", ""}) {
    std::ostringstream out;
    WriteCsvRow(out, {"h"});
    WriteCsvRow(out, {s});
    const auto t = *ParseCsv(out.str());
    if (s.empty()) continue;  // blank lines are skipped on read
    ASSERT_EQ(t.rows.size(), 1u);
    EXPECT_EQ(t.rows[0][0], s);
  }
  EXPECT_EQ(std::stod(FormatDouble(0.1)), 0.1);
}

TEST(CsvTest, DatasetRoundTrip) {
  Rng rng = MakeRng(3, 0);
  const std::vector<std::pair<TestFamily, GeneratorSpec>> cases = {
      {TestFamily::kZ, {GeneratorFamily::kNormal, 17, StandardizedMean{0.3}}},
      {TestFamily::kAnova, {GeneratorFamily::kAnova, 13, AnovaEffect{0.5, 4}}},
      {TestFamily::kMvnMean, {GeneratorFamily::kMvn, 9, MeanVector{{1.0, -2.0, 0.5}}}},
      {TestFamily::kMvnMean, {GeneratorFamily::kMvn, 5, MeanVector{{0.2}}}},
  };
  for (const auto& [family, spec] : cases) {
    const Dataset data = *GenerateDataset(spec, rng);
    std::ostringstream out;
    WriteDatasetCsv(out, data, family);
    const Dataset back = *DatasetFromCsv(*ParseCsv(out.str()), family);
    ASSERT_EQ(back.rows(), data.rows());
    ASSERT_EQ(back.cols(), data.cols());
    for (std::size_t i = 0; i < data.values().size(); ++i) {
      EXPECT_EQ(back.values()[i], data.values()[i]);
    }
    if (family == TestFamily::kAnova) {
      EXPECT_EQ(back.num_groups(), data.num_groups());
      for (std::size_t i = 0; i < data.rows(); ++i) {
        EXPECT_EQ(back.group_names()[back.group(i)], data.group_names()[data.group(i)]);
      }
    }
  }
}

}  // namespace
}  // namespace tot
