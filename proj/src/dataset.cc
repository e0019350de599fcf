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

#include "src/dataset.h"

#include <algorithm>
#include <cmath>

#include "absl/status/status.h"
#include "absl/strings/str_cat.h"

namespace tot {

absl::StatusOr<Dataset> Dataset::Create(std::vector<double> values,
                                        std::size_t cols,
                                        std::vector<int> groups,
                                        std::vector<std::string> group_names) {
  if (cols == 0) return absl::InvalidArgumentError("dataset needs >= 1 column");
  if (values.size() % cols != 0) {
    return absl::InvalidArgumentError(absl::StrCat(
        "value count ", values.size(), " is not a multiple of ", cols));
  }
  for (double v : values) {
    if (!std::isfinite(v)) {
      return absl::InvalidArgumentError("dataset values must be finite");
    }
  }
  const std::size_t rows = values.size() / cols;
  if (!groups.empty()) {
    if (groups.size() != rows) {
      return absl::InvalidArgumentError(absl::StrCat(
          "group labels cover ", groups.size(), " rows, expected ", rows));
    }
    const int max_label = *std::max_element(groups.begin(), groups.end());
    if (*std::min_element(groups.begin(), groups.end()) < 0) {
      return absl::InvalidArgumentError("group labels must be >= 0");
    }
    if (group_names.empty()) {
      for (int g = 0; g <= max_label; ++g) group_names.push_back(absl::StrCat(g));
    }
    if (static_cast<std::size_t>(max_label) >= group_names.size()) {
      return absl::InvalidArgumentError("group label without a name");
    }
  }
  Dataset ds;
  ds.values_ = std::move(values);
  ds.cols_ = cols;
  ds.groups_ = std::move(groups);
  ds.group_names_ = std::move(group_names);
  return ds;
}

Dataset Dataset::Select(std::span<const std::size_t> row_indices) const {
  Dataset out;
  out.cols_ = cols_;
  out.group_names_ = group_names_;
  out.values_.reserve(row_indices.size() * cols_);
  for (std::size_t r : row_indices) {
    const auto src = row(r);
    out.values_.insert(out.values_.end(), src.begin(), src.end());
    if (!groups_.empty()) out.groups_.push_back(groups_[r]);
  }
  return out;
}

Dataset Dataset::WithValue(std::size_t row, std::size_t col, double v) const {
  Dataset out = *this;
  out.values_[row * cols_ + col] = v;
  return out;
}

}  // namespace tot
