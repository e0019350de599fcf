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

#ifndef TOT_SRC_DATASET_H_
#define TOT_SRC_DATASET_H_

#include <cstddef>
#include <span>
#include <string>
#include <vector>

#include "absl/status/statusor.h"

namespace tot {

// Row-major table of reals with optional public group labels. Group labels
// are dense integers 0..num_groups()-1; num_groups() is a property of the
// whole dataset and is preserved by Select() even if a subset is missing
// some groups.
class Dataset {
 public:
  Dataset() = default;

  static absl::StatusOr<Dataset> Create(std::vector<double> values,
                                        std::size_t cols,
                                        std::vector<int> groups = {},
                                        std::vector<std::string> group_names = {});

  std::size_t rows() const { return cols_ == 0 ? 0 : values_.size() / cols_; }
  std::size_t cols() const { return cols_; }
  bool has_groups() const { return !groups_.empty() || !group_names_.empty(); }
  std::size_t num_groups() const { return group_names_.size(); }

  double value(std::size_t row, std::size_t col = 0) const {
    return values_[row * cols_ + col];
  }
  std::span<const double> row(std::size_t r) const {
    return std::span<const double>(values_).subspan(r * cols_, cols_);
  }
  int group(std::size_t row) const { return groups_[row]; }
  std::span<const int> groups() const { return groups_; }
  const std::vector<std::string>& group_names() const { return group_names_; }
  std::span<const double> values() const { return values_; }

  Dataset Select(std::span<const std::size_t> row_indices) const;

  // Copy with one cell overwritten.
  Dataset WithValue(std::size_t row, std::size_t col, double v) const;

 private:
  std::vector<double> values_;
  std::size_t cols_ = 1;
  std::vector<int> groups_;
  std::vector<std::string> group_names_;
};

}  // namespace tot

#endif  // TOT_SRC_DATASET_H_
