/* Copyright 2026 The clinet-bench Authors. All Rights Reserved.

Licensed under the Apache License, Version 2.0 (the "License");
you may not use this file except in compliance with the License.
You may obtain a copy of the License at

    http://www.apache.org/licenses/LICENSE-2.0

Unless required by applicable law or agreed to in writing, software
distributed under the License is distributed on an "AS IS" BASIS,
WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
See the License for the specific language governing permissions and
limitations under the License.
==============================================================================*/

#pragma once

#include <cstddef>
#include <vector>

namespace clinet {

// Dense row-major rows x cols x channels array of doubles.
class Grid {
 public:
  Grid() = default;
  Grid(int rows, int cols, int channels = 1, double fill = 0.0)
      : rows_(rows),
        cols_(cols),
        channels_(channels),
        data_(static_cast<std::size_t>(rows) * cols * channels, fill) {}

  int rows() const { return rows_; }
  int cols() const { return cols_; }
  int channels() const { return channels_; }
  std::size_t size() const { return data_.size(); }

  bool SameShape(const Grid& other) const {
    return rows_ == other.rows_ && cols_ == other.cols_ &&
           channels_ == other.channels_;
  }

  double& at(int i, int j, int c = 0) { return data_[index(i, j, c)]; }
  double at(int i, int j, int c = 0) const { return data_[index(i, j, c)]; }

  std::vector<double>& data() { return data_; }
  const std::vector<double>& data() const { return data_; }

 private:
  std::size_t index(int i, int j, int c) const {
    return (static_cast<std::size_t>(i) * cols_ + j) * channels_ + c;
  }

  int rows_ = 0;
  int cols_ = 0;
  int channels_ = 1;
  std::vector<double> data_;
};

}  // namespace clinet
