// Copyright 2026 The dcrv Authors
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

#ifndef DCRV_MATRIX_H_
#define DCRV_MATRIX_H_

#include <cstddef>
#include <vector>

namespace dcrv {

// Dense row-major square matrix; just enough for K x K moment tables.
template <typename T>
class SquareMatrix {
 public:
  SquareMatrix() = default;
  explicit SquareMatrix(int size, const T& fill = T(0))
      : size_(size), data_(static_cast<std::size_t>(size) * size, fill) {}

  int size() const { return size_; }

  // 0-based.
  T& operator()(int row, int col) { return data_[index(row, col)]; }
  const T& operator()(int row, int col) const { return data_[index(row, col)]; }

  bool operator==(const SquareMatrix&) const = default;

 private:
  std::size_t index(int row, int col) const {
    return static_cast<std::size_t>(row) * size_ + col;
  }

  int size_ = 0;
  std::vector<T> data_;
};

}  // namespace dcrv

#endif  // DCRV_MATRIX_H_
