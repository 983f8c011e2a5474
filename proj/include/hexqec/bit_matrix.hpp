// Copyright 2026 hexqec contributors
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

#ifndef HEXQEC_BIT_MATRIX_HPP
#define HEXQEC_BIT_MATRIX_HPP

#include <cstddef>
#include <cstdint>
#include <vector>

namespace hexqec {

/// Row-major packed bit matrix. Rows are padded to whole 64-bit words.
class BitMatrix {
  public:
    BitMatrix() = default;
    BitMatrix(std::size_t rows, std::size_t cols)
        : rows_(rows), cols_(cols), words_per_row_((cols + 63) / 64), data_(rows * words_per_row_, 0) {}

    std::size_t rows() const { return rows_; }
    std::size_t cols() const { return cols_; }
    std::size_t words_per_row() const { return words_per_row_; }

    bool get(std::size_t r, std::size_t c) const { return (data_[r * words_per_row_ + c / 64] >> (c % 64)) & 1u; }
    void set(std::size_t r, std::size_t c, bool v) {
        auto& w = data_[r * words_per_row_ + c / 64];
        const std::uint64_t m = std::uint64_t{1} << (c % 64);
        w = v ? (w | m) : (w & ~m);
    }
    void flip(std::size_t r, std::size_t c) { data_[r * words_per_row_ + c / 64] ^= std::uint64_t{1} << (c % 64); }

    std::uint64_t* row(std::size_t r) { return data_.data() + r * words_per_row_; }
    const std::uint64_t* row(std::size_t r) const { return data_.data() + r * words_per_row_; }

    bool row_any(std::size_t r) const {
        for (std::size_t w = 0; w < words_per_row_; ++w) {
            if (row(r)[w] != 0) {
                return true;
            }
        }
        return false;
    }
    /// Column indices of set bits in row r.
    std::vector<std::uint32_t> row_ones(std::size_t r) const;
    std::size_t count_ones() const;

    /// Appends the rows of `other`, which must have the same column count.
    void append_rows(const BitMatrix& other);

    friend bool operator==(const BitMatrix&, const BitMatrix&) = default;

  private:
    std::size_t rows_ = 0;
    std::size_t cols_ = 0;
    std::size_t words_per_row_ = 0;
    std::vector<std::uint64_t> data_;
};

}  // namespace hexqec

#endif
