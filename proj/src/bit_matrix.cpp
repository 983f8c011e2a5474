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

#include "hexqec/bit_matrix.hpp"

#include <bit>
#include <stdexcept>

namespace hexqec {

std::vector<std::uint32_t> BitMatrix::row_ones(std::size_t r) const {
    std::vector<std::uint32_t> out;
    const auto* p = row(r);
    for (std::size_t w = 0; w < words_per_row_; ++w) {
        std::uint64_t v = p[w];
        while (v != 0) {
            out.push_back(static_cast<std::uint32_t>(w * 64 + static_cast<std::size_t>(std::countr_zero(v))));
            v &= v - 1;
        }
    }
    return out;
}

std::size_t BitMatrix::count_ones() const {
    std::size_t n = 0;
    for (auto w : data_) {
        n += static_cast<std::size_t>(std::popcount(w));
    }
    return n;
}

void BitMatrix::append_rows(const BitMatrix& other) {
    if (rows_ == 0 && cols_ == 0) {
        *this = other;
        return;
    }
    if (other.cols_ != cols_) {
        throw std::invalid_argument("column count mismatch when appending rows");
    }
    data_.insert(data_.end(), other.data_.begin(), other.data_.end());
    rows_ += other.rows_;
}

}  // namespace hexqec
