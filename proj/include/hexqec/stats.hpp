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

#ifndef HEXQEC_STATS_HPP
#define HEXQEC_STATS_HPP

#include <cstddef>
#include <utility>
#include <vector>

#include "hexqec/decoder.hpp"
#include "hexqec/frame_sampler.hpp"

namespace hexqec {

inline constexpr double kZ95 = 1.959963984540054;

struct RateEstimate {
    std::size_t shots = 0;
    std::size_t failures = 0;
    double rate = 0;
    double ci_low = 0;
    double ci_high = 0;
};

/// Wilson score interval for `failures` out of `shots`.
std::pair<double, double> wilson_interval(std::size_t failures, std::size_t shots, double z = kZ95);

RateEstimate make_rate(std::size_t failures, std::size_t shots);

/// Per-observable failure rate: predicted flip differs from the sampled flip.
/// Throws std::invalid_argument if the correction count differs from the shot
/// count.
std::vector<RateEstimate> logical_error_rates(const SampleBatch& batch, const std::vector<Correction>& corrections);

/// 1 - (1 - e1)(1 - e2).
double combine_total(double e1, double e2);

}  // namespace hexqec

#endif
