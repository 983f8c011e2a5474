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

#include "hexqec/stats.hpp"

#include <cmath>
#include <tuple>
#include <stdexcept>

namespace hexqec {

std::pair<double, double> wilson_interval(std::size_t failures, std::size_t shots, double z) {
    if (shots == 0) {
        return {0.0, 1.0};
    }
    if (failures > shots) {
        throw std::invalid_argument("more failures than shots");
    }
    const double n = static_cast<double>(shots);
    const double phat = static_cast<double>(failures) / n;
    const double z2 = z * z;
    const double denom = 1 + z2 / n;
    const double centre = (phat + z2 / (2 * n)) / denom;
    const double half = z * std::sqrt(phat * (1 - phat) / n + z2 / (4 * n * n)) / denom;
    return {std::max(0.0, centre - half), std::min(1.0, centre + half)};
}

RateEstimate make_rate(std::size_t failures, std::size_t shots) {
    RateEstimate r;
    r.shots = shots;
    r.failures = failures;
    r.rate = shots == 0 ? 0.0 : static_cast<double>(failures) / static_cast<double>(shots);
    std::tie(r.ci_low, r.ci_high) = wilson_interval(failures, shots);
    return r;
}

std::vector<RateEstimate> logical_error_rates(const SampleBatch& batch, const std::vector<Correction>& corrections) {
    if (corrections.size() != batch.shots || batch.observables.rows() != batch.shots) {
        throw std::invalid_argument("corrections are not aligned with the sampled shots");
    }
    const std::size_t n_obs = batch.observables.cols();
    std::vector<std::size_t> failures(n_obs, 0);
    for (std::size_t s = 0; s < batch.shots; ++s) {
        for (std::size_t o = 0; o < n_obs; ++o) {
            bool predicted = (corrections[s].observables >> o) & 1u;
            if (predicted != batch.observables.get(s, o)) {
                ++failures[o];
            }
        }
    }
    std::vector<RateEstimate> out;
    for (auto f : failures) {
        out.push_back(make_rate(f, batch.shots));
    }
    return out;
}

double combine_total(double e1, double e2) { return 1 - (1 - e1) * (1 - e2); }

}  // namespace hexqec
