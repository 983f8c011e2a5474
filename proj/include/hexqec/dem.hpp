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

#ifndef HEXQEC_DEM_HPP
#define HEXQEC_DEM_HPP

#include <array>
#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

#include "hexqec/circuit.hpp"

namespace hexqec {

struct ErrorMechanism {
    double probability = 0;
    std::vector<std::uint32_t> detectors;  // sorted, no duplicates
    std::uint64_t observables = 0;         // bit k set if observable k flips

    friend bool operator==(const ErrorMechanism&, const ErrorMechanism&) = default;
};

struct DetectorErrorModel {
    std::uint32_t num_detectors = 0;
    std::uint32_t num_observables = 0;
    std::vector<DetectorTag> detector_tags;  // one per detector
    std::vector<int> observable_groups;      // one per observable
    std::vector<ErrorMechanism> mechanisms;
    // Mechanisms that flip observables but no detector; they cannot be corrected.
    std::size_t undetectable_logical = 0;

    std::string str() const;
    static DetectorErrorModel parse(std::string_view text);
};

/// q1 (1 - q2) + q2 (1 - q1): probability that exactly one of two
/// independent mechanisms fires.
double merge_probability(double q1, double q2);

/// Every noise instruction's Pauli outcomes with their detector/observable
/// signatures, computed by backward sensitivity propagation. Identical
/// signatures are merged. Throws std::invalid_argument if some detector or
/// observable is not deterministic in the absence of noise.
DetectorErrorModel extract_dem(const Circuit& noisy);

/// One noise instruction outcome and its effect; used for exhaustive fault
/// injection.
struct ElementaryFault {
    std::size_t instruction = 0;
    double probability = 0;
    std::vector<std::uint32_t> detectors;
    std::uint64_t observables = 0;
};
std::vector<ElementaryFault> enumerate_faults(const Circuit& noisy);

struct SplitDem {
    std::array<DetectorErrorModel, 2> groups;
    // groups[g] detector k corresponds to global detector local_to_global[g][k].
    std::array<std::vector<std::uint32_t>, 2> local_to_global;
    std::array<std::size_t, 2> decomposed{0, 0};
    std::array<std::size_t, 2> dropped{0, 0};
};

/// Projects each mechanism onto the S1 and S2 detectors. An observable bit is
/// kept only in the group the observable is tagged with. Mechanisms with more
/// than two detectors in a group are decomposed into existing one- and
/// two-detector signatures when possible and dropped otherwise.
SplitDem split_dem(const DetectorErrorModel& dem);

}  // namespace hexqec

#endif
