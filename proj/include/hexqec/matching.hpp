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

#ifndef HEXQEC_MATCHING_HPP
#define HEXQEC_MATCHING_HPP

#include <cstdint>
#include <vector>

namespace hexqec {

struct WeightedEdge {
    std::uint32_t u = 0;
    std::uint32_t v = 0;
    double weight = 0;  // non-negative
};

/// Minimum-weight perfect matching on a general graph (weighted blossom).
/// Weights are quantized to integers with about 2^-30 relative resolution.
/// Returns mate[v] for every node. Throws std::invalid_argument on negative
/// or non-finite weights and std::runtime_error if no perfect matching exists.
std::vector<std::uint32_t> min_weight_perfect_matching(std::uint32_t num_nodes, const std::vector<WeightedEdge>& edges);

/// Exhaustive reference for small graphs. Returns the optimal total weight or
/// a negative value if no perfect matching exists.
double brute_force_matching_weight(std::uint32_t num_nodes, const std::vector<WeightedEdge>& edges);

/// Sum of edge weights used by `mate`, taking the lightest parallel edge.
double matching_weight(const std::vector<std::uint32_t>& mate, const std::vector<WeightedEdge>& edges);

}  // namespace hexqec

#endif
