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

#include "hexqec/matching.hpp"

#include <random>

#include "gtest/gtest.h"

using namespace hexqec;

namespace {

std::vector<WeightedEdge> random_graph(std::mt19937_64& rng, std::uint32_t n, double density) {
    std::uniform_real_distribution<double> unit(0.0, 1.0);
    std::vector<WeightedEdge> edges;
    for (std::uint32_t u = 0; u < n; ++u) {
        for (std::uint32_t v = u + 1; v < n; ++v) {
            if (unit(rng) < density) {
                edges.push_back({u, v, std::floor(unit(rng) * 100)});
            }
        }
    }
    return edges;
}

}  // namespace

TEST(matching, agrees_with_brute_force_on_random_graphs) {
    std::mt19937_64 rng(7);
    int solved = 0;
    for (int trial = 0; trial < 400; ++trial) {
        std::uint32_t n = 2 * (1 + static_cast<std::uint32_t>(rng() % 6));
        double density = trial % 2 == 0 ? 1.0 : 0.5;
        auto edges = random_graph(rng, n, density);
        double expect = brute_force_matching_weight(n, edges);
        if (expect < 0) {
            EXPECT_THROW(min_weight_perfect_matching(n, edges), std::runtime_error);
            continue;
        }
        auto mate = min_weight_perfect_matching(n, edges);
        for (std::uint32_t u = 0; u < n; ++u) {
            ASSERT_EQ(mate[mate[u]], u);
            ASSERT_NE(mate[u], u);
        }
        EXPECT_NEAR(matching_weight(mate, edges), expect, 1e-6) << "trial " << trial;
        ++solved;
    }
    EXPECT_GT(solved, 250);
}

TEST(matching, parallel_edges_use_the_lightest) {
    std::vector<WeightedEdge> edges{{0, 1, 5.0}, {0, 1, 1.0}, {2, 3, 0.0}, {0, 2, 0.1}, {1, 3, 0.1}};
    auto mate = min_weight_perfect_matching(4, edges);
    EXPECT_EQ(mate[0], 2u);
    EXPECT_EQ(mate[1], 3u);
    EXPECT_DOUBLE_EQ(brute_force_matching_weight(4, edges), 0.2);
}

TEST(matching, real_valued_weights) {
    std::vector<WeightedEdge> edges{{0, 1, 1.3}, {2, 3, 1.3}, {0, 2, 1.25}, {1, 3, 1.36}, {0, 3, 3.0}, {1, 2, 3.0}};
    auto mate = min_weight_perfect_matching(4, edges);
    EXPECT_EQ(mate[0], 1u);
    EXPECT_EQ(mate[2], 3u);
}

TEST(matching, rejects_bad_input) {
    EXPECT_THROW(min_weight_perfect_matching(3, {{0, 1, 1.0}}), std::runtime_error);
    EXPECT_THROW(min_weight_perfect_matching(2, {{0, 1, -1.0}}), std::invalid_argument);
    EXPECT_THROW(min_weight_perfect_matching(2, {{0, 2, 1.0}}), std::invalid_argument);
    EXPECT_THROW(min_weight_perfect_matching(4, {{0, 1, 1.0}}), std::runtime_error);
    EXPECT_TRUE(min_weight_perfect_matching(0, {}).empty());
}
