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

#include "hexqec/decoder.hpp"

#include <cmath>

#include "gtest/gtest.h"
#include "hexqec/circuit_builder.hpp"
#include "hexqec/matching.hpp"
#include "hexqec/noise_model.hpp"

using namespace hexqec;

namespace {

double q_for_weight(double w) { return 1.0 / (1.0 + std::exp(w)); }

DetectorErrorModel group_model(std::uint32_t detectors, std::vector<ErrorMechanism> mechanisms) {
    DetectorErrorModel dem;
    dem.num_detectors = detectors;
    dem.num_observables = 1;
    dem.detector_tags.assign(detectors, DetectorTag{0, 0, 0});
    dem.observable_groups = {0};
    dem.mechanisms = std::move(mechanisms);
    return dem;
}

}  // namespace

TEST(decoder, edge_weight_formula) {
    EXPECT_NEAR(edge_weight(0.01), std::log(99.0), 1e-12);
    EXPECT_NEAR(edge_weight(0.01), 4.595, 1e-3);
    EXPECT_NEAR(edge_weight(0.0), std::log((1 - 1e-15) / 1e-15), 1e-9);
    EXPECT_EQ(edge_weight(0.5), 0.0);
    EXPECT_EQ(edge_weight(0.7), 0.0);
}

TEST(decoder, parallel_edges_merge) {
    auto g = build_matching_graph(group_model(2, {{0.01, {0, 1}, 0}, {0.01, {0, 1}, 0}}));
    ASSERT_EQ(g.edges.size(), 1u);
    EXPECT_NEAR(g.edges[0].probability, 0.0198, 1e-15);
    EXPECT_NEAR(g.edges[0].weight, std::log(0.9802 / 0.0198), 1e-12);
}

TEST(decoder, graph_rejects_hyperedges_and_clamps) {
    EXPECT_THROW(build_matching_graph(group_model(3, {{0.01, {0, 1, 2}, 0}})), std::invalid_argument);
    auto g = build_matching_graph(group_model(1, {{0.6, {0}, 0}}));
    EXPECT_EQ(g.clamped, 1u);
    EXPECT_EQ(g.edges[0].weight, 0.0);
    EXPECT_EQ(g.edges[0].v, g.boundary());
}

TEST(decoder, four_node_example) {
    // Path weights ab:1 cd:1 ac:3 bd:3 ad:10 bc:10; only ab carries the observable.
    auto dem = group_model(4, {{q_for_weight(1), {0, 1}, 1},
                               {q_for_weight(1), {2, 3}, 0},
                               {q_for_weight(3), {0, 2}, 0},
                               {q_for_weight(3), {1, 3}, 0},
                               {q_for_weight(10), {0, 3}, 0},
                               {q_for_weight(10), {1, 2}, 0}});
    MatchingDecoder decoder(build_matching_graph(dem));
    EXPECT_NEAR(decoder.distance(0, 1), 1.0, 1e-9);
    EXPECT_NEAR(decoder.distance(0, 3), 4.0, 1e-9);  // via b or c
    EXPECT_EQ(decoder.decode({0, 1, 2, 3}).observables, 1u);

    std::vector<WeightedEdge> edges{{0, 1, 1}, {2, 3, 1}, {0, 2, 3}, {1, 3, 3}, {0, 3, 10}, {1, 2, 10}};
    auto mate = min_weight_perfect_matching(4, edges);
    EXPECT_EQ(mate, (std::vector<std::uint32_t>{1, 0, 3, 2}));
    EXPECT_DOUBLE_EQ(matching_weight(mate, edges), 2.0);
}

TEST(decoder, empty_syndrome_and_cancellation) {
    auto dem = group_model(2, {{0.01, {0}, 1}, {0.01, {0, 1}, 0}, {0.01, {1}, 0}});
    MatchingDecoder decoder(build_matching_graph(dem));
    EXPECT_EQ(decoder.decode({}).observables, 0u);
    EXPECT_EQ(decoder.decode({1, 1}).observables, 0u);
    EXPECT_EQ(decoder.decode({0}).observables, 1u);
    EXPECT_EQ(decoder.decode_bits({0, 1}).observables, 0u);
    EXPECT_THROW(decoder.decode_bits({0}), std::invalid_argument);
    EXPECT_THROW(decoder.decode({5}), std::invalid_argument);
}

TEST(decoder, boundary_pairs_when_cheaper) {
    // Two far-apart detectors each next to the boundary.
    auto dem = group_model(2, {{0.1, {0}, 1}, {0.1, {1}, 0}, {1e-6, {0, 1}, 0}});
    MatchingDecoder decoder(build_matching_graph(dem));
    EXPECT_EQ(decoder.decode({0, 1}).observables, 1u);
}

TEST(decoder, disconnected_graph_is_rejected) {
    auto dem = group_model(3, {{0.1, {0, 1}, 0}});
    MatchingDecoder decoder(build_matching_graph(dem));
    EXPECT_EQ(decoder.decode({0, 1}).observables, 0u);
    EXPECT_THROW(decoder.decode({2}), std::runtime_error);
}

TEST(decoder, group_graph_node_count) {
    auto layout = build_layout(CodeFamily::Surface, Structure::HeavyHex, 3);
    for (int rounds : {2, 3, 5}) {
        auto c = apply_noise(build_memory_circuit(layout, rounds, LogicalBasis::L1), BiasedNoise{0.001, Bias(0.5)});
        MemoryDecoder decoder(c);
        const auto g = static_cast<std::size_t>(decoder.group());
        EXPECT_EQ(decoder.split().groups[g].num_detectors, 6u * static_cast<std::size_t>(rounds + 1));
    }
}

TEST(decoder, corrects_every_single_fault_at_distance_three) {
    for (auto structure : {Structure::HeavyHex, Structure::Lattice}) {
        for (auto family : {CodeFamily::Surface, CodeFamily::Tailored, CodeFamily::XZZX}) {
            for (auto basis : {LogicalBasis::L1, LogicalBasis::L2}) {
                auto layout = build_layout(family, structure, 3);
                auto c = apply_noise(build_memory_circuit(layout, 3, basis), BiasedNoise{0.001, Bias(0.5)});
                MemoryDecoder decoder(c);
                EXPECT_EQ(decoder.undetectable_logical(), 0u);
                std::size_t failures = 0;
                auto faults = enumerate_faults(c);
                for (const auto& f : faults) {
                    BitMatrix bits(1, c.detectors().size());
                    for (auto d : f.detectors) {
                        bits.set(0, d, true);
                    }
                    if (decoder.decode_shot(bits, 0).observables != f.observables) {
                        ++failures;
                    }
                }
                EXPECT_GT(faults.size(), 1000u);
                EXPECT_EQ(failures, 0u) << to_string(structure) << ' ' << to_string(family) << " basis "
                                        << static_cast<int>(basis);
            }
        }
    }
}

TEST(decoder, memory_decoder_requires_tagged_observable) {
    Circuit c(1);
    c.prep(OpKind::PrepZ, 0);
    auto r = c.measure(OpKind::MeasZ, 0);
    c.add_detector({{r}, {0, 0, 0}});
    EXPECT_THROW(MemoryDecoder{c}, std::invalid_argument);
}
