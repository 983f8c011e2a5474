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

#include "hexqec/dem.hpp"

#include <cmath>

#include "gtest/gtest.h"
#include "hexqec/circuit_builder.hpp"
#include "hexqec/frame_sampler.hpp"
#include "hexqec/noise_model.hpp"
#include "support/test_support.hpp"

using namespace hexqec;
using hexqec::testing::with_fault;

namespace {

std::uint32_t qubit_at(const CodeLayout& layout, Coord c) {
    for (const auto& q : layout.qubits) {
        if (q.coord == c) {
            return q.id;
        }
    }
    throw std::logic_error("no qubit at coordinate");
}

std::size_t cycle_of_round(const Circuit& c, int round) {
    for (std::size_t k = 0; k < c.ops().size(); ++k) {
        if (c.ops()[k].kind == OpKind::Cycle && c.ops()[k].a == static_cast<std::uint32_t>(round)) {
            return k;
        }
    }
    throw std::logic_error("no cycle for round");
}

}  // namespace

TEST(dem, noiseless_circuit_has_no_mechanisms) {
    auto layout = build_layout(CodeFamily::Surface, Structure::HeavyHex, 3);
    auto c = apply_noise(build_memory_circuit(layout, 3, LogicalBasis::L1), BiasedNoise{0.0, Bias(0.5)});
    auto dem = extract_dem(c);
    EXPECT_TRUE(dem.mechanisms.empty());
    EXPECT_EQ(dem.num_detectors, 36u);
    EXPECT_EQ(dem.num_observables, 1u);
}

TEST(dem, data_z_fault_flips_adjacent_x_checks_in_one_round) {
    auto layout = build_layout(CodeFamily::Surface, Structure::Lattice, 3);
    auto clean = build_memory_circuit(layout, 3, LogicalBasis::L1);
    const auto q = qubit_at(layout, {1, 1});
    auto c = with_fault(clean, cycle_of_round(clean, 1) + 1, 0.0, 0.0, 0.01, q);
    auto dem = extract_dem(c);
    ASSERT_EQ(dem.mechanisms.size(), 1u);
    const auto& m = dem.mechanisms[0];
    EXPECT_DOUBLE_EQ(m.probability, 0.01);
    ASSERT_EQ(m.detectors.size(), 2u);
    EXPECT_EQ(m.observables, 0u);
    std::vector<Coord> sites;
    for (auto d : m.detectors) {
        const auto& tag = dem.detector_tags[d];
        EXPECT_EQ(tag.group, static_cast<int>(StabilizerGroup::S2));  // X checks
        EXPECT_EQ(tag.round, 1);
        sites.push_back(layout.stabilizers[static_cast<std::size_t>(tag.stabilizer)].site);
    }
    EXPECT_EQ(sites, (std::vector<Coord>{{0, 1}, {2, 1}}));

    // The fault lives only in the X-check group after splitting.
    auto parts = split_dem(dem);
    EXPECT_TRUE(parts.groups[static_cast<std::size_t>(StabilizerGroup::S1)].mechanisms.empty());
    EXPECT_EQ(parts.groups[static_cast<std::size_t>(StabilizerGroup::S2)].mechanisms.size(), 1u);
}

TEST(dem, identical_signatures_merge) {
    EXPECT_NEAR(merge_probability(0.01, 0.01), 0.0198, 1e-15);
    auto layout = build_layout(CodeFamily::Surface, Structure::Lattice, 3);
    auto clean = build_memory_circuit(layout, 3, LogicalBasis::L1);
    const auto q = qubit_at(layout, {1, 1});
    const auto at = cycle_of_round(clean, 1) + 1;
    auto c = with_fault(with_fault(clean, at, 0.0, 0.0, 0.01, q), at, 0.0, 0.0, 0.01, q);
    auto dem = extract_dem(c);
    ASSERT_EQ(dem.mechanisms.size(), 1u);
    EXPECT_NEAR(dem.mechanisms[0].probability, 0.0198, 1e-15);
}

TEST(dem, agrees_with_propagation_for_every_data_fault) {
    auto layout = build_layout(CodeFamily::Tailored, Structure::HeavyHex, 3);
    auto clean = build_memory_circuit(layout, 2, LogicalBasis::L2);
    const auto at = cycle_of_round(clean, 1) + 1;
    for (auto q : layout.ids_with_role(QubitRole::Data)) {
        for (Pauli p : {Pauli::X, Pauli::Y, Pauli::Z}) {
            PauliString ps;
            ps.set(q, p);
            auto expect = propagate_pauli(clean, at, ps);
            auto c = with_fault(clean, at, p == Pauli::X ? 0.1 : 0.0, p == Pauli::Y ? 0.1 : 0.0,
                                p == Pauli::Z ? 0.1 : 0.0, q);
            auto faults = enumerate_faults(c);
            ASSERT_EQ(faults.size(), 1u);
            EXPECT_EQ(faults[0].instruction, at);
            EXPECT_EQ(faults[0].detectors, expect.detectors);
            EXPECT_EQ(faults[0].observables != 0, !expect.observables.empty());
        }
    }
}

TEST(dem, fault_census_matches_noise_instructions) {
    auto layout = build_layout(CodeFamily::XZZX, Structure::HeavyHex, 3);
    auto c = apply_noise(build_memory_circuit(layout, 3, LogicalBasis::L1), BiasedNoise{0.001, Bias(0.5)});
    std::size_t expect = 0;
    for (const auto& op : c.ops()) {
        switch (op.kind) {
            case OpKind::E1:
                expect += 3;
                break;
            case OpKind::E2:
                expect += 15;
                break;
            case OpKind::EPrep:
            case OpKind::EMeas:
                expect += 1;
                break;
            default:
                break;
        }
    }
    EXPECT_EQ(enumerate_faults(c).size(), expect);
}

TEST(dem, predicts_sampled_detector_rates) {
    auto layout = build_layout(CodeFamily::Surface, Structure::HeavyHex, 3);
    auto c = apply_noise(build_memory_circuit(layout, 3, LogicalBasis::L2), BiasedNoise{0.004, Bias(10)});
    auto dem = extract_dem(c);
    std::vector<double> odd(dem.num_detectors, 0.0);
    double obs = 0;
    for (const auto& m : dem.mechanisms) {
        for (auto d : m.detectors) {
            odd[d] = odd[d] * (1 - m.probability) + (1 - odd[d]) * m.probability;
        }
        if (m.observables != 0) {
            obs = obs * (1 - m.probability) + (1 - obs) * m.probability;
        }
    }
    const std::size_t shots = 100000;
    auto batch = sample(c, shots, 5);
    for (std::uint32_t d = 0; d < dem.num_detectors; ++d) {
        double n = 0;
        for (std::size_t s = 0; s < shots; ++s) {
            n += batch.detectors.get(s, d) ? 1 : 0;
        }
        double sigma = std::sqrt(shots * odd[d] * (1 - odd[d]));
        EXPECT_NEAR(n, shots * odd[d], 5 * sigma + 1) << "detector " << d;
    }
    double flips = static_cast<double>(batch.observables.count_ones());
    EXPECT_NEAR(flips, shots * obs, 5 * std::sqrt(shots * obs * (1 - obs)) + 1);
}

TEST(dem, rejects_nondeterministic_detector) {
    Circuit c(1);
    c.prep(OpKind::PrepX, 0);
    auto r = c.measure(OpKind::MeasZ, 0);
    c.add_detector({{r}, {}});
    EXPECT_THROW(extract_dem(c), std::invalid_argument);

    Circuit unprepared(1);
    auto r2 = unprepared.measure(OpKind::MeasX, 0);
    unprepared.add_observable({{r2}, -1});
    EXPECT_THROW(extract_dem(unprepared), std::invalid_argument);
}

TEST(dem, text_round_trip) {
    auto layout = build_layout(CodeFamily::Tailored, Structure::Lattice, 3);
    auto c = apply_noise(build_memory_circuit(layout, 3, LogicalBasis::L1), BiasedNoise{0.003, Bias(0.5)});
    auto dem = extract_dem(c);
    auto back = DetectorErrorModel::parse(dem.str());
    EXPECT_EQ(back.num_detectors, dem.num_detectors);
    EXPECT_EQ(back.num_observables, dem.num_observables);
    EXPECT_EQ(back.mechanisms, dem.mechanisms);
    EXPECT_EQ(back.observable_groups, dem.observable_groups);
    ASSERT_EQ(back.detector_tags.size(), dem.detector_tags.size());
    for (std::size_t d = 0; d < dem.detector_tags.size(); ++d) {
        EXPECT_EQ(back.detector_tags[d].group, dem.detector_tags[d].group);
        EXPECT_EQ(back.detector_tags[d].stabilizer, dem.detector_tags[d].stabilizer);
        EXPECT_EQ(back.detector_tags[d].round, dem.detector_tags[d].round);
    }
}

TEST(dem, parse_forms_and_errors) {
    auto dem = DetectorErrorModel::parse("error 0.1 D0 D3 L0\nerror(0.2) D1\n# comment\n\nerror 0.05 L1\n");
    ASSERT_EQ(dem.mechanisms.size(), 3u);
    EXPECT_EQ(dem.num_detectors, 4u);
    EXPECT_EQ(dem.num_observables, 2u);
    EXPECT_EQ(dem.mechanisms[0].detectors, (std::vector<std::uint32_t>{0, 3}));
    EXPECT_EQ(dem.mechanisms[0].observables, 1u);
    EXPECT_DOUBLE_EQ(dem.mechanisms[1].probability, 0.2);
    EXPECT_EQ(dem.undetectable_logical, 1u);
    EXPECT_THROW(DetectorErrorModel::parse("error 1.5 D0"), std::invalid_argument);
    EXPECT_THROW(DetectorErrorModel::parse("error 0.1 Q0"), std::invalid_argument);
    try {
        DetectorErrorModel::parse("error 0.1 D0\nbogus\n");
        FAIL();
    } catch (const std::invalid_argument& e) {
        EXPECT_EQ(std::string(e.what()).rfind("line 2:", 0), 0u);
    }
}

TEST(dem, split_projects_cross_group_mechanisms) {
    DetectorErrorModel dem;
    dem.num_detectors = 2;
    dem.num_observables = 1;
    dem.detector_tags = {{0, 0, 0}, {1, 0, 0}};
    dem.observable_groups = {1};
    dem.mechanisms = {{0.01, {0, 1}, 1}};
    auto parts = split_dem(dem);
    ASSERT_EQ(parts.groups[0].mechanisms.size(), 1u);
    ASSERT_EQ(parts.groups[1].mechanisms.size(), 1u);
    EXPECT_EQ(parts.groups[0].mechanisms[0].detectors, (std::vector<std::uint32_t>{0}));
    EXPECT_EQ(parts.groups[0].mechanisms[0].observables, 0u);  // observable belongs to S2
    EXPECT_EQ(parts.groups[1].mechanisms[0].observables, 1u);
    EXPECT_DOUBLE_EQ(parts.groups[1].mechanisms[0].probability, 0.01);
    EXPECT_EQ(parts.local_to_global[1], (std::vector<std::uint32_t>{1}));
}

TEST(dem, split_decomposes_or_drops_hyperedges) {
    DetectorErrorModel dem;
    dem.num_detectors = 5;
    dem.num_observables = 1;
    dem.detector_tags.assign(5, DetectorTag{0, 0, 0});
    dem.observable_groups = {0};
    dem.mechanisms = {
        {0.01, {0, 1}, 0},
        {0.02, {2}, 1},
        {0.03, {0, 1, 2}, 1},  // = {0,1} + {2}
        {0.04, {0, 3, 4}, 0},  // no components
    };
    auto parts = split_dem(dem);
    EXPECT_EQ(parts.decomposed[0], 1u);
    EXPECT_EQ(parts.dropped[0], 1u);
    const auto& g = parts.groups[0];
    ASSERT_EQ(g.mechanisms.size(), 2u);
    EXPECT_EQ(g.mechanisms[0].detectors, (std::vector<std::uint32_t>{0, 1}));
    EXPECT_NEAR(g.mechanisms[0].probability, merge_probability(0.01, 0.03), 1e-15);
    EXPECT_EQ(g.mechanisms[1].detectors, (std::vector<std::uint32_t>{2}));
    EXPECT_NEAR(g.mechanisms[1].probability, merge_probability(0.02, 0.03), 1e-15);
}

TEST(dem, split_rejects_untagged_detectors) {
    DetectorErrorModel dem;
    dem.num_detectors = 1;
    dem.detector_tags = {DetectorTag{}};
    EXPECT_THROW(split_dem(dem), std::invalid_argument);
}

TEST(dem, heavy_hex_groups_have_graphlike_mechanisms) {
    for (auto family : {CodeFamily::Surface, CodeFamily::Tailored, CodeFamily::XZZX}) {
        for (auto basis : {LogicalBasis::L1, LogicalBasis::L2}) {
            auto layout = build_layout(family, Structure::HeavyHex, 3);
            auto c = apply_noise(build_memory_circuit(layout, 3, basis), BiasedNoise{0.002, Bias(0.5)});
            auto parts = split_dem(extract_dem(c));
            for (const auto& g : parts.groups) {
                for (const auto& m : g.mechanisms) {
                    EXPECT_LE(m.detectors.size(), 2u);
                    EXPECT_GT(m.probability, 0.0);
                    EXPECT_LE(m.probability, 0.5);
                }
            }
            EXPECT_EQ(parts.dropped[0] + parts.dropped[1], 0u) << to_string(family);
        }
    }
}
