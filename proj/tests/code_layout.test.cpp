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

#include "hexqec/code_layout.hpp"

#include <algorithm>
#include <set>

#include "gtest/gtest.h"

using namespace hexqec;

namespace {

// Stabilizers as (letters, sorted device indices) after mapping to the Ithaca device.
std::vector<std::pair<std::string, std::vector<std::uint32_t>>> mapped_group(const CodeLayout& layout,
                                                                               StabilizerGroup g) {
    auto map = ithaca_index_map(layout);
    std::vector<std::pair<std::string, std::vector<std::uint32_t>>> out;
    for (const auto& s : layout.stabilizers) {
        if (s.group != g) {
            continue;
        }
        std::string letters;
        std::vector<std::uint32_t> ids;
        for (std::size_t k = 0; k < s.data_ids.size(); ++k) {
            letters += pauli_char(s.letters[k]);
            ids.push_back(map[s.data_ids[k]]);
        }
        out.emplace_back(letters, ids);
    }
    return out;
}

using Group = std::vector<std::pair<std::string, std::vector<std::uint32_t>>>;

}  // namespace

TEST(code_layout, heavy_hex_d3_counts) {
    for (auto family : {CodeFamily::Surface, CodeFamily::Tailored, CodeFamily::XZZX}) {
        auto layout = build_layout(family, Structure::HeavyHex, 3);
        EXPECT_EQ(layout.count(QubitRole::Data), 13u);
        EXPECT_EQ(layout.count(QubitRole::Flag), 36u);
        EXPECT_EQ(layout.count(QubitRole::Syndrome), 12u);
    }
}

TEST(code_layout, lattice_d3_counts) {
    auto layout = build_layout(CodeFamily::Surface, Structure::Lattice, 3);
    EXPECT_EQ(layout.count(QubitRole::Data), 13u);
    EXPECT_EQ(layout.count(QubitRole::Flag), 0u);
    EXPECT_EQ(layout.count(QubitRole::Syndrome), 12u);
}

TEST(code_layout, heavy_hex_flag_counts_match_enumeration) {
    // Frozen output of tests/oracles/enumerate_flags.py.
    const std::vector<std::tuple<int, std::size_t, std::size_t, std::size_t>> expected{
        {3, 13, 36, 12}, {5, 41, 120, 40}, {7, 85, 252, 84}, {9, 145, 432, 144}, {11, 221, 660, 220}};
    for (auto [d, nd, nf, ns] : expected) {
        auto layout = build_layout(CodeFamily::Tailored, Structure::HeavyHex, d);
        EXPECT_EQ(layout.count(QubitRole::Data), nd) << d;
        EXPECT_EQ(layout.count(QubitRole::Flag), nf) << d;
        EXPECT_EQ(layout.count(QubitRole::Syndrome), ns) << d;
    }
}

TEST(code_layout, all_layouts_validate) {
    for (auto family : {CodeFamily::Surface, CodeFamily::Tailored, CodeFamily::XZZX}) {
        for (auto structure : {Structure::Lattice, Structure::HeavyHex}) {
            for (int d : {3, 5, 7, 9, 11}) {
                auto layout = build_layout(family, structure, d);
                auto report = validate_layout(layout);
                EXPECT_TRUE(report.empty()) << to_string(family) << " " << to_string(structure) << " d=" << d
                                            << ": " << (report.empty() ? "" : report.front().message);
                auto n = static_cast<std::size_t>(d * d + (d - 1) * (d - 1));
                EXPECT_EQ(layout.stabilizers.size(), n - 1);
            }
        }
    }
}

TEST(code_layout, rejects_bad_distance) {
    EXPECT_THROW(build_layout(CodeFamily::Surface, Structure::Lattice, 4), std::invalid_argument);
    EXPECT_THROW(build_layout(CodeFamily::Surface, Structure::Lattice, 1), std::invalid_argument);
    EXPECT_THROW(build_layout(CodeFamily::Surface, Structure::HeavyHex, -3), std::invalid_argument);
}

TEST(code_layout, tailored_groups_on_ithaca) {
    auto layout = build_layout(CodeFamily::Tailored, Structure::HeavyHex, 3);
    Group s1{{"YYY", {1, 16, 28}},    {"YYYY", {5, 16, 20, 32}}, {"YYY", {9, 20, 36}},
             {"YYY", {28, 44, 55}},   {"YYYY", {32, 44, 48, 59}}, {"YYY", {36, 48, 63}}};
    Group s2{{"XXX", {1, 5, 16}},     {"XXX", {5, 9, 20}},        {"XXXX", {16, 28, 32, 44}},
             {"XXXX", {20, 32, 36, 48}}, {"XXX", {44, 55, 59}},   {"XXX", {48, 59, 63}}};
    EXPECT_EQ(mapped_group(layout, StabilizerGroup::S1), s1);
    EXPECT_EQ(mapped_group(layout, StabilizerGroup::S2), s2);
}

TEST(code_layout, surface_groups_on_ithaca) {
    auto layout = build_layout(CodeFamily::Surface, Structure::HeavyHex, 3);
    auto s1 = mapped_group(layout, StabilizerGroup::S1);
    ASSERT_EQ(s1.size(), 6u);
    EXPECT_EQ(s1[0], (std::pair<std::string, std::vector<std::uint32_t>>{"ZZZ", {1, 16, 28}}));
    EXPECT_EQ(s1[4], (std::pair<std::string, std::vector<std::uint32_t>>{"ZZZZ", {32, 44, 48, 59}}));
}

TEST(code_layout, xzzx_groups_on_ithaca) {
    auto layout = build_layout(CodeFamily::XZZX, Structure::HeavyHex, 3);
    Group s1{{"XZX", {1, 16, 28}},    {"XZZX", {5, 16, 20, 32}}, {"XZX", {9, 20, 36}},
             {"XZX", {28, 44, 55}},   {"XZZX", {32, 44, 48, 59}}, {"XZX", {36, 48, 63}}};
    Group s2{{"ZZX", {1, 5, 16}},     {"ZZX", {5, 9, 20}},        {"XZZX", {16, 28, 32, 44}},
             {"XZZX", {20, 32, 36, 48}}, {"XZZ", {44, 55, 59}},   {"XZZ", {48, 59, 63}}};
    EXPECT_EQ(mapped_group(layout, StabilizerGroup::S1), s1);
    EXPECT_EQ(mapped_group(layout, StabilizerGroup::S2), s2);
}

TEST(code_layout, ithaca_map_is_injective_onto_61_indices) {
    auto layout = build_layout(CodeFamily::Tailored, Structure::HeavyHex, 3);
    auto map = ithaca_index_map(layout);
    std::set<std::uint32_t> used(map.begin(), map.end());
    EXPECT_EQ(used.size(), 61u);
    EXPECT_LT(*used.rbegin(), 65u);
    for (auto absent : {0u, 27u, 37u, 64u}) {
        EXPECT_EQ(used.count(absent), 0u) << absent;
    }
    std::set<std::uint32_t> data;
    for (auto q : layout.ids_with_role(QubitRole::Data)) {
        data.insert(map[q]);
    }
    EXPECT_EQ(data, (std::set<std::uint32_t>{1, 5, 9, 16, 20, 28, 32, 36, 44, 48, 55, 59, 63}));
    EXPECT_THROW(ithaca_index_map(build_layout(CodeFamily::Tailored, Structure::HeavyHex, 5)),
                 std::invalid_argument);
    EXPECT_THROW(ithaca_index_map(build_layout(CodeFamily::Tailored, Structure::Lattice, 3)),
                 std::invalid_argument);
}

TEST(code_layout, families_share_positions) {
    for (auto structure : {Structure::Lattice, Structure::HeavyHex}) {
        auto a = build_layout(CodeFamily::Surface, structure, 5);
        for (auto family : {CodeFamily::Tailored, CodeFamily::XZZX}) {
            auto b = build_layout(family, structure, 5);
            ASSERT_EQ(a.qubits.size(), b.qubits.size());
            for (std::size_t k = 0; k < a.qubits.size(); ++k) {
                EXPECT_EQ(a.qubits[k].coord, b.qubits[k].coord);
                EXPECT_EQ(a.qubits[k].role, b.qubits[k].role);
            }
            EXPECT_EQ(a.couplings, b.couplings);
        }
    }
}

TEST(code_layout, logical_letters) {
    auto letters_of = [](const PauliString& p) {
        std::set<Pauli> out;
        for (auto [q, l] : p.terms()) {
            out.insert(l);
        }
        return out;
    };
    auto surface = build_layout(CodeFamily::Surface, Structure::Lattice, 3);
    EXPECT_EQ(letters_of(surface.logicals[0]), std::set<Pauli>{Pauli::X});
    EXPECT_EQ(letters_of(surface.logicals[1]), std::set<Pauli>{Pauli::Z});
    auto tailored = build_layout(CodeFamily::Tailored, Structure::HeavyHex, 3);
    EXPECT_EQ(letters_of(tailored.logicals[0]), std::set<Pauli>{Pauli::X});
    EXPECT_EQ(letters_of(tailored.logicals[1]), std::set<Pauli>{Pauli::Y});
    for (auto family : {CodeFamily::Surface, CodeFamily::Tailored, CodeFamily::XZZX}) {
        auto l = build_layout(family, Structure::HeavyHex, 5);
        EXPECT_EQ(l.logicals[0].weight(), 5u);
        EXPECT_FALSE(l.logicals[0].commutes_with(l.logicals[1]));
    }
}

TEST(code_layout, validation_flags_flipped_letter) {
    auto layout = build_layout(CodeFamily::Tailored, Structure::HeavyHex, 3);
    auto it = std::find_if(layout.stabilizers.begin(), layout.stabilizers.end(),
                           [](const auto& s) { return s.group == StabilizerGroup::S1; });
    ASSERT_EQ(it->letters[0], Pauli::Y);
    it->letters[0] = Pauli::X;
    auto report = validate_layout(layout);
    EXPECT_TRUE(std::any_of(report.begin(), report.end(),
                            [](const auto& v) { return v.kind == ViolationKind::Commutation; }));
}

TEST(code_layout, validation_flags_degree_four) {
    auto layout = build_layout(CodeFamily::Surface, Structure::HeavyHex, 3);
    auto s = layout.stabilizers[1].syndrome_id;
    std::uint32_t added = 0;
    for (std::uint32_t q = 0; q < layout.qubits.size() && added < 2; ++q) {
        if (q != s && layout.qubits[q].role == QubitRole::Data) {
            layout.couplings.emplace_back(s, q);
            ++added;
        }
    }
    auto report = validate_layout(layout);
    EXPECT_TRUE(std::any_of(report.begin(), report.end(),
                            [](const auto& v) { return v.kind == ViolationKind::Degree; }));
}

TEST(code_layout, heavy_hex_patch_shape) {
    auto layout = build_layout(CodeFamily::Tailored, Structure::HeavyHex, 5);
    for (const auto& s : layout.stabilizers) {
        if (s.weight() == 4) {
            EXPECT_EQ(s.flag_ids.size(), 6u);
        }
        // Data qubits are never coupled to the syndrome directly.
        for (auto a : s.data_anchors) {
            EXPECT_NE(a, s.syndrome_id);
        }
    }
}

TEST(code_layout, sub_layout_reindexes) {
    auto layout = build_layout(CodeFamily::Surface, Structure::HeavyHex, 3);
    std::vector<std::size_t> keep{1};
    auto sub = sub_layout(layout, keep);
    ASSERT_EQ(sub.stabilizers.size(), 1u);
    EXPECT_EQ(sub.qubits.size(), 1 + layout.stabilizers[1].weight() + layout.stabilizers[1].flag_ids.size());
    for (auto q : sub.stabilizers[0].data_ids) {
        EXPECT_EQ(sub.qubits[q].role, QubitRole::Data);
    }
}
