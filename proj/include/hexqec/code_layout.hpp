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

#ifndef HEXQEC_CODE_LAYOUT_HPP
#define HEXQEC_CODE_LAYOUT_HPP

#include <array>
#include <compare>
#include <cstdint>
#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "hexqec/pauli.hpp"

namespace hexqec {

enum class CodeFamily : std::uint8_t { Surface, Tailored, XZZX };
enum class Structure : std::uint8_t { Lattice, HeavyHex };
enum class QubitRole : std::uint8_t { Data, Flag, Syndrome };
enum class StabilizerGroup : std::uint8_t { S1 = 0, S2 = 1 };

/// Which side of its stabilizer site a data qubit sits on. The declaration
/// order is also the order in which a patch touches its data qubits.
enum class Direction : std::uint8_t { Up = 0, Left = 1, Right = 2, Down = 3 };

std::string_view to_string(CodeFamily f);
std::string_view to_string(Structure s);
std::string_view to_string(QubitRole r);
std::string_view to_string(StabilizerGroup g);
CodeFamily parse_family(std::string_view text);
Structure parse_structure(std::string_view text);

struct Coord {
    int row = 0;
    int col = 0;
    friend auto operator<=>(const Coord&, const Coord&) = default;
};

struct Qubit {
    std::uint32_t id = 0;
    QubitRole role = QubitRole::Data;
    Coord coord;
};

/// One stabilizer together with the ancilla tree that measures it.
///
/// The tree is rooted at the syndrome qubit. Flags are listed outward from the
/// root, each with its parent (the syndrome or an earlier flag). Every data
/// qubit has an anchor: the ancilla it interacts with directly. On the lattice
/// structure there are no flags and every anchor is the syndrome qubit.
struct StabilizerSpec {
    StabilizerGroup group = StabilizerGroup::S1;
    Coord site;  // (row, col) on the (2d-1)x(2d-1) code grid
    std::vector<Pauli> letters;
    std::vector<std::uint32_t> data_ids;
    std::vector<Direction> data_directions;
    std::vector<std::uint32_t> data_anchors;
    std::uint32_t syndrome_id = 0;
    std::vector<std::uint32_t> flag_ids;
    std::vector<std::uint32_t> flag_parents;

    std::size_t weight() const { return data_ids.size(); }
    PauliString as_pauli_string() const;
};

struct CodeLayout {
    CodeFamily family = CodeFamily::Surface;
    Structure structure = Structure::Lattice;
    int distance = 3;
    std::vector<Qubit> qubits;
    std::vector<StabilizerSpec> stabilizers;
    std::array<PauliString, 2> logicals;
    std::vector<std::pair<std::uint32_t, std::uint32_t>> couplings;

    std::size_t count(QubitRole role) const;
    std::vector<std::uint32_t> ids_with_role(QubitRole role) const;
};

/// Planar layout for odd distance >= 3. Throws std::invalid_argument otherwise.
CodeLayout build_layout(CodeFamily family, Structure structure, int distance);

std::pair<std::vector<StabilizerSpec>, std::vector<StabilizerSpec>> stabilizer_groups(
    const CodeLayout& layout);

/// (L1, L2): L1 runs down the left boundary column, L2 along the top row.
std::array<PauliString, 2> logical_operators(const CodeLayout& layout);

/// Maps internal qubit id to the physical index on IBM's 65-qubit Ithaca device.
/// Only defined for the distance-3 heavy-hex layout.
std::vector<std::uint32_t> ithaca_index_map(const CodeLayout& layout);

enum class ViolationKind : std::uint8_t { Count, Roles, Letters, Commutation, Logical, Degree, Coupling, Connectivity };

struct LayoutViolation {
    ViolationKind kind;
    std::string message;
};

/// Empty iff every layout invariant holds.
std::vector<LayoutViolation> validate_layout(const CodeLayout& layout);

/// Keeps only the listed stabilizers and the qubits their patches touch,
/// re-indexed densely in the original order. Logical operators are dropped.
CodeLayout sub_layout(const CodeLayout& layout, std::span<const std::size_t> stabilizer_indices);

}  // namespace hexqec

#endif
