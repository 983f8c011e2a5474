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

#ifndef HEXQEC_CIRCUIT_BUILDER_HPP
#define HEXQEC_CIRCUIT_BUILDER_HPP

#include <cstdint>
#include <vector>

#include "hexqec/circuit.hpp"
#include "hexqec/code_layout.hpp"

namespace hexqec {

enum class LogicalBasis : std::uint8_t { L1 = 0, L2 = 1 };

/// Time-layered operations of one stabilizer measurement, in layout qubit ids.
struct PatchSchedule {
    std::vector<std::vector<Instruction>> layers;
};

/// Heavy-hex: syndrome in |+>, flags in |0>, a GHZ tree grown from the
/// syndrome, one controlled-letter interaction per data qubit from its anchor,
/// then the tree is uncomputed. Lattice: direct interactions with the syndrome,
/// which switches between X and Z frames by Hadamards as the letters require.
PatchSchedule schedule_patch(const StabilizerSpec& stab, Structure structure);

/// A single stabilizer measurement as a standalone circuit on local qubit ids.
struct PatchCircuit {
    Circuit circuit;
    StabilizerSpec stab;                     // qubit ids remapped to local ids
    std::vector<std::uint32_t> global_ids;   // local id -> layout id
    std::uint32_t syndrome_record = 0;
    std::vector<std::uint32_t> flag_records;
};

/// Local ids: data qubits first (in stabilizer order), then the syndrome,
/// then the flags.
PatchCircuit build_patch_circuit(const StabilizerSpec& stab, Structure structure);

/// Which group's stabilizers share the letters of the chosen logical on its
/// support. Those stabilizers are deterministic after the data preparation.
StabilizerGroup protecting_group(const CodeLayout& layout, LogicalBasis basis);

/// Data qubit preparation/measurement letter per data qubit (indexed by layout id,
/// Pauli::I for non-data qubits).
std::vector<Pauli> data_bases(const CodeLayout& layout, LogicalBasis basis);

/// d-round memory experiment. Heavy-hex runs S1 then S2 each round; the
/// lattice interleaves both groups in one cycle. Each cycle starts with a
/// CYCLE marker listing the data qubits.
Circuit build_memory_circuit(const CodeLayout& layout, int rounds, LogicalBasis basis);

/// General repeated stabilizer measurement with data prepared and measured per
/// qubit in `bases` (indexed by layout id). Stabilizers whose letters agree
/// with `bases` on their whole support get first-round and final detectors.
/// `observable`, if given, must use the same letters as `bases`.
Circuit build_stabilizer_experiment(const CodeLayout& layout, int rounds, const std::vector<Pauli>& bases,
                                    const PauliString* observable = nullptr, int observable_group = -1);

}  // namespace hexqec

#endif
