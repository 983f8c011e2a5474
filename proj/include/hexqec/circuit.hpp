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

#ifndef HEXQEC_CIRCUIT_HPP
#define HEXQEC_CIRCUIT_HPP

#include <array>
#include <cstdint>
#include <iosfwd>
#include <string>
#include <string_view>
#include <vector>

#include "hexqec/pauli.hpp"

namespace hexqec {

enum class OpKind : std::uint8_t {
    PrepZ,
    PrepX,
    PrepY,
    H,
    CX,
    CY,
    MeasZ,
    MeasX,
    MeasY,
    Tick,
    // Marks the start of one stabilizer-measurement cycle. `a` is the round,
    // `qubits` the data qubits.
    Cycle,
    // Noise channels.
    E1,     // Pauli channel (pX, pY, pZ) on one qubit
    E2,     // each of the 15 non-identity two-qubit Paulis with probability p / 15
    EPrep,  // flips a freshly prepared qubit to the orthogonal state
    EMeas,  // flips the record of an earlier measurement
};

bool is_prep(OpKind k);
bool is_measurement(OpKind k);
bool is_single_qubit_gate(OpKind k);
bool is_two_qubit_gate(OpKind k);
bool is_noise(OpKind k);
std::string_view op_name(OpKind k);

struct Instruction {
    OpKind kind = OpKind::Tick;
    std::uint32_t a = 0;  // qubit, or control for two-qubit gates
    std::uint32_t b = 0;  // target for two-qubit gates
    // Measurements: the global record index. EMeas: the record it flips.
    std::uint32_t record = 0;
    std::array<double, 3> p{};  // E1: (pX, pY, pZ); other channels use p[0]
    std::vector<std::uint32_t> qubits;  // Cycle only
};

struct DetectorTag {
    int group = -1;       // 0 for S1, 1 for S2, -1 if untagged
    int stabilizer = -1;  // index into the layout's stabilizer list
    int round = -1;       // the final data-measurement layer is round == rounds
};

struct DetectorDef {
    std::vector<std::uint32_t> records;
    DetectorTag tag;
};

struct ObservableDef {
    std::vector<std::uint32_t> records;
    int group = -1;  // the syndrome group whose matching corrects this observable
};

/// Ordered Clifford schedule with noise, detectors and observables.
class Circuit {
  public:
    explicit Circuit(std::uint32_t num_qubits = 0) : num_qubits_(num_qubits) {}

    std::uint32_t num_qubits() const { return num_qubits_; }
    std::uint32_t num_measurements() const { return num_measurements_; }
    const std::vector<Instruction>& ops() const { return ops_; }
    const std::vector<DetectorDef>& detectors() const { return detectors_; }
    const std::vector<ObservableDef>& observables() const { return observables_; }
    const std::vector<std::uint32_t>& flag_records() const { return flag_records_; }

    void prep(OpKind kind, std::uint32_t q);
    void gate1(OpKind kind, std::uint32_t q);
    void gate2(OpKind kind, std::uint32_t control, std::uint32_t target);
    /// Returns the record index of the new measurement.
    std::uint32_t measure(OpKind kind, std::uint32_t q);
    void tick();
    void cycle(std::uint32_t round, std::vector<std::uint32_t> data_qubits);
    void error1(double px, double py, double pz, std::uint32_t q);
    void error2(double p, std::uint32_t control, std::uint32_t target);
    void error_prep(double p, std::uint32_t q);
    void error_meas(double p, std::uint32_t record);

    void add_detector(DetectorDef d);
    void add_observable(ObservableDef o);
    void mark_flag_record(std::uint32_t record) { flag_records_.push_back(record); }

    /// Appends an instruction verbatim after checking operands. Measurement
    /// record indices are reassigned.
    void append(Instruction op);

    std::size_t num_noise_ops() const;
    std::size_t num_ticks() const;

    std::string str() const;
    void write(std::ostream& out) const;
    /// Parses the text format; throws std::invalid_argument with a line number.
    static Circuit parse(std::string_view text);

    /// Last measurement of each qubit before instruction index `end`.
    std::vector<std::int64_t> last_records_before(std::size_t end) const;

  private:
    void check_qubit(std::uint32_t q) const;
    void check_record(std::uint32_t r) const;

    std::uint32_t num_qubits_;
    std::uint32_t num_measurements_ = 0;
    std::vector<Instruction> ops_;
    std::vector<DetectorDef> detectors_;
    std::vector<ObservableDef> observables_;
    std::vector<std::uint32_t> flag_records_;
};

/// Result of pushing a Pauli through the remainder of a circuit.
struct PropagationResult {
    std::vector<std::uint32_t> records;
    std::vector<std::uint32_t> detectors;
    std::vector<std::uint32_t> observables;
};

/// Inserts `pauli` immediately before instruction `location` and conjugates it
/// through the rest of the circuit, ignoring noise instructions.
/// `location == ops().size()` means after the last instruction.
PropagationResult propagate_pauli(const Circuit& circuit, std::size_t location, const PauliString& pauli);

/// Same, but with the fault given as a list of flipped measurement records
/// (used for measurement-flip faults).
PropagationResult records_to_effects(const Circuit& circuit, std::vector<std::uint32_t> records);

}  // namespace hexqec

#endif
