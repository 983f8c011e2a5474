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

#ifndef HEXQEC_TABLEAU_HPP
#define HEXQEC_TABLEAU_HPP

#include <cstdint>
#include <optional>
#include <random>
#include <vector>

#include "hexqec/circuit.hpp"

namespace hexqec {

/// Stabilizer-state simulator in the Aaronson-Gottesman tableau form.
/// Without a seed, random measurement outcomes are resolved to 0, which makes
/// the run a deterministic reference execution.
class TableauSimulator {
  public:
    explicit TableauSimulator(std::uint32_t num_qubits, std::optional<std::uint64_t> seed = std::nullopt);

    std::uint32_t num_qubits() const { return n_; }

    void h(std::uint32_t q);
    void s(std::uint32_t q);
    void s_dag(std::uint32_t q);
    void x(std::uint32_t q);
    void z(std::uint32_t q);
    void cx(std::uint32_t c, std::uint32_t t);
    void cy(std::uint32_t c, std::uint32_t t);

    /// Returns the outcome; sets `*deterministic` if given.
    bool measure_z(std::uint32_t q, bool* deterministic = nullptr);
    bool measure_x(std::uint32_t q, bool* deterministic = nullptr);
    bool measure_y(std::uint32_t q, bool* deterministic = nullptr);
    void reset_z(std::uint32_t q);
    void reset_x(std::uint32_t q);
    void reset_y(std::uint32_t q);

    /// Expectation sign of a Pauli product if it is in the stabilizer group:
    /// +1 or -1, and 0 when the outcome would be random.
    int peek(const PauliString& p) const;

  private:
    using Row = std::size_t;
    bool getx(Row r, std::uint32_t q) const { return (xs_[r * words_ + q / 64] >> (q % 64)) & 1u; }
    bool getz(Row r, std::uint32_t q) const { return (zs_[r * words_ + q / 64] >> (q % 64)) & 1u; }
    void rowsum(Row h, Row i);
    void rowcopy(Row dst, Row src);
    void rowclear(Row r);

    std::uint32_t n_;
    std::size_t words_;
    // 2n rows plus one scratch row; destabilizers first.
    std::vector<std::uint64_t> xs_;
    std::vector<std::uint64_t> zs_;
    std::vector<std::uint8_t> rs_;
    std::optional<std::mt19937_64> rng_;
};

struct ReferenceRun {
    std::vector<std::uint8_t> records;
    std::vector<std::uint8_t> record_deterministic;
    std::vector<std::uint8_t> detectors;
    std::vector<std::uint8_t> observables;
};

/// Noiseless execution of `circuit` (noise instructions are skipped). With a
/// seed, random measurement outcomes are drawn instead of fixed to 0.
ReferenceRun reference_run(const Circuit& circuit, std::optional<std::uint64_t> seed = std::nullopt);

}  // namespace hexqec

#endif
