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

#ifndef HEXQEC_DENSE_SIM_HPP
#define HEXQEC_DENSE_SIM_HPP

#include <Eigen/Dense>
#include <cstdint>
#include <random>

#include "hexqec/circuit.hpp"
#include "hexqec/code_layout.hpp"
#include "hexqec/frame_sampler.hpp"

namespace hexqec {

/// Largest qubit count the state-vector routines accept.
inline constexpr std::uint32_t kMaxDenseQubits = 16;

/// State vector over n qubits; qubit q is bit q of the basis index.
class DenseState {
  public:
    explicit DenseState(std::uint32_t num_qubits);

    std::uint32_t num_qubits() const { return n_; }
    Eigen::VectorXcd& amplitudes() { return amp_; }
    const Eigen::VectorXcd& amplitudes() const { return amp_; }

    void h(std::uint32_t q);
    void s(std::uint32_t q);
    void s_dag(std::uint32_t q);
    void x(std::uint32_t q);
    void y(std::uint32_t q);
    void z(std::uint32_t q);
    void pauli(std::uint32_t q, Pauli p);
    void cx(std::uint32_t c, std::uint32_t t);
    void cy(std::uint32_t c, std::uint32_t t);

    double probability_one(std::uint32_t q) const;
    /// Projects qubit q onto |outcome> and renormalizes.
    void project(std::uint32_t q, bool outcome);
    bool measure_z(std::uint32_t q, std::mt19937_64& rng);
    bool measure_x(std::uint32_t q, std::mt19937_64& rng);
    bool measure_y(std::uint32_t q, std::mt19937_64& rng);
    void reset_z(std::uint32_t q, std::mt19937_64& rng);

  private:
    std::uint32_t n_;
    Eigen::VectorXcd amp_;
};

/// True iff `circuit` measures `stab` projectively: for any data state the
/// (syndrome 0, flags 0) branch is the +1 projection, the (syndrome 1, flags 0)
/// branch is the -1 projection with the same phase, and every other branch
/// vanishes. `stab` uses the circuit's qubit ids; every non-data qubit must be
/// an ancilla measured exactly once at the end.
bool verify_patch(const Circuit& circuit, const StabilizerSpec& stab);

/// Shot-by-shot state-vector sampler with explicit noise insertion.
SampleBatch dense_oracle(const Circuit& circuit, std::size_t shots, std::uint64_t seed, bool keep_flags = false);

}  // namespace hexqec

#endif
