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

#ifndef HEXQEC_FRAME_SAMPLER_HPP
#define HEXQEC_FRAME_SAMPLER_HPP

#include <cstdint>
#include <random>
#include <vector>

#include "hexqec/bit_matrix.hpp"
#include "hexqec/circuit.hpp"

namespace hexqec {

/// Shot-major sample output. `flags` is empty unless requested.
struct SampleBatch {
    std::size_t shots = 0;
    BitMatrix detectors;    // shots x detectors
    BitMatrix observables;  // shots x observables
    BitMatrix flags;        // shots x flag records

    void append(const SampleBatch& other);
};

/// Independent reproducible stream for (seed, stream).
std::mt19937_64 make_stream(std::uint64_t seed, std::uint64_t stream);

/// Number of shots simulated together; each block draws from its own stream,
/// so output does not depend on the worker count.
inline constexpr std::size_t kShotsPerBlock = 1024;

/// Worker count from HEXQEC_WORKERS, else the hardware concurrency.
unsigned default_workers();

/// Pauli-frame sampler. Frames are tracked relative to a noiseless reference
/// run, so every detector and observable must be deterministic without noise.
class FrameSampler {
  public:
    explicit FrameSampler(const Circuit& circuit);

    const Circuit& circuit() const { return circuit_; }

    SampleBatch sample(std::size_t shots, std::uint64_t seed, unsigned workers = 1, bool keep_flags = false) const;

  private:
    struct Op {
        OpKind kind;
        std::uint32_t a;
        std::uint32_t b;
        double p;          // total event probability
        double log_q;      // log(1 - p), for geometric skipping
        double cut_x;      // E1: P(X | event)
        double cut_xy;     // E1: P(X or Y | event)
        std::uint8_t flip; // EPrep: 1 flips X, 2 flips Z
    };

    void run_block(std::size_t shots, std::mt19937_64& rng, SampleBatch& out, bool keep_flags) const;

    Circuit circuit_;
    std::vector<Op> ops_;
    std::vector<std::uint8_t> reference_detectors_;
    std::vector<std::uint8_t> reference_observables_;
    std::vector<std::uint8_t> reference_flags_;
};

/// Convenience wrapper around FrameSampler.
SampleBatch sample(const Circuit& circuit, std::size_t shots, std::uint64_t seed, unsigned workers = 1,
                   bool keep_flags = false);

}  // namespace hexqec

#endif
