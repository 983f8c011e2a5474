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

#ifndef HEXQEC_DECODER_HPP
#define HEXQEC_DECODER_HPP

#include <cstdint>
#include <limits>
#include <vector>

#include "hexqec/bit_matrix.hpp"
#include "hexqec/circuit.hpp"
#include "hexqec/dem.hpp"

namespace hexqec {

inline constexpr double kMinProbability = 1e-15;

struct MatchingEdge {
    std::uint32_t u = 0;
    std::uint32_t v = 0;  // MatchingGraph::boundary() for boundary edges
    double probability = 0;
    double weight = 0;
    std::uint64_t observables = 0;
};

/// Detectors of one syndrome group plus one boundary node.
struct MatchingGraph {
    std::uint32_t num_detectors = 0;
    std::vector<MatchingEdge> edges;
    std::size_t clamped = 0;  // edges with q >= 1/2, weight set to 0

    std::uint32_t boundary() const { return num_detectors; }
};

/// ln((1 - q) / q) with q floored at kMinProbability; 0 for q >= 1/2.
double edge_weight(double q);

/// Edges from one- and two-detector mechanisms; parallel edges with the same
/// observable mask are merged. Throws std::invalid_argument on mechanisms with
/// more than two detectors.
MatchingGraph build_matching_graph(const DetectorErrorModel& group);

struct Correction {
    std::uint64_t observables = 0;  // bit k: predicted flip of observable k

    friend bool operator==(const Correction&, const Correction&) = default;
};

/// Minimum-weight perfect matching decoder over precomputed shortest paths.
class MatchingDecoder {
  public:
    explicit MatchingDecoder(MatchingGraph graph);

    const MatchingGraph& graph() const { return graph_; }

    /// `fired` lists detector indices (any order, duplicates cancel).
    Correction decode(std::vector<std::uint32_t> fired) const;
    Correction decode_bits(const std::vector<std::uint8_t>& detector_bits) const;

    /// Shortest-path length and its observable mask; infinity if unreachable.
    double distance(std::uint32_t u, std::uint32_t v) const { return dist_[index(u, v)]; }
    std::uint64_t path_observables(std::uint32_t u, std::uint32_t v) const { return mask_[index(u, v)]; }

  private:
    std::size_t index(std::uint32_t u, std::uint32_t v) const { return static_cast<std::size_t>(u) * nodes_ + v; }

    MatchingGraph graph_;
    std::size_t nodes_;
    std::vector<double> dist_;
    std::vector<std::uint64_t> mask_;
};

/// Decoder for a memory experiment: extracts the DEM, splits it by
/// stabilizer group, and matches the group that carries the observable.
class MemoryDecoder {
  public:
    explicit MemoryDecoder(const Circuit& noisy);

    const SplitDem& split() const { return split_; }
    int group() const { return group_; }
    std::size_t undetectable_logical() const { return undetectable_; }

    Correction decode_shot(const BitMatrix& detectors, std::size_t shot) const;
    std::vector<Correction> decode_batch(const BitMatrix& detectors) const;

  private:
    SplitDem split_;
    int group_ = 0;
    std::size_t undetectable_ = 0;
    MatchingDecoder decoder_;
};

}  // namespace hexqec

#endif
