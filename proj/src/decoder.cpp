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

#include <algorithm>
#include <cmath>
#include <iostream>
#include <map>
#include <queue>
#include <stdexcept>
#include <tuple>

#include "hexqec/matching.hpp"

namespace hexqec {

double edge_weight(double q) {
    if (q >= 0.5) {
        return 0;
    }
    q = std::max(q, kMinProbability);
    return std::log((1 - q) / q);
}

MatchingGraph build_matching_graph(const DetectorErrorModel& group) {
    MatchingGraph graph;
    graph.num_detectors = group.num_detectors;
    std::map<std::tuple<std::uint32_t, std::uint32_t, std::uint64_t>, double> merged;
    for (const auto& m : group.mechanisms) {
        if (m.detectors.empty()) {
            continue;
        }
        if (m.detectors.size() > 2) {
            throw std::invalid_argument("matching graph needs mechanisms with at most two detectors");
        }
        std::uint32_t u = m.detectors[0];
        std::uint32_t v = m.detectors.size() == 2 ? m.detectors[1] : graph.boundary();
        if (u >= graph.num_detectors || (v != graph.boundary() && v >= graph.num_detectors)) {
            throw std::invalid_argument("mechanism references an unknown detector");
        }
        auto [it, inserted] = merged.try_emplace({u, v, m.observables}, m.probability);
        if (!inserted) {
            it->second = merge_probability(it->second, m.probability);
        }
    }
    for (const auto& [key, q] : merged) {
        const auto& [u, v, obs] = key;
        if (q >= 0.5) {
            ++graph.clamped;
        }
        graph.edges.push_back({u, v, q, edge_weight(q), obs});
    }
    if (graph.clamped > 0) {
        std::cerr << "warning: " << graph.clamped << " matching edges have q >= 0.5; weights clamped to 0\n";
    }
    return graph;
}

MatchingDecoder::MatchingDecoder(MatchingGraph graph)
    : graph_(std::move(graph)),
      nodes_(graph_.num_detectors + 1),
      dist_(nodes_ * nodes_, std::numeric_limits<double>::infinity()),
      mask_(nodes_ * nodes_, 0) {
    struct Arc {
        std::uint32_t to;
        double w;
        std::uint64_t obs;
    };
    std::vector<std::vector<Arc>> adj(nodes_);
    // Keep the lightest arc between each pair; ties go to the first edge.
    std::map<std::pair<std::uint32_t, std::uint32_t>, std::size_t> best;
    for (std::size_t k = 0; k < graph_.edges.size(); ++k) {
        const auto& e = graph_.edges[k];
        auto key = std::minmax(e.u, e.v);
        auto [it, inserted] = best.try_emplace(key, k);
        if (!inserted && e.weight < graph_.edges[it->second].weight) {
            it->second = k;
        }
    }
    for (const auto& [key, k] : best) {
        const auto& e = graph_.edges[k];
        adj[e.u].push_back({e.v, e.weight, e.observables});
        adj[e.v].push_back({e.u, e.weight, e.observables});
    }
    using Item = std::pair<double, std::uint32_t>;
    for (std::uint32_t s = 0; s < nodes_; ++s) {
        double* dist = dist_.data() + static_cast<std::size_t>(s) * nodes_;
        std::uint64_t* mask = mask_.data() + static_cast<std::size_t>(s) * nodes_;
        std::priority_queue<Item, std::vector<Item>, std::greater<>> heap;
        dist[s] = 0;
        heap.push({0, s});
        while (!heap.empty()) {
            auto [d, u] = heap.top();
            heap.pop();
            if (d > dist[u]) {
                continue;
            }
            for (const auto& a : adj[u]) {
                double nd = d + a.w;
                if (nd < dist[a.to]) {
                    dist[a.to] = nd;
                    mask[a.to] = mask[u] ^ a.obs;
                    heap.push({nd, a.to});
                }
            }
        }
    }
}

Correction MatchingDecoder::decode(std::vector<std::uint32_t> fired) const {
    std::sort(fired.begin(), fired.end());
    std::vector<std::uint32_t> nodes;
    for (std::size_t k = 0; k < fired.size();) {
        std::size_t j = k;
        while (j < fired.size() && fired[j] == fired[k]) {
            ++j;
        }
        if (fired[k] >= graph_.num_detectors) {
            throw std::invalid_argument("detector index out of range");
        }
        if ((j - k) % 2 == 1) {
            nodes.push_back(fired[k]);
        }
        k = j;
    }
    Correction out;
    if (nodes.empty()) {
        return out;
    }
    const std::uint32_t b = graph_.boundary();
    const bool with_boundary = nodes.size() % 2 == 1;
    const auto n = static_cast<std::uint32_t>(nodes.size() + (with_boundary ? 1 : 0));
    std::vector<WeightedEdge> edges;
    edges.reserve(static_cast<std::size_t>(n) * (n - 1) / 2);
    // Pair (i, j) either directly or both through the boundary.
    std::vector<std::uint8_t> via_boundary(static_cast<std::size_t>(n) * n, 0);
    for (std::uint32_t i = 0; i < nodes.size(); ++i) {
        for (std::uint32_t j = i + 1; j < nodes.size(); ++j) {
            double direct = distance(nodes[i], nodes[j]);
            double split = distance(nodes[i], b) + distance(nodes[j], b);
            double w = std::min(direct, split);
            if (!std::isfinite(w)) {
                continue;
            }
            via_boundary[static_cast<std::size_t>(i) * n + j] = split < direct ? 1 : 0;
            edges.push_back({i, j, w});
        }
        if (with_boundary) {
            double w = distance(nodes[i], b);
            if (std::isfinite(w)) {
                edges.push_back({i, n - 1, w});
            }
        }
    }
    std::vector<std::uint32_t> mate;
    try {
        mate = min_weight_perfect_matching(n, edges);
    } catch (const std::runtime_error&) {
        throw std::runtime_error("matching graph is disconnected: no perfect matching for this syndrome");
    }
    for (std::uint32_t i = 0; i < n; ++i) {
        std::uint32_t j = mate[i];
        if (j < i) {
            continue;
        }
        if (j == n - 1 && with_boundary) {
            out.observables ^= path_observables(nodes[i], b);
        } else if (via_boundary[static_cast<std::size_t>(i) * n + j] != 0) {
            out.observables ^= path_observables(nodes[i], b) ^ path_observables(nodes[j], b);
        } else {
            out.observables ^= path_observables(nodes[i], nodes[j]);
        }
    }
    return out;
}

Correction MatchingDecoder::decode_bits(const std::vector<std::uint8_t>& detector_bits) const {
    if (detector_bits.size() != graph_.num_detectors) {
        throw std::invalid_argument("detector bit count does not match the graph");
    }
    std::vector<std::uint32_t> fired;
    for (std::uint32_t d = 0; d < detector_bits.size(); ++d) {
        if (detector_bits[d] != 0) {
            fired.push_back(d);
        }
    }
    return decode(std::move(fired));
}

namespace {

int observable_group(const DetectorErrorModel& dem) {
    if (dem.num_observables == 0) {
        throw std::invalid_argument("memory circuit defines no observable");
    }
    int g = dem.observable_groups.empty() ? -1 : dem.observable_groups[0];
    for (auto other : dem.observable_groups) {
        if (other != g) {
            throw std::invalid_argument("all observables must belong to one stabilizer group");
        }
    }
    if (g != 0 && g != 1) {
        throw std::invalid_argument("observable has no stabilizer-group tag");
    }
    return g;
}

}  // namespace

MemoryDecoder::MemoryDecoder(const Circuit& noisy)
    : split_(split_dem(extract_dem(noisy))),
      group_(observable_group(split_.groups[0])),
      undetectable_(split_.groups[static_cast<std::size_t>(group_)].undetectable_logical),
      decoder_(build_matching_graph(split_.groups[static_cast<std::size_t>(group_)])) {}

Correction MemoryDecoder::decode_shot(const BitMatrix& detectors, std::size_t shot) const {
    const auto& globals = split_.local_to_global[static_cast<std::size_t>(group_)];
    std::vector<std::uint32_t> fired;
    for (std::uint32_t k = 0; k < globals.size(); ++k) {
        if (detectors.get(shot, globals[k])) {
            fired.push_back(k);
        }
    }
    return decoder_.decode(std::move(fired));
}

std::vector<Correction> MemoryDecoder::decode_batch(const BitMatrix& detectors) const {
    std::vector<Correction> out(detectors.rows());
    for (std::size_t s = 0; s < detectors.rows(); ++s) {
        out[s] = decode_shot(detectors, s);
    }
    return out;
}

}  // namespace hexqec
