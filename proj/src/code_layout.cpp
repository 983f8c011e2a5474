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
#include <map>
#include <optional>
#include <queue>
#include <set>
#include <sstream>
#include <stdexcept>

namespace hexqec {

std::string_view to_string(CodeFamily f) {
    switch (f) {
        case CodeFamily::Surface:
            return "surface";
        case CodeFamily::Tailored:
            return "tailored";
        case CodeFamily::XZZX:
            return "xzzx";
    }
    return "?";
}

std::string_view to_string(Structure s) {
    return s == Structure::Lattice ? "lattice" : "heavy-hex";
}

std::string_view to_string(QubitRole r) {
    switch (r) {
        case QubitRole::Data:
            return "data";
        case QubitRole::Flag:
            return "flag";
        case QubitRole::Syndrome:
            return "syndrome";
    }
    return "?";
}

std::string_view to_string(StabilizerGroup g) {
    return g == StabilizerGroup::S1 ? "S1" : "S2";
}

CodeFamily parse_family(std::string_view text) {
    if (text == "surface") {
        return CodeFamily::Surface;
    }
    if (text == "tailored") {
        return CodeFamily::Tailored;
    }
    if (text == "xzzx") {
        return CodeFamily::XZZX;
    }
    throw std::invalid_argument("unknown code family '" + std::string(text) + "'");
}

Structure parse_structure(std::string_view text) {
    if (text == "lattice") {
        return Structure::Lattice;
    }
    if (text == "heavy-hex" || text == "heavyhex") {
        return Structure::HeavyHex;
    }
    throw std::invalid_argument("unknown structure '" + std::string(text) + "'");
}

PauliString StabilizerSpec::as_pauli_string() const {
    PauliString s;
    for (std::size_t k = 0; k < data_ids.size(); ++k) {
        s.set(data_ids[k], letters[k]);
    }
    return s;
}

std::size_t CodeLayout::count(QubitRole role) const {
    return static_cast<std::size_t>(
        std::count_if(qubits.begin(), qubits.end(), [&](const Qubit& q) { return q.role == role; }));
}

std::vector<std::uint32_t> CodeLayout::ids_with_role(QubitRole role) const {
    std::vector<std::uint32_t> out;
    for (const auto& q : qubits) {
        if (q.role == role) {
            out.push_back(q.id);
        }
    }
    return out;
}

namespace {

Pauli stabilizer_letter(CodeFamily family, StabilizerGroup group, Direction dir) {
    switch (family) {
        case CodeFamily::Surface:
            return group == StabilizerGroup::S1 ? Pauli::Z : Pauli::X;
        case CodeFamily::Tailored:
            return group == StabilizerGroup::S1 ? Pauli::Y : Pauli::X;
        case CodeFamily::XZZX:
            return (dir == Direction::Up || dir == Direction::Down) ? Pauli::X : Pauli::Z;
    }
    return Pauli::I;
}

// Letters of the two logical chains: L1 down column 0, L2 along row 0.
std::array<Pauli, 2> logical_letters(CodeFamily family) {
    switch (family) {
        case CodeFamily::Surface:
            return {Pauli::X, Pauli::Z};
        case CodeFamily::Tailored:
            return {Pauli::X, Pauli::Y};
        case CodeFamily::XZZX:
            return {Pauli::Z, Pauli::X};
    }
    return {Pauli::I, Pauli::I};
}

struct Neighbor {
    Direction dir;
    int dr;
    int dc;
};

constexpr std::array<Neighbor, 4> kNeighbors{{
    {Direction::Up, -1, 0},
    {Direction::Left, 0, -1},
    {Direction::Right, 0, 1},
    {Direction::Down, 1, 0},
}};

// Intermediate description keyed by coordinates; ids are assigned afterwards
// by sorting coordinates row-major.
struct DraftPatch {
    Coord site;
    StabilizerGroup group;
    Coord syndrome;
    std::vector<std::pair<Coord, Coord>> flags;  // (flag, parent)
    std::vector<std::tuple<Direction, Coord, Coord>> data;  // (dir, data, anchor)
};

class Draft {
  public:
    void add(Coord c, QubitRole role) {
        auto [it, inserted] = roles_.emplace(c, role);
        if (!inserted && it->second != role) {
            throw std::logic_error("conflicting roles at one coordinate");
        }
    }
    void couple(Coord a, Coord b) { edges_.insert(a < b ? std::pair{a, b} : std::pair{b, a}); }

    CodeLayout finish(CodeFamily family, Structure structure, int d, const std::vector<DraftPatch>& patches) const {
        CodeLayout layout;
        layout.family = family;
        layout.structure = structure;
        layout.distance = d;
        std::map<Coord, std::uint32_t> id_of;
        for (const auto& [c, role] : roles_) {
            auto id = static_cast<std::uint32_t>(layout.qubits.size());
            id_of[c] = id;
            layout.qubits.push_back(Qubit{id, role, c});
        }
        for (const auto& [a, b] : edges_) {
            layout.couplings.emplace_back(id_of.at(a), id_of.at(b));
        }
        std::sort(layout.couplings.begin(), layout.couplings.end());
        for (const auto& p : patches) {
            StabilizerSpec s;
            s.group = p.group;
            s.site = p.site;
            s.syndrome_id = id_of.at(p.syndrome);
            for (const auto& [f, parent] : p.flags) {
                s.flag_ids.push_back(id_of.at(f));
                s.flag_parents.push_back(id_of.at(parent));
            }
            for (const auto& [dir, dq, anchor] : p.data) {
                s.data_ids.push_back(id_of.at(dq));
                s.data_directions.push_back(dir);
                s.data_anchors.push_back(id_of.at(anchor));
                s.letters.push_back(stabilizer_letter(family, p.group, dir));
            }
            layout.stabilizers.push_back(std::move(s));
        }
        return layout;
    }

  private:
    std::map<Coord, QubitRole> roles_;
    std::set<std::pair<Coord, Coord>> edges_;
};

bool is_data_site(int r, int c) { return (r + c) % 2 == 0; }

CodeLayout build_lattice(CodeFamily family, int d) {
    const int n = 2 * d - 1;
    Draft draft;
    std::vector<DraftPatch> patches;
    for (int r = 0; r < n; ++r) {
        for (int c = 0; c < n; ++c) {
            draft.add({r, c}, is_data_site(r, c) ? QubitRole::Data : QubitRole::Syndrome);
        }
    }
    for (int r = 0; r < n; ++r) {
        for (int c = 0; c < n; ++c) {
            if (is_data_site(r, c)) {
                continue;
            }
            DraftPatch p;
            p.site = {r, c};
            p.group = (r % 2 == 1) ? StabilizerGroup::S1 : StabilizerGroup::S2;
            p.syndrome = {r, c};
            for (const auto& nb : kNeighbors) {
                int rr = r + nb.dr;
                int cc = c + nb.dc;
                if (rr < 0 || rr >= n || cc < 0 || cc >= n) {
                    continue;
                }
                p.data.emplace_back(nb.dir, Coord{rr, cc}, p.syndrome);
                draft.couple(p.syndrome, {rr, cc});
            }
            patches.push_back(std::move(p));
        }
    }
    return draft.finish(family, Structure::Lattice, d, patches);
}

// Heavy-hex embedding. Code-grid site (r, c) sits at device position
// (2r, 2c + 1). Between device rows 2r and 2r + 2 there are bridge qubits at
// (2r + 1, x) for x = 0 mod 4 when r is even and x = 2 mod 4 when r is odd.
// A stabilizer's two inner flags sit either side of its syndrome; each inner
// flag reaches its horizontal data qubit directly and, through a bridge, the
// inner flag of a diagonal neighbour stabilizer that touches the vertical data
// qubit. At the left and right boundaries no such neighbour exists, and the
// bridge couples straight to the data qubit.
CodeLayout build_heavy_hex(CodeFamily family, int d) {
    const int n = 2 * d - 1;
    Draft draft;
    std::vector<DraftPatch> patches;
    auto device = [](int r, int x) { return Coord{2 * r, x}; };
    auto bridge = [](int r_upper, int x) { return Coord{2 * r_upper + 1, x}; };
    auto bridge_parity = [](int r_upper) { return r_upper % 2 == 0 ? 0 : 2; };
    auto is_stabilizer = [&](int r, int c) { return r >= 0 && r < n && c >= 0 && c < n && !is_data_site(r, c); };

    for (int r = 0; r < n; ++r) {
        for (int c = 0; c < n; ++c) {
            draft.add(device(r, 2 * c + 1), is_data_site(r, c) ? QubitRole::Data : QubitRole::Syndrome);
        }
    }
    for (int r = 0; r < n; ++r) {
        for (int c = 0; c < n; ++c) {
            if (is_data_site(r, c)) {
                continue;
            }
            DraftPatch p;
            p.site = {r, c};
            p.group = (r % 2 == 1) ? StabilizerGroup::S1 : StabilizerGroup::S2;
            p.syndrome = device(r, 2 * c + 1);
            const std::array<int, 2> inner_x{2 * c, 2 * c + 2};
            for (int x : inner_x) {
                draft.add(device(r, x), QubitRole::Flag);
                draft.couple(p.syndrome, device(r, x));
                p.flags.emplace_back(device(r, x), p.syndrome);
            }
            std::vector<std::pair<Coord, Coord>> chain_flags;
            std::map<Direction, std::pair<Coord, Coord>> data;
            for (const auto& nb : kNeighbors) {
                int rr = r + nb.dr;
                int cc = c + nb.dc;
                if (rr < 0 || rr >= n || cc < 0 || cc >= n) {
                    continue;
                }
                Coord dq = device(rr, 2 * cc + 1);
                if (nb.dr == 0) {
                    Coord inner = device(r, nb.dc < 0 ? 2 * c : 2 * c + 2);
                    draft.couple(inner, dq);
                    data[nb.dir] = {dq, inner};
                    continue;
                }
                int r_upper = nb.dr < 0 ? r - 1 : r;
                int x = (inner_x[0] % 4 == bridge_parity(r_upper)) ? inner_x[0] : inner_x[1];
                Coord inner = device(r, x);
                Coord b = bridge(r_upper, x);
                draft.add(b, QubitRole::Flag);
                draft.couple(inner, b);
                chain_flags.emplace_back(b, inner);
                int neighbour_c = (x == 2 * c) ? c - 1 : c + 1;
                if (is_stabilizer(rr, neighbour_c)) {
                    Coord row_flag = device(rr, x);
                    draft.add(row_flag, QubitRole::Flag);
                    draft.couple(b, row_flag);
                    draft.couple(row_flag, dq);
                    chain_flags.emplace_back(row_flag, b);
                    data[nb.dir] = {dq, row_flag};
                } else {
                    draft.couple(b, dq);
                    data[nb.dir] = {dq, b};
                }
            }
            // Bridges first, then the row flags they feed: parents always precede children.
            std::stable_sort(chain_flags.begin(), chain_flags.end(), [](const auto& a, const auto& b) {
                return (a.first.row % 2) > (b.first.row % 2);
            });
            for (auto& f : chain_flags) {
                p.flags.push_back(f);
            }
            for (const auto& [dir, entry] : data) {
                p.data.emplace_back(dir, entry.first, entry.second);
            }
            patches.push_back(std::move(p));
        }
    }
    return draft.finish(family, Structure::HeavyHex, d, patches);
}

}  // namespace

std::array<PauliString, 2> logical_operators(const CodeLayout& layout) {
    const int n = 2 * layout.distance - 1;
    auto letters = logical_letters(layout.family);
    std::map<Coord, std::uint32_t> data_at;
    for (const auto& q : layout.qubits) {
        if (q.role == QubitRole::Data) {
            Coord grid = q.coord;
            if (layout.structure == Structure::HeavyHex) {
                grid = {q.coord.row / 2, (q.coord.col - 1) / 2};
            }
            data_at[grid] = q.id;
        }
    }
    std::array<PauliString, 2> out;
    for (int k = 0; k < n; k += 2) {
        out[0].set(data_at.at({k, 0}), letters[0]);
        out[1].set(data_at.at({0, k}), letters[1]);
    }
    return out;
}

CodeLayout build_layout(CodeFamily family, Structure structure, int distance) {
    if (distance < 3 || distance % 2 == 0) {
        throw std::invalid_argument("code distance must be odd and at least 3, got " + std::to_string(distance));
    }
    CodeLayout layout =
        structure == Structure::Lattice ? build_lattice(family, distance) : build_heavy_hex(family, distance);
    layout.logicals = logical_operators(layout);
    return layout;
}

std::pair<std::vector<StabilizerSpec>, std::vector<StabilizerSpec>> stabilizer_groups(const CodeLayout& layout) {
    std::pair<std::vector<StabilizerSpec>, std::vector<StabilizerSpec>> out;
    for (const auto& s : layout.stabilizers) {
        (s.group == StabilizerGroup::S1 ? out.first : out.second).push_back(s);
    }
    return out;
}

std::vector<std::uint32_t> ithaca_index_map(const CodeLayout& layout) {
    if (layout.structure != Structure::HeavyHex || layout.distance != 3) {
        throw std::invalid_argument("the Ithaca index map is only defined for the distance-3 heavy-hex layout");
    }
    // Device rows hold 10, 11, 11, 11, 10 qubits; the first and last rows
    // start at columns 0 and 1 respectively. Bridge rows hold three qubits.
    constexpr std::array<int, 5> row_base{0, 13, 27, 41, 55};
    constexpr std::array<int, 5> row_first_col{0, 0, 0, 0, 1};
    constexpr std::array<int, 4> bridge_base{10, 24, 38, 52};
    std::vector<std::uint32_t> map(layout.qubits.size());
    for (const auto& q : layout.qubits) {
        int idx;
        if (q.coord.row % 2 == 0) {
            int r = q.coord.row / 2;
            idx = row_base[r] + q.coord.col - row_first_col[r];
        } else {
            int r = q.coord.row / 2;
            int offset = (r % 2 == 0) ? 0 : 2;
            idx = bridge_base[r] + (q.coord.col - offset) / 4;
        }
        map[q.id] = static_cast<std::uint32_t>(idx);
    }
    return map;
}

std::vector<LayoutViolation> validate_layout(const CodeLayout& layout) {
    std::vector<LayoutViolation> out;
    auto report = [&](ViolationKind kind, std::string msg) { out.push_back({kind, std::move(msg)}); };
    const int d = layout.distance;
    const std::size_t n_qubits = layout.qubits.size();

    // Ids and coordinates.
    std::set<Coord> coords;
    for (std::size_t k = 0; k < n_qubits; ++k) {
        if (layout.qubits[k].id != k) {
            report(ViolationKind::Roles, "qubit ids are not dense at position " + std::to_string(k));
        }
        if (!coords.insert(layout.qubits[k].coord).second) {
            report(ViolationKind::Roles, "duplicate coordinate for qubit " + std::to_string(k));
        }
    }
    auto role_of = [&](std::uint32_t id) -> std::optional<QubitRole> {
        if (id >= n_qubits) {
            return std::nullopt;
        }
        return layout.qubits[id].role;
    };

    // Counts.
    const std::size_t n_data = layout.count(QubitRole::Data);
    const auto expected_data = static_cast<std::size_t>(d * d + (d - 1) * (d - 1));
    if (n_data != expected_data) {
        report(ViolationKind::Count, "data count " + std::to_string(n_data) + " != " + std::to_string(expected_data));
    }
    if (layout.stabilizers.size() + 1 != n_data) {
        report(ViolationKind::Count, "stabilizer count " + std::to_string(layout.stabilizers.size()) +
                                         " != data count - 1");
    }
    auto [s1, s2] = stabilizer_groups(layout);
    if (s1.size() != s2.size()) {
        report(ViolationKind::Count, "S1 and S2 sizes differ");
    }
    if (layout.structure == Structure::Lattice && layout.count(QubitRole::Flag) != 0) {
        report(ViolationKind::Count, "lattice layout has flag qubits");
    }

    // Per-stabilizer structure.
    for (std::size_t k = 0; k < layout.stabilizers.size(); ++k) {
        const auto& s = layout.stabilizers[k];
        const std::string tag = "stabilizer " + std::to_string(k);
        if (s.weight() != 3 && s.weight() != 4) {
            report(ViolationKind::Count, tag + " has weight " + std::to_string(s.weight()));
        }
        if (s.letters.size() != s.data_ids.size() || s.data_anchors.size() != s.data_ids.size() ||
            s.data_directions.size() != s.data_ids.size() || s.flag_parents.size() != s.flag_ids.size()) {
            report(ViolationKind::Roles, tag + " has inconsistent field lengths");
            continue;
        }
        if (role_of(s.syndrome_id) != QubitRole::Syndrome) {
            report(ViolationKind::Roles, tag + " syndrome qubit has the wrong role");
        }
        for (auto q : s.data_ids) {
            if (role_of(q) != QubitRole::Data) {
                report(ViolationKind::Roles, tag + " touches non-data qubit " + std::to_string(q));
            }
        }
        for (auto q : s.flag_ids) {
            if (role_of(q) != QubitRole::Flag) {
                report(ViolationKind::Roles, tag + " uses non-flag qubit " + std::to_string(q) + " as a flag");
            }
        }
        for (std::size_t j = 0; j < s.data_ids.size(); ++j) {
            Pauli want = stabilizer_letter(layout.family, s.group, s.data_directions[j]);
            if (s.letters[j] != want) {
                report(ViolationKind::Letters, tag + " letter " + std::string(1, pauli_char(s.letters[j])) +
                                                   " on qubit " + std::to_string(s.data_ids[j]) + " should be " +
                                                   std::string(1, pauli_char(want)));
            }
        }
    }

    // Commutation.
    std::vector<PauliString> strings;
    strings.reserve(layout.stabilizers.size());
    for (const auto& s : layout.stabilizers) {
        strings.push_back(s.as_pauli_string());
    }
    for (std::size_t a = 0; a < strings.size(); ++a) {
        for (std::size_t b = a + 1; b < strings.size(); ++b) {
            if (!strings[a].commutes_with(strings[b])) {
                report(ViolationKind::Commutation,
                       "stabilizers " + std::to_string(a) + " and " + std::to_string(b) + " anticommute");
            }
        }
    }
    for (int k = 0; k < 2; ++k) {
        const auto& l = layout.logicals[k];
        if (l.weight() != static_cast<std::size_t>(d)) {
            report(ViolationKind::Logical, "logical L" + std::to_string(k + 1) + " has weight " +
                                               std::to_string(l.weight()));
        }
        for (std::size_t a = 0; a < strings.size(); ++a) {
            if (!l.commutes_with(strings[a])) {
                report(ViolationKind::Logical, "logical L" + std::to_string(k + 1) +
                                                   " anticommutes with stabilizer " + std::to_string(a));
            }
        }
    }
    if (layout.logicals[0].commutes_with(layout.logicals[1])) {
        report(ViolationKind::Logical, "logicals L1 and L2 commute");
    }

    // Coupling graph.
    std::vector<std::vector<std::uint32_t>> adj(n_qubits);
    std::set<std::pair<std::uint32_t, std::uint32_t>> edge_set;
    for (auto [a, b] : layout.couplings) {
        if (a >= n_qubits || b >= n_qubits || a == b) {
            report(ViolationKind::Coupling, "invalid coupling");
            continue;
        }
        if (!edge_set.insert({std::min(a, b), std::max(a, b)}).second) {
            continue;
        }
        adj[a].push_back(b);
        adj[b].push_back(a);
    }
    const std::size_t max_degree = layout.structure == Structure::HeavyHex ? 3 : 4;
    for (std::size_t q = 0; q < n_qubits; ++q) {
        if (adj[q].size() > max_degree) {
            report(ViolationKind::Degree, "qubit " + std::to_string(q) + " has degree " +
                                              std::to_string(adj[q].size()));
        }
    }
    auto coupled = [&](std::uint32_t a, std::uint32_t b) {
        return edge_set.count({std::min(a, b), std::max(a, b)}) != 0;
    };
    for (std::size_t k = 0; k < layout.stabilizers.size(); ++k) {
        const auto& s = layout.stabilizers[k];
        if (s.data_anchors.size() != s.data_ids.size() || s.flag_parents.size() != s.flag_ids.size()) {
            continue;
        }
        for (std::size_t j = 0; j < s.flag_ids.size(); ++j) {
            if (!coupled(s.flag_ids[j], s.flag_parents[j])) {
                report(ViolationKind::Coupling, "stabilizer " + std::to_string(k) + " flag edge is not a coupling");
            }
        }
        for (std::size_t j = 0; j < s.data_ids.size(); ++j) {
            if (!coupled(s.data_ids[j], s.data_anchors[j])) {
                report(ViolationKind::Coupling, "stabilizer " + std::to_string(k) + " data edge is not a coupling");
            }
        }
    }
    if (n_qubits > 0) {
        std::vector<bool> seen(n_qubits, false);
        std::queue<std::uint32_t> bfs;
        bfs.push(0);
        seen[0] = true;
        std::size_t reached = 1;
        while (!bfs.empty()) {
            auto u = bfs.front();
            bfs.pop();
            for (auto v : adj[u]) {
                if (!seen[v]) {
                    seen[v] = true;
                    ++reached;
                    bfs.push(v);
                }
            }
        }
        if (reached != n_qubits) {
            report(ViolationKind::Connectivity, "coupling graph is disconnected");
        }
    }
    return out;
}

CodeLayout sub_layout(const CodeLayout& layout, std::span<const std::size_t> stabilizer_indices) {
    std::set<std::uint32_t> keep;
    for (auto k : stabilizer_indices) {
        const auto& s = layout.stabilizers.at(k);
        keep.insert(s.syndrome_id);
        keep.insert(s.data_ids.begin(), s.data_ids.end());
        keep.insert(s.flag_ids.begin(), s.flag_ids.end());
    }
    std::map<std::uint32_t, std::uint32_t> remap;
    CodeLayout out;
    out.family = layout.family;
    out.structure = layout.structure;
    out.distance = layout.distance;
    for (auto q : keep) {
        auto id = static_cast<std::uint32_t>(out.qubits.size());
        remap[q] = id;
        Qubit copy = layout.qubits[q];
        copy.id = id;
        out.qubits.push_back(copy);
    }
    for (auto [a, b] : layout.couplings) {
        if (keep.count(a) && keep.count(b)) {
            out.couplings.emplace_back(remap[a], remap[b]);
        }
    }
    auto map_all = [&](std::vector<std::uint32_t>& v) {
        for (auto& q : v) {
            q = remap.at(q);
        }
    };
    for (auto k : stabilizer_indices) {
        StabilizerSpec s = layout.stabilizers[k];
        s.syndrome_id = remap.at(s.syndrome_id);
        map_all(s.data_ids);
        map_all(s.data_anchors);
        map_all(s.flag_ids);
        map_all(s.flag_parents);
        out.stabilizers.push_back(std::move(s));
    }
    return out;
}

}  // namespace hexqec
