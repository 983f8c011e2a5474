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

#include "hexqec/circuit_builder.hpp"

#include <algorithm>
#include <map>
#include <stdexcept>

namespace hexqec {

namespace {

Instruction make1(OpKind kind, std::uint32_t q) {
    Instruction op;
    op.kind = kind;
    op.a = q;
    return op;
}

Instruction make2(OpKind kind, std::uint32_t c, std::uint32_t t) {
    Instruction op;
    op.kind = kind;
    op.a = c;
    op.b = t;
    return op;
}

void check_template(const StabilizerSpec& stab, Structure structure) {
    if (stab.weight() != 3 && stab.weight() != 4) {
        throw std::invalid_argument("stabilizer weight must be 3 or 4");
    }
    if (stab.letters.size() != stab.weight() || stab.data_directions.size() != stab.weight() ||
        stab.data_anchors.size() != stab.weight() || stab.flag_parents.size() != stab.flag_ids.size()) {
        throw std::invalid_argument("stabilizer fields have inconsistent lengths");
    }
    for (auto l : stab.letters) {
        if (l == Pauli::I) {
            throw std::invalid_argument("stabilizer letter I has no measurement template");
        }
    }
    if (structure == Structure::Lattice) {
        if (!stab.flag_ids.empty()) {
            throw std::invalid_argument("lattice stabilizers take no flag qubits");
        }
        for (auto a : stab.data_anchors) {
            if (a != stab.syndrome_id) {
                throw std::invalid_argument("lattice data qubits must couple to the syndrome directly");
            }
        }
        return;
    }
    if (stab.flag_ids.empty()) {
        throw std::invalid_argument("heavy-hex stabilizers need flag qubits");
    }
    std::map<std::uint32_t, int> children;
    for (std::size_t k = 0; k < stab.flag_ids.size(); ++k) {
        ++children[stab.flag_parents[k]];
    }
    if (children[stab.syndrome_id] != 2) {
        throw std::invalid_argument("heavy-hex patch needs exactly two flags on the syndrome");
    }
    for (auto a : stab.data_anchors) {
        if (a == stab.syndrome_id) {
            throw std::invalid_argument("heavy-hex data qubits must couple through flags");
        }
    }
}

// Entangles a Pauli-frame-X control qubit with data qubit `data` so that the
// control picks up the letter `letter` acting on the data.
void controlled_letter(std::vector<std::vector<Instruction>>& layers, std::size_t pre, std::size_t mid,
                       std::size_t post, std::uint32_t control, std::uint32_t data, Pauli letter) {
    switch (letter) {
        case Pauli::X:
            layers[mid].push_back(make2(OpKind::CX, control, data));
            break;
        case Pauli::Y:
            layers[mid].push_back(make2(OpKind::CY, control, data));
            break;
        case Pauli::Z:
            layers[pre].push_back(make1(OpKind::H, control));
            layers[mid].push_back(make2(OpKind::CX, data, control));
            layers[post].push_back(make1(OpKind::H, control));
            break;
        case Pauli::I:
            break;
    }
}

PatchSchedule schedule_heavy_hex(const StabilizerSpec& stab) {
    constexpr std::size_t kLayers = 22;
    PatchSchedule out;
    out.layers.resize(kLayers);
    auto& L = out.layers;

    std::map<std::uint32_t, int> depth;
    depth[stab.syndrome_id] = 0;
    std::vector<std::size_t> inner;
    for (std::size_t k = 0; k < stab.flag_ids.size(); ++k) {
        auto it = depth.find(stab.flag_parents[k]);
        if (it == depth.end()) {
            throw std::invalid_argument("flag listed before its parent");
        }
        int dep = it->second + 1;
        if (dep > 3) {
            throw std::invalid_argument("flag chains longer than three are not supported");
        }
        depth[stab.flag_ids[k]] = dep;
        if (dep == 1) {
            inner.push_back(k);
        }
    }

    L[0].push_back(make1(OpKind::PrepX, stab.syndrome_id));
    for (auto f : stab.flag_ids) {
        L[0].push_back(make1(OpKind::PrepZ, f));
    }
    // Grow the GHZ tree outward, then shrink it in reverse.
    for (std::size_t k = 0; k < stab.flag_ids.size(); ++k) {
        int dep = depth[stab.flag_ids[k]];
        std::size_t grow;
        std::size_t shrink;
        if (dep == 1) {
            bool first = k == inner[0];
            grow = first ? 1 : 2;
            shrink = first ? 20 : 19;
        } else {
            grow = static_cast<std::size_t>(dep + 1);
            shrink = static_cast<std::size_t>(20 - dep);
        }
        auto cx = make2(OpKind::CX, stab.flag_parents[k], stab.flag_ids[k]);
        L[grow].push_back(cx);
        L[shrink].push_back(cx);
    }
    for (std::size_t j = 0; j < stab.weight(); ++j) {
        auto slot = static_cast<std::size_t>(stab.data_directions[j]);
        controlled_letter(L, 5 + 3 * slot, 6 + 3 * slot, 7 + 3 * slot, stab.data_anchors[j], stab.data_ids[j],
                          stab.letters[j]);
    }
    L[21].push_back(make1(OpKind::MeasX, stab.syndrome_id));
    for (auto f : stab.flag_ids) {
        L[21].push_back(make1(OpKind::MeasZ, f));
    }
    return out;
}

PatchSchedule schedule_lattice(const StabilizerSpec& stab) {
    constexpr std::size_t kLayers = 10;
    PatchSchedule out;
    out.layers.resize(kLayers);
    auto& L = out.layers;
    const auto s = stab.syndrome_id;

    std::vector<std::size_t> order(stab.weight());
    for (std::size_t j = 0; j < order.size(); ++j) {
        order[j] = j;
    }
    std::sort(order.begin(), order.end(),
              [&](auto a, auto b) { return stab.data_directions[a] < stab.data_directions[b]; });

    // The syndrome sits in the X frame for X/Y letters (it is the control) and
    // in the Z frame for Z letters (it is the target).
    auto frame_of = [](Pauli letter) { return letter == Pauli::Z ? Pauli::Z : Pauli::X; };
    Pauli frame = frame_of(stab.letters[order[0]]);
    L[0].push_back(make1(frame == Pauli::X ? OpKind::PrepX : OpKind::PrepZ, s));
    for (auto j : order) {
        auto slot = static_cast<std::size_t>(stab.data_directions[j]);
        Pauli want = frame_of(stab.letters[j]);
        if (want != frame) {
            L[1 + 2 * slot].push_back(make1(OpKind::H, s));
            frame = want;
        }
        auto d = stab.data_ids[j];
        switch (stab.letters[j]) {
            case Pauli::X:
                L[2 + 2 * slot].push_back(make2(OpKind::CX, s, d));
                break;
            case Pauli::Y:
                L[2 + 2 * slot].push_back(make2(OpKind::CY, s, d));
                break;
            case Pauli::Z:
                L[2 + 2 * slot].push_back(make2(OpKind::CX, d, s));
                break;
            case Pauli::I:
                break;
        }
    }
    L[9].push_back(make1(frame == Pauli::X ? OpKind::MeasX : OpKind::MeasZ, s));
    return out;
}

// Emits layers into a circuit, separated by ticks, skipping empty layers.
void emit_layers(Circuit& c, const std::vector<std::vector<Instruction>>& layers, std::vector<std::uint32_t>* records,
                 std::vector<std::uint32_t>* qubits_measured) {
    for (const auto& layer : layers) {
        if (layer.empty()) {
            continue;
        }
        for (const auto& op : layer) {
            c.append(op);
            if (is_measurement(op.kind)) {
                if (records != nullptr) {
                    records->push_back(c.num_measurements() - 1);
                }
                if (qubits_measured != nullptr) {
                    qubits_measured->push_back(op.a);
                }
            }
        }
        c.tick();
    }
}

}  // namespace

PatchSchedule schedule_patch(const StabilizerSpec& stab, Structure structure) {
    check_template(stab, structure);
    return structure == Structure::HeavyHex ? schedule_heavy_hex(stab) : schedule_lattice(stab);
}

PatchCircuit build_patch_circuit(const StabilizerSpec& stab, Structure structure) {
    check_template(stab, structure);
    PatchCircuit out;
    std::map<std::uint32_t, std::uint32_t> local;
    auto add = [&](std::uint32_t g) {
        if (local.emplace(g, static_cast<std::uint32_t>(out.global_ids.size())).second) {
            out.global_ids.push_back(g);
        }
    };
    for (auto q : stab.data_ids) {
        add(q);
    }
    add(stab.syndrome_id);
    for (auto q : stab.flag_ids) {
        add(q);
    }
    out.stab = stab;
    auto remap = [&](std::uint32_t& q) { q = local.at(q); };
    out.stab.syndrome_id = local.at(stab.syndrome_id);
    for (auto* v : {&out.stab.data_ids, &out.stab.data_anchors, &out.stab.flag_ids, &out.stab.flag_parents}) {
        for (auto& q : *v) {
            remap(q);
        }
    }
    out.circuit = Circuit(static_cast<std::uint32_t>(out.global_ids.size()));
    auto schedule = schedule_patch(out.stab, structure);
    std::vector<std::uint32_t> records;
    std::vector<std::uint32_t> measured;
    emit_layers(out.circuit, schedule.layers, &records, &measured);
    for (std::size_t k = 0; k < records.size(); ++k) {
        if (measured[k] == out.stab.syndrome_id) {
            out.syndrome_record = records[k];
        } else {
            out.flag_records.push_back(records[k]);
            out.circuit.mark_flag_record(records[k]);
        }
    }
    return out;
}

StabilizerGroup protecting_group(const CodeLayout& layout, LogicalBasis basis) {
    const auto& logical = layout.logicals[static_cast<std::size_t>(basis)];
    std::array<bool, 2> matches{true, true};
    std::array<bool, 2> touches{false, false};
    for (const auto& s : layout.stabilizers) {
        auto g = static_cast<std::size_t>(s.group);
        for (std::size_t j = 0; j < s.weight(); ++j) {
            Pauli l = logical.at(s.data_ids[j]);
            if (l == Pauli::I) {
                continue;
            }
            touches[g] = true;
            if (l != s.letters[j]) {
                matches[g] = false;
            }
        }
    }
    bool m1 = matches[0] && touches[0];
    bool m2 = matches[1] && touches[1];
    if (m1 == m2) {
        throw std::invalid_argument("logical operator does not single out a stabilizer group");
    }
    return m1 ? StabilizerGroup::S1 : StabilizerGroup::S2;
}

std::vector<Pauli> data_bases(const CodeLayout& layout, LogicalBasis basis) {
    auto g = protecting_group(layout, basis);
    std::vector<Pauli> out(layout.qubits.size(), Pauli::I);
    for (const auto& s : layout.stabilizers) {
        if (s.group != g) {
            continue;
        }
        for (std::size_t j = 0; j < s.weight(); ++j) {
            auto& slot = out[s.data_ids[j]];
            if (slot != Pauli::I && slot != s.letters[j]) {
                throw std::logic_error("protecting group acts with two letters on one data qubit");
            }
            slot = s.letters[j];
        }
    }
    for (auto q : layout.ids_with_role(QubitRole::Data)) {
        if (out[q] == Pauli::I) {
            throw std::logic_error("data qubit untouched by the protecting group");
        }
    }
    return out;
}

Circuit build_stabilizer_experiment(const CodeLayout& layout, int rounds, const std::vector<Pauli>& bases,
                                    const PauliString* observable, int observable_group) {
    if (rounds < 1) {
        throw std::invalid_argument("rounds must be at least 1");
    }
    if (bases.size() != layout.qubits.size()) {
        throw std::invalid_argument("one basis letter per layout qubit is required");
    }
    const auto data = layout.ids_with_role(QubitRole::Data);
    for (auto q : data) {
        if (bases[q] == Pauli::I) {
            throw std::invalid_argument("every data qubit needs a preparation basis");
        }
    }
    auto prep_kind = [&](std::uint32_t q) {
        return bases[q] == Pauli::X ? OpKind::PrepX : bases[q] == Pauli::Y ? OpKind::PrepY : OpKind::PrepZ;
    };
    auto meas_kind = [&](std::uint32_t q) {
        return bases[q] == Pauli::X ? OpKind::MeasX : bases[q] == Pauli::Y ? OpKind::MeasY : OpKind::MeasZ;
    };
    const std::size_t n_stabs = layout.stabilizers.size();
    std::vector<bool> anchored(n_stabs, true);
    for (std::size_t k = 0; k < n_stabs; ++k) {
        const auto& s = layout.stabilizers[k];
        for (std::size_t j = 0; j < s.weight(); ++j) {
            anchored[k] = anchored[k] && bases[s.data_ids[j]] == s.letters[j];
        }
    }

    Circuit c(static_cast<std::uint32_t>(layout.qubits.size()));
    for (auto q : data) {
        c.prep(prep_kind(q), q);
    }
    c.tick();

    std::vector<PatchSchedule> schedules;
    schedules.reserve(n_stabs);
    for (const auto& s : layout.stabilizers) {
        schedules.push_back(schedule_patch(s, layout.structure));
    }
    // Stabilizers measured together in one cycle.
    std::vector<std::vector<std::size_t>> cycles;
    if (layout.structure == Structure::HeavyHex) {
        cycles.resize(2);
        for (std::size_t k = 0; k < n_stabs; ++k) {
            cycles[static_cast<std::size_t>(layout.stabilizers[k].group)].push_back(k);
        }
        cycles.erase(std::remove_if(cycles.begin(), cycles.end(), [](const auto& v) { return v.empty(); }),
                     cycles.end());
    } else {
        cycles.resize(1);
        for (std::size_t k = 0; k < n_stabs; ++k) {
            cycles[0].push_back(k);
        }
    }

    std::vector<std::vector<std::uint32_t>> syndrome_record(static_cast<std::size_t>(rounds),
                                                            std::vector<std::uint32_t>(n_stabs));
    for (int r = 0; r < rounds; ++r) {
        for (const auto& cycle : cycles) {
            c.cycle(static_cast<std::uint32_t>(r), data);
            std::size_t n_layers = 0;
            for (auto k : cycle) {
                n_layers = std::max(n_layers, schedules[k].layers.size());
            }
            std::vector<std::vector<Instruction>> merged(n_layers);
            for (auto k : cycle) {
                for (std::size_t t = 0; t < schedules[k].layers.size(); ++t) {
                    merged[t].insert(merged[t].end(), schedules[k].layers[t].begin(), schedules[k].layers[t].end());
                }
            }
            std::vector<std::uint32_t> records;
            std::vector<std::uint32_t> measured;
            emit_layers(c, merged, &records, &measured);
            std::map<std::uint32_t, std::uint32_t> record_of;
            for (std::size_t k = 0; k < records.size(); ++k) {
                record_of[measured[k]] = records[k];
            }
            std::vector<bool> is_syndrome(layout.qubits.size(), false);
            for (auto k : cycle) {
                const auto q = layout.stabilizers[k].syndrome_id;
                syndrome_record[static_cast<std::size_t>(r)][k] = record_of.at(q);
                is_syndrome[q] = true;
            }
            for (std::size_t k = 0; k < records.size(); ++k) {
                if (!is_syndrome[measured[k]]) {
                    c.mark_flag_record(records[k]);
                }
            }
        }
    }

    std::vector<std::uint32_t> data_record(layout.qubits.size(), 0);
    for (auto q : data) {
        data_record[q] = c.measure(meas_kind(q), q);
    }
    c.tick();

    for (int r = 0; r < rounds; ++r) {
        for (std::size_t k = 0; k < n_stabs; ++k) {
            if (r == 0 && !anchored[k]) {
                continue;
            }
            DetectorDef det;
            det.tag = {static_cast<int>(layout.stabilizers[k].group), static_cast<int>(k), r};
            det.records.push_back(syndrome_record[static_cast<std::size_t>(r)][k]);
            if (r > 0) {
                det.records.push_back(syndrome_record[static_cast<std::size_t>(r - 1)][k]);
            }
            c.add_detector(std::move(det));
        }
    }
    for (std::size_t k = 0; k < n_stabs; ++k) {
        if (!anchored[k]) {
            continue;
        }
        const auto& s = layout.stabilizers[k];
        DetectorDef det;
        det.tag = {static_cast<int>(s.group), static_cast<int>(k), rounds};
        det.records.push_back(syndrome_record[static_cast<std::size_t>(rounds - 1)][k]);
        for (auto q : s.data_ids) {
            det.records.push_back(data_record[q]);
        }
        c.add_detector(std::move(det));
    }
    if (observable != nullptr) {
        ObservableDef obs;
        obs.group = observable_group;
        for (const auto& [q, letter] : observable->terms()) {
            if (bases.at(q) != letter) {
                throw std::invalid_argument("observable letters must match the data bases");
            }
            obs.records.push_back(data_record[q]);
        }
        c.add_observable(std::move(obs));
    }
    return c;
}

Circuit build_memory_circuit(const CodeLayout& layout, int rounds, LogicalBasis basis) {
    const auto group = protecting_group(layout, basis);
    return build_stabilizer_experiment(layout, rounds, data_bases(layout, basis),
                                       &layout.logicals[static_cast<std::size_t>(basis)], static_cast<int>(group));
}

}  // namespace hexqec
