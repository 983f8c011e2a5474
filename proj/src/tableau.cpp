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

#include "hexqec/tableau.hpp"

#include <bit>
#include <stdexcept>

namespace hexqec {

TableauSimulator::TableauSimulator(std::uint32_t num_qubits, std::optional<std::uint64_t> seed)
    : n_(num_qubits),
      words_((num_qubits + 63) / 64),
      xs_((2 * num_qubits + 1) * words_, 0),
      zs_((2 * num_qubits + 1) * words_, 0),
      rs_(2 * num_qubits + 1, 0) {
    if (seed) {
        rng_.emplace(*seed);
    }
    for (std::uint32_t q = 0; q < n_; ++q) {
        xs_[q * words_ + q / 64] |= std::uint64_t{1} << (q % 64);
        zs_[(n_ + q) * words_ + q / 64] |= std::uint64_t{1} << (q % 64);
    }
}

void TableauSimulator::h(std::uint32_t q) {
    const std::size_t w = q / 64;
    const std::uint64_t m = std::uint64_t{1} << (q % 64);
    for (Row r = 0; r < 2 * n_; ++r) {
        auto& x = xs_[r * words_ + w];
        auto& z = zs_[r * words_ + w];
        bool xb = (x & m) != 0;
        bool zb = (z & m) != 0;
        rs_[r] ^= static_cast<std::uint8_t>(xb && zb);
        if (xb != zb) {
            x ^= m;
            z ^= m;
        }
    }
}

void TableauSimulator::s(std::uint32_t q) {
    const std::size_t w = q / 64;
    const std::uint64_t m = std::uint64_t{1} << (q % 64);
    for (Row r = 0; r < 2 * n_; ++r) {
        auto x = xs_[r * words_ + w];
        auto& z = zs_[r * words_ + w];
        bool xb = (x & m) != 0;
        bool zb = (z & m) != 0;
        rs_[r] ^= static_cast<std::uint8_t>(xb && zb);
        if (xb) {
            z ^= m;
        }
    }
}

void TableauSimulator::s_dag(std::uint32_t q) {
    s(q);
    s(q);
    s(q);
}

void TableauSimulator::x(std::uint32_t q) {
    for (Row r = 0; r < 2 * n_; ++r) {
        rs_[r] ^= static_cast<std::uint8_t>(getz(r, q));
    }
}

void TableauSimulator::z(std::uint32_t q) {
    for (Row r = 0; r < 2 * n_; ++r) {
        rs_[r] ^= static_cast<std::uint8_t>(getx(r, q));
    }
}

void TableauSimulator::cx(std::uint32_t c, std::uint32_t t) {
    for (Row r = 0; r < 2 * n_; ++r) {
        bool xc = getx(r, c);
        bool zc = getz(r, c);
        bool xt = getx(r, t);
        bool zt = getz(r, t);
        rs_[r] ^= static_cast<std::uint8_t>(xc && zt && (xt == zc));
        if (xc) {
            xs_[r * words_ + t / 64] ^= std::uint64_t{1} << (t % 64);
        }
        if (zt) {
            zs_[r * words_ + c / 64] ^= std::uint64_t{1} << (c % 64);
        }
    }
}

void TableauSimulator::cy(std::uint32_t c, std::uint32_t t) {
    s_dag(t);
    cx(c, t);
    s(t);
}

void TableauSimulator::rowclear(Row r) {
    for (std::size_t w = 0; w < words_; ++w) {
        xs_[r * words_ + w] = 0;
        zs_[r * words_ + w] = 0;
    }
    rs_[r] = 0;
}

void TableauSimulator::rowcopy(Row dst, Row src) {
    for (std::size_t w = 0; w < words_; ++w) {
        xs_[dst * words_ + w] = xs_[src * words_ + w];
        zs_[dst * words_ + w] = zs_[src * words_ + w];
    }
    rs_[dst] = rs_[src];
}

// Row h <- row i * row h with the phase tracked modulo 4.
void TableauSimulator::rowsum(Row h, Row i) {
    std::uint64_t cnt1 = 0;
    std::uint64_t cnt2 = 0;
    for (std::size_t w = 0; w < words_; ++w) {
        std::uint64_t x1 = xs_[h * words_ + w];
        std::uint64_t z1 = zs_[h * words_ + w];
        const std::uint64_t x2 = xs_[i * words_ + w];
        const std::uint64_t z2 = zs_[i * words_ + w];
        const std::uint64_t old_x1 = x1;
        const std::uint64_t old_z1 = z1;
        x1 ^= x2;
        z1 ^= z2;
        const std::uint64_t x1z2 = old_x1 & z2;
        const std::uint64_t anti = (x2 & old_z1) ^ x1z2;
        cnt2 ^= (cnt1 ^ x1 ^ z1 ^ x1z2) & anti;
        cnt1 ^= anti;
        xs_[h * words_ + w] = x1;
        zs_[h * words_ + w] = z1;
    }
    int log_i = (std::popcount(cnt1) + 2 * std::popcount(cnt2)) & 3;
    rs_[h] = static_cast<std::uint8_t>((rs_[h] ^ rs_[i] ^ (log_i >> 1)) & 1);
}

bool TableauSimulator::measure_z(std::uint32_t q, bool* deterministic) {
    if (q >= n_) {
        throw std::out_of_range("qubit out of range");
    }
    Row p = 2 * n_;
    for (Row r = n_; r < 2 * n_; ++r) {
        if (getx(r, q)) {
            p = r;
            break;
        }
    }
    if (p < 2 * n_) {
        for (Row r = 0; r < 2 * n_; ++r) {
            if (r != p && getx(r, q)) {
                rowsum(r, p);
            }
        }
        rowcopy(p - n_, p);
        rowclear(p);
        zs_[p * words_ + q / 64] |= std::uint64_t{1} << (q % 64);
        rs_[p] = rng_ ? static_cast<std::uint8_t>((*rng_)() & 1u) : 0;
        if (deterministic != nullptr) {
            *deterministic = false;
        }
        return rs_[p] != 0;
    }
    const Row scratch = 2 * n_;
    rowclear(scratch);
    for (Row r = 0; r < n_; ++r) {
        if (getx(r, q)) {
            rowsum(scratch, r + n_);
        }
    }
    if (deterministic != nullptr) {
        *deterministic = true;
    }
    return rs_[scratch] != 0;
}

bool TableauSimulator::measure_x(std::uint32_t q, bool* deterministic) {
    h(q);
    bool r = measure_z(q, deterministic);
    h(q);
    return r;
}

bool TableauSimulator::measure_y(std::uint32_t q, bool* deterministic) {
    s_dag(q);
    h(q);
    bool r = measure_z(q, deterministic);
    h(q);
    s(q);
    return r;
}

void TableauSimulator::reset_z(std::uint32_t q) {
    if (measure_z(q)) {
        x(q);
    }
}

void TableauSimulator::reset_x(std::uint32_t q) {
    reset_z(q);
    h(q);
}

void TableauSimulator::reset_y(std::uint32_t q) {
    reset_z(q);
    h(q);
    s(q);
}

int TableauSimulator::peek(const PauliString& p) const {
    // Copy and measure: cheap enough for the test sizes this is used at.
    TableauSimulator copy = *this;
    copy.rng_.reset();
    std::uint32_t anchor = 0;
    bool first = true;
    // Rotate the product onto a single Z by Clifford conjugation.
    for (const auto& [q, l] : p.terms()) {
        if (q >= n_) {
            throw std::out_of_range("qubit out of range");
        }
        if (l == Pauli::X) {
            copy.h(q);
        } else if (l == Pauli::Y) {
            copy.s_dag(q);
            copy.h(q);
        }
        if (first) {
            anchor = q;
            first = false;
        } else {
            copy.cx(q, anchor);
        }
    }
    if (first) {
        return 1;
    }
    bool det = false;
    bool r = copy.measure_z(anchor, &det);
    if (!det) {
        return 0;
    }
    return r ? -1 : 1;
}

ReferenceRun reference_run(const Circuit& circuit, std::optional<std::uint64_t> seed) {
    TableauSimulator sim(circuit.num_qubits(), seed);
    ReferenceRun out;
    out.records.assign(circuit.num_measurements(), 0);
    out.record_deterministic.assign(circuit.num_measurements(), 0);
    for (const auto& op : circuit.ops()) {
        bool det = false;
        switch (op.kind) {
            case OpKind::PrepZ:
                sim.reset_z(op.a);
                break;
            case OpKind::PrepX:
                sim.reset_x(op.a);
                break;
            case OpKind::PrepY:
                sim.reset_y(op.a);
                break;
            case OpKind::H:
                sim.h(op.a);
                break;
            case OpKind::CX:
                sim.cx(op.a, op.b);
                break;
            case OpKind::CY:
                sim.cy(op.a, op.b);
                break;
            case OpKind::MeasZ:
                out.records[op.record] = sim.measure_z(op.a, &det);
                out.record_deterministic[op.record] = det;
                break;
            case OpKind::MeasX:
                out.records[op.record] = sim.measure_x(op.a, &det);
                out.record_deterministic[op.record] = det;
                break;
            case OpKind::MeasY:
                out.records[op.record] = sim.measure_y(op.a, &det);
                out.record_deterministic[op.record] = det;
                break;
            default:
                break;
        }
    }
    auto parity = [&](const std::vector<std::uint32_t>& records) {
        std::uint8_t v = 0;
        for (auto r : records) {
            v ^= out.records[r];
        }
        return v;
    };
    for (const auto& d : circuit.detectors()) {
        out.detectors.push_back(parity(d.records));
    }
    for (const auto& o : circuit.observables()) {
        out.observables.push_back(parity(o.records));
    }
    return out;
}

}  // namespace hexqec
