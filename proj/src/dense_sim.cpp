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

#include "hexqec/dense_sim.hpp"

#include <cmath>
#include <complex>
#include <stdexcept>

namespace hexqec {

namespace {

using cd = std::complex<double>;
constexpr cd kI{0.0, 1.0};

double uniform01(std::mt19937_64& rng) { return static_cast<double>(rng() >> 11) * 0x1.0p-53; }

}  // namespace

DenseState::DenseState(std::uint32_t num_qubits) : n_(num_qubits) {
    if (num_qubits > kMaxDenseQubits) {
        throw std::invalid_argument("dense simulation is limited to " + std::to_string(kMaxDenseQubits) +
                                    " qubits, got " + std::to_string(num_qubits));
    }
    amp_ = Eigen::VectorXcd::Zero(Eigen::Index{1} << num_qubits);
    amp_(0) = 1.0;
}

void DenseState::h(std::uint32_t q) {
    const Eigen::Index m = Eigen::Index{1} << q;
    const double r = 1.0 / std::sqrt(2.0);
    for (Eigen::Index i = 0; i < amp_.size(); ++i) {
        if ((i & m) == 0) {
            cd a = amp_(i);
            cd b = amp_(i | m);
            amp_(i) = (a + b) * r;
            amp_(i | m) = (a - b) * r;
        }
    }
}

void DenseState::s(std::uint32_t q) {
    const Eigen::Index m = Eigen::Index{1} << q;
    for (Eigen::Index i = 0; i < amp_.size(); ++i) {
        if ((i & m) != 0) {
            amp_(i) *= kI;
        }
    }
}

void DenseState::s_dag(std::uint32_t q) {
    const Eigen::Index m = Eigen::Index{1} << q;
    for (Eigen::Index i = 0; i < amp_.size(); ++i) {
        if ((i & m) != 0) {
            amp_(i) *= -kI;
        }
    }
}

void DenseState::x(std::uint32_t q) {
    const Eigen::Index m = Eigen::Index{1} << q;
    for (Eigen::Index i = 0; i < amp_.size(); ++i) {
        if ((i & m) == 0) {
            std::swap(amp_(i), amp_(i | m));
        }
    }
}

void DenseState::z(std::uint32_t q) {
    const Eigen::Index m = Eigen::Index{1} << q;
    for (Eigen::Index i = 0; i < amp_.size(); ++i) {
        if ((i & m) != 0) {
            amp_(i) = -amp_(i);
        }
    }
}

void DenseState::y(std::uint32_t q) {
    const Eigen::Index m = Eigen::Index{1} << q;
    for (Eigen::Index i = 0; i < amp_.size(); ++i) {
        if ((i & m) == 0) {
            cd a = amp_(i);
            cd b = amp_(i | m);
            amp_(i) = -kI * b;
            amp_(i | m) = kI * a;
        }
    }
}

void DenseState::pauli(std::uint32_t q, Pauli p) {
    switch (p) {
        case Pauli::X:
            x(q);
            break;
        case Pauli::Y:
            y(q);
            break;
        case Pauli::Z:
            z(q);
            break;
        case Pauli::I:
            break;
    }
}

void DenseState::cx(std::uint32_t c, std::uint32_t t) {
    const Eigen::Index mc = Eigen::Index{1} << c;
    const Eigen::Index mt = Eigen::Index{1} << t;
    for (Eigen::Index i = 0; i < amp_.size(); ++i) {
        if ((i & mc) != 0 && (i & mt) == 0) {
            std::swap(amp_(i), amp_(i | mt));
        }
    }
}

void DenseState::cy(std::uint32_t c, std::uint32_t t) {
    const Eigen::Index mc = Eigen::Index{1} << c;
    const Eigen::Index mt = Eigen::Index{1} << t;
    for (Eigen::Index i = 0; i < amp_.size(); ++i) {
        if ((i & mc) != 0 && (i & mt) == 0) {
            cd a = amp_(i);
            cd b = amp_(i | mt);
            amp_(i) = -kI * b;
            amp_(i | mt) = kI * a;
        }
    }
}

double DenseState::probability_one(std::uint32_t q) const {
    const Eigen::Index m = Eigen::Index{1} << q;
    double p = 0;
    for (Eigen::Index i = 0; i < amp_.size(); ++i) {
        if ((i & m) != 0) {
            p += std::norm(amp_(i));
        }
    }
    return p;
}

void DenseState::project(std::uint32_t q, bool outcome) {
    const Eigen::Index m = Eigen::Index{1} << q;
    for (Eigen::Index i = 0; i < amp_.size(); ++i) {
        if (((i & m) != 0) != outcome) {
            amp_(i) = 0;
        }
    }
    double norm = amp_.norm();
    if (norm == 0) {
        throw std::logic_error("projection onto a zero-probability outcome");
    }
    amp_ /= norm;
}

bool DenseState::measure_z(std::uint32_t q, std::mt19937_64& rng) {
    double p1 = probability_one(q);
    bool outcome = uniform01(rng) < p1;
    project(q, outcome);
    return outcome;
}

bool DenseState::measure_x(std::uint32_t q, std::mt19937_64& rng) {
    h(q);
    bool r = measure_z(q, rng);
    h(q);
    return r;
}

bool DenseState::measure_y(std::uint32_t q, std::mt19937_64& rng) {
    s_dag(q);
    h(q);
    bool r = measure_z(q, rng);
    h(q);
    s(q);
    return r;
}

void DenseState::reset_z(std::uint32_t q, std::mt19937_64& rng) {
    if (measure_z(q, rng)) {
        x(q);
    }
}

namespace {

// Runs the patch unitarily with terminal measurements turned into basis
// rotations. Returns false if the circuit is not of that shape.
bool run_patch_unitary(const Circuit& circuit, const std::vector<bool>& is_data, DenseState& state,
                       std::vector<std::int64_t>& measured_at) {
    const auto n = circuit.num_qubits();
    std::vector<bool> touched(n, false);
    std::vector<bool> done(n, false);
    measured_at.assign(n, -1);
    for (const auto& op : circuit.ops()) {
        if (is_noise(op.kind) || op.kind == OpKind::Tick || op.kind == OpKind::Cycle) {
            continue;
        }
        auto uses = [&](std::uint32_t q) { return done[q]; };
        if (uses(op.a) || (is_two_qubit_gate(op.kind) && uses(op.b))) {
            return false;
        }
        switch (op.kind) {
            case OpKind::PrepZ:
            case OpKind::PrepX:
            case OpKind::PrepY:
                if (is_data[op.a] || touched[op.a]) {
                    return false;
                }
                if (op.kind != OpKind::PrepZ) {
                    state.h(op.a);
                }
                if (op.kind == OpKind::PrepY) {
                    state.s(op.a);
                }
                break;
            case OpKind::H:
                state.h(op.a);
                break;
            case OpKind::CX:
                state.cx(op.a, op.b);
                touched[op.b] = true;
                break;
            case OpKind::CY:
                state.cy(op.a, op.b);
                touched[op.b] = true;
                break;
            case OpKind::MeasZ:
            case OpKind::MeasX:
            case OpKind::MeasY:
                if (is_data[op.a]) {
                    return false;
                }
                if (op.kind == OpKind::MeasX) {
                    state.h(op.a);
                } else if (op.kind == OpKind::MeasY) {
                    state.s_dag(op.a);
                    state.h(op.a);
                }
                done[op.a] = true;
                measured_at[op.a] = op.record;
                break;
            default:
                break;
        }
        touched[op.a] = true;
    }
    for (std::uint32_t q = 0; q < n; ++q) {
        if (!is_data[q] && !done[q]) {
            return false;
        }
    }
    return true;
}

}  // namespace

bool verify_patch(const Circuit& circuit, const StabilizerSpec& stab) {
    const auto n = circuit.num_qubits();
    if (n > kMaxDenseQubits) {
        throw std::invalid_argument("verify_patch is limited to " + std::to_string(kMaxDenseQubits) + " qubits");
    }
    if (stab.data_ids.empty() || stab.letters.size() != stab.data_ids.size() || stab.syndrome_id >= n) {
        return false;
    }
    std::vector<bool> is_data(n, false);
    for (auto q : stab.data_ids) {
        if (q >= n || q == stab.syndrome_id) {
            return false;
        }
        is_data[q] = true;
    }
    const std::size_t k = stab.data_ids.size();
    const Eigen::Index dim = Eigen::Index{1} << k;
    // Embeds a data-register index into the full register.
    auto embed = [&](Eigen::Index j) {
        Eigen::Index i = 0;
        for (std::size_t b = 0; b < k; ++b) {
            if ((j >> b) & 1) {
                i |= Eigen::Index{1} << stab.data_ids[b];
            }
        }
        return i;
    };
    std::mt19937_64 rng(12345);
    std::normal_distribution<double> normal;
    for (int trial = 0; trial < 3; ++trial) {
        Eigen::VectorXcd psi(dim);
        for (Eigen::Index j = 0; j < dim; ++j) {
            psi(j) = cd(normal(rng), normal(rng));
        }
        psi.normalize();
        // S psi on the data register alone.
        DenseState data_state(static_cast<std::uint32_t>(k));
        data_state.amplitudes() = psi;
        for (std::size_t b = 0; b < k; ++b) {
            data_state.pauli(static_cast<std::uint32_t>(b), stab.letters[b]);
        }
        Eigen::VectorXcd plus = 0.5 * (psi + data_state.amplitudes());
        Eigen::VectorXcd minus = 0.5 * (psi - data_state.amplitudes());

        DenseState state(n);
        state.amplitudes().setZero();
        for (Eigen::Index j = 0; j < dim; ++j) {
            state.amplitudes()(embed(j)) = psi(j);
        }
        std::vector<std::int64_t> measured_at;
        if (!run_patch_unitary(circuit, is_data, state, measured_at)) {
            return false;
        }
        const Eigen::Index syn = Eigen::Index{1} << stab.syndrome_id;
        Eigen::VectorXcd got_plus(dim);
        Eigen::VectorXcd got_minus(dim);
        for (Eigen::Index j = 0; j < dim; ++j) {
            got_plus(j) = state.amplitudes()(embed(j));
            got_minus(j) = state.amplitudes()(embed(j) | syn);
        }
        double rest = state.amplitudes().squaredNorm() - got_plus.squaredNorm() - got_minus.squaredNorm();
        if (rest > 1e-9) {
            return false;
        }
        Eigen::VectorXcd want(2 * dim);
        Eigen::VectorXcd got(2 * dim);
        want << plus, minus;
        got << got_plus, got_minus;
        cd c = want.dot(got) / want.squaredNorm();
        if (std::abs(std::abs(c) - 1.0) > 1e-9 || (got - c * want).norm() > 1e-9) {
            return false;
        }
    }
    return true;
}

SampleBatch dense_oracle(const Circuit& circuit, std::size_t shots, std::uint64_t seed, bool keep_flags) {
    const auto n = circuit.num_qubits();
    if (n > kMaxDenseQubits) {
        throw std::invalid_argument("dense_oracle is limited to " + std::to_string(kMaxDenseQubits) + " qubits");
    }
    SampleBatch out;
    out.shots = shots;
    out.detectors = BitMatrix(shots, circuit.detectors().size());
    out.observables = BitMatrix(shots, circuit.observables().size());
    if (keep_flags) {
        out.flags = BitMatrix(shots, circuit.flag_records().size());
    }
    auto rng = make_stream(seed, 0);
    std::vector<std::uint8_t> records(circuit.num_measurements());
    std::vector<OpKind> last_prep(n, OpKind::PrepZ);
    for (std::size_t shot = 0; shot < shots; ++shot) {
        DenseState st(n);
        for (const auto& op : circuit.ops()) {
            switch (op.kind) {
                case OpKind::PrepZ:
                case OpKind::PrepX:
                case OpKind::PrepY:
                    st.reset_z(op.a, rng);
                    if (op.kind != OpKind::PrepZ) {
                        st.h(op.a);
                    }
                    if (op.kind == OpKind::PrepY) {
                        st.s(op.a);
                    }
                    last_prep[op.a] = op.kind;
                    break;
                case OpKind::H:
                    st.h(op.a);
                    break;
                case OpKind::CX:
                    st.cx(op.a, op.b);
                    break;
                case OpKind::CY:
                    st.cy(op.a, op.b);
                    break;
                case OpKind::MeasZ:
                    records[op.record] = st.measure_z(op.a, rng);
                    break;
                case OpKind::MeasX:
                    records[op.record] = st.measure_x(op.a, rng);
                    break;
                case OpKind::MeasY:
                    records[op.record] = st.measure_y(op.a, rng);
                    break;
                case OpKind::E1: {
                    double u = uniform01(rng);
                    if (u < op.p[0]) {
                        st.x(op.a);
                    } else if (u < op.p[0] + op.p[1]) {
                        st.y(op.a);
                    } else if (u < op.p[0] + op.p[1] + op.p[2]) {
                        st.z(op.a);
                    }
                    break;
                }
                case OpKind::E2: {
                    if (uniform01(rng) < op.p[0]) {
                        auto k = static_cast<unsigned>(rng() % 15) + 1;
                        st.pauli(op.a, pauli_from_bits(k & 1u, k & 2u));
                        st.pauli(op.b, pauli_from_bits(k & 4u, k & 8u));
                    }
                    break;
                }
                case OpKind::EPrep:
                    if (uniform01(rng) < op.p[0]) {
                        if (last_prep[op.a] == OpKind::PrepX) {
                            st.z(op.a);
                        } else {
                            st.x(op.a);
                        }
                    }
                    break;
                case OpKind::EMeas:
                    if (uniform01(rng) < op.p[0]) {
                        records[op.record] ^= 1;
                    }
                    break;
                default:
                    break;
            }
        }
        for (std::size_t d = 0; d < circuit.detectors().size(); ++d) {
            std::uint8_t v = 0;
            for (auto r : circuit.detectors()[d].records) {
                v ^= records[r];
            }
            out.detectors.set(shot, d, v != 0);
        }
        for (std::size_t o = 0; o < circuit.observables().size(); ++o) {
            std::uint8_t v = 0;
            for (auto r : circuit.observables()[o].records) {
                v ^= records[r];
            }
            out.observables.set(shot, o, v != 0);
        }
        if (keep_flags) {
            for (std::size_t f = 0; f < circuit.flag_records().size(); ++f) {
                out.flags.set(shot, f, records[circuit.flag_records()[f]] != 0);
            }
        }
    }
    return out;
}

}  // namespace hexqec
