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

#include "hexqec/noise_model.hpp"

#include <charconv>
#include <cmath>
#include <stdexcept>

namespace hexqec {

Bias::Bias(double eta) : eta_(eta) {
    if (!(eta > 0) || std::isinf(eta)) {
        throw std::invalid_argument("bias must be a positive finite number; use Bias::infinite() for infinity");
    }
}

Bias Bias::infinite() {
    Bias b;
    b.infinite_ = true;
    return b;
}

Bias Bias::parse(std::string_view text) {
    if (text == "inf" || text == "Inf" || text == "INF" || text == "infinity") {
        return infinite();
    }
    double v = 0;
    auto res = std::from_chars(text.data(), text.data() + text.size(), v);
    if (res.ec != std::errc() || res.ptr != text.data() + text.size()) {
        throw std::invalid_argument("cannot parse bias '" + std::string(text) + "'");
    }
    return Bias(v);
}

double Bias::value() const {
    if (infinite_) {
        throw std::logic_error("infinite bias has no finite value");
    }
    return eta_;
}

std::string Bias::str() const {
    if (infinite_) {
        return "inf";
    }
    char buf[32];
    auto res = std::to_chars(buf, buf + sizeof(buf), eta_);
    return std::string(buf, res.ptr);
}

PauliRates pauli_rates(double p, Bias eta) {
    if (!(p >= 0 && p < 1)) {
        throw std::invalid_argument("physical error rate must lie in [0, 1)");
    }
    if (eta.is_infinite()) {
        return {0, 0, p};
    }
    double e = eta.value();
    double pxy = p / (2 * (e + 1));
    return {pxy, pxy, p * e / (e + 1)};
}

IdleMode parse_idle_mode(std::string_view text) {
    if (text == "per-cycle") {
        return IdleMode::PerCycle;
    }
    if (text == "per-round") {
        return IdleMode::PerRound;
    }
    throw std::invalid_argument("idle mode must be per-cycle or per-round");
}

Circuit apply_noise(const Circuit& circuit, const BiasedNoise& model) {
    const PauliRates r = model.rates();
    const double flip = r.px + r.py;
    Circuit out(circuit.num_qubits());
    int last_round = -1;
    for (const auto& op : circuit.ops()) {
        out.append(op);
        if (is_single_qubit_gate(op.kind)) {
            out.error1(r.px, r.py, r.pz, op.a);
        } else if (is_two_qubit_gate(op.kind)) {
            out.error2(model.p, op.a, op.b);
        } else if (is_prep(op.kind)) {
            out.error_prep(flip, op.a);
        } else if (is_measurement(op.kind)) {
            out.error_meas(flip, out.num_measurements() - 1);
        } else if (op.kind == OpKind::Cycle) {
            int round = static_cast<int>(op.a);
            bool fire = model.idle == IdleMode::PerCycle || round != last_round;
            last_round = round;
            if (fire) {
                for (auto q : op.qubits) {
                    out.error1(r.px, r.py, r.pz, q);
                }
            }
        }
    }
    for (auto rec : circuit.flag_records()) {
        out.mark_flag_record(rec);
    }
    for (const auto& d : circuit.detectors()) {
        out.add_detector(d);
    }
    for (const auto& o : circuit.observables()) {
        out.add_observable(o);
    }
    return out;
}

}  // namespace hexqec
