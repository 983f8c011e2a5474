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

#include "hexqec/circuit.hpp"

#include <algorithm>
#include <charconv>
#include <ostream>
#include <sstream>
#include <stdexcept>

namespace hexqec {

bool is_prep(OpKind k) { return k == OpKind::PrepZ || k == OpKind::PrepX || k == OpKind::PrepY; }
bool is_measurement(OpKind k) { return k == OpKind::MeasZ || k == OpKind::MeasX || k == OpKind::MeasY; }
bool is_single_qubit_gate(OpKind k) { return k == OpKind::H; }
bool is_two_qubit_gate(OpKind k) { return k == OpKind::CX || k == OpKind::CY; }
bool is_noise(OpKind k) {
    return k == OpKind::E1 || k == OpKind::E2 || k == OpKind::EPrep || k == OpKind::EMeas;
}

std::string_view op_name(OpKind k) {
    switch (k) {
        case OpKind::PrepZ:
            return "PZ";
        case OpKind::PrepX:
            return "PX";
        case OpKind::PrepY:
            return "PY";
        case OpKind::H:
            return "H";
        case OpKind::CX:
            return "CX";
        case OpKind::CY:
            return "CY";
        case OpKind::MeasZ:
            return "MZ";
        case OpKind::MeasX:
            return "MX";
        case OpKind::MeasY:
            return "MY";
        case OpKind::Tick:
            return "TICK";
        case OpKind::Cycle:
            return "CYCLE";
        case OpKind::E1:
            return "E1";
        case OpKind::E2:
            return "E2";
        case OpKind::EPrep:
            return "EPREP";
        case OpKind::EMeas:
            return "EMEAS";
    }
    return "?";
}

void Circuit::check_qubit(std::uint32_t q) const {
    if (q >= num_qubits_) {
        throw std::invalid_argument("qubit " + std::to_string(q) + " out of range (circuit has " +
                                    std::to_string(num_qubits_) + ")");
    }
}

void Circuit::check_record(std::uint32_t r) const {
    if (r >= num_measurements_) {
        throw std::invalid_argument("measurement record " + std::to_string(r) + " does not exist yet");
    }
}

static void check_probability(double p) {
    if (!(p >= 0.0 && p <= 1.0)) {
        throw std::invalid_argument("probability out of range: " + std::to_string(p));
    }
}

void Circuit::prep(OpKind kind, std::uint32_t q) {
    Instruction op;
    op.kind = kind;
    op.a = q;
    append(std::move(op));
}

void Circuit::gate1(OpKind kind, std::uint32_t q) {
    Instruction op;
    op.kind = kind;
    op.a = q;
    append(std::move(op));
}

void Circuit::gate2(OpKind kind, std::uint32_t control, std::uint32_t target) {
    Instruction op;
    op.kind = kind;
    op.a = control;
    op.b = target;
    append(std::move(op));
}

std::uint32_t Circuit::measure(OpKind kind, std::uint32_t q) {
    Instruction op;
    op.kind = kind;
    op.a = q;
    append(std::move(op));
    return num_measurements_ - 1;
}

void Circuit::tick() { append(Instruction{}); }

void Circuit::cycle(std::uint32_t round, std::vector<std::uint32_t> data_qubits) {
    Instruction op;
    op.kind = OpKind::Cycle;
    op.a = round;
    op.qubits = std::move(data_qubits);
    append(std::move(op));
}

void Circuit::error1(double px, double py, double pz, std::uint32_t q) {
    Instruction op;
    op.kind = OpKind::E1;
    op.a = q;
    op.p = {px, py, pz};
    append(std::move(op));
}

void Circuit::error2(double p, std::uint32_t control, std::uint32_t target) {
    Instruction op;
    op.kind = OpKind::E2;
    op.a = control;
    op.b = target;
    op.p[0] = p;
    append(std::move(op));
}

void Circuit::error_prep(double p, std::uint32_t q) {
    Instruction op;
    op.kind = OpKind::EPrep;
    op.a = q;
    op.p[0] = p;
    append(std::move(op));
}

void Circuit::error_meas(double p, std::uint32_t record) {
    Instruction op;
    op.kind = OpKind::EMeas;
    op.record = record;
    op.p[0] = p;
    append(std::move(op));
}

void Circuit::append(Instruction op) {
    switch (op.kind) {
        case OpKind::Tick:
            break;
        case OpKind::Cycle:
            for (auto q : op.qubits) {
                check_qubit(q);
            }
            break;
        case OpKind::CX:
        case OpKind::CY:
        case OpKind::E2:
            check_qubit(op.a);
            check_qubit(op.b);
            if (op.a == op.b) {
                throw std::invalid_argument("two-qubit operation on a single qubit " + std::to_string(op.a));
            }
            break;
        case OpKind::EMeas:
            check_record(op.record);
            break;
        default:
            check_qubit(op.a);
            break;
    }
    if (is_noise(op.kind)) {
        for (double p : op.p) {
            check_probability(p);
        }
        if (op.kind == OpKind::E1) {
            check_probability(op.p[0] + op.p[1] + op.p[2]);
        }
    }
    if (is_measurement(op.kind)) {
        op.record = num_measurements_++;
    }
    ops_.push_back(std::move(op));
}

void Circuit::add_detector(DetectorDef d) {
    for (auto r : d.records) {
        check_record(r);
    }
    detectors_.push_back(std::move(d));
}

void Circuit::add_observable(ObservableDef o) {
    for (auto r : o.records) {
        check_record(r);
    }
    observables_.push_back(std::move(o));
}

std::size_t Circuit::num_noise_ops() const {
    return static_cast<std::size_t>(
        std::count_if(ops_.begin(), ops_.end(), [](const Instruction& op) { return is_noise(op.kind); }));
}

std::size_t Circuit::num_ticks() const {
    return static_cast<std::size_t>(
        std::count_if(ops_.begin(), ops_.end(), [](const Instruction& op) { return op.kind == OpKind::Tick; }));
}

std::vector<std::int64_t> Circuit::last_records_before(std::size_t end) const {
    std::vector<std::int64_t> last(num_qubits_, -1);
    for (std::size_t k = 0; k < end && k < ops_.size(); ++k) {
        if (is_measurement(ops_[k].kind)) {
            last[ops_[k].a] = ops_[k].record;
        }
    }
    return last;
}

namespace {

std::string format_double(double v) {
    char buf[64];
    auto res = std::to_chars(buf, buf + sizeof(buf), v);
    return std::string(buf, res.ptr);
}

void write_records(std::ostream& out, const std::vector<std::uint32_t>& records) {
    for (auto r : records) {
        out << " m" << r;
    }
}

}  // namespace

void Circuit::write(std::ostream& out) const {
    std::vector<std::uint32_t> qubit_of_record(num_measurements_, 0);
    for (const auto& op : ops_) {
        if (is_measurement(op.kind)) {
            qubit_of_record[op.record] = op.a;
        }
    }
    out << "QUBITS " << num_qubits_ << '\n';
    for (const auto& op : ops_) {
        out << op_name(op.kind);
        switch (op.kind) {
            case OpKind::Tick:
                break;
            case OpKind::Cycle:
                out << '(' << op.a << ')';
                for (auto q : op.qubits) {
                    out << ' ' << q;
                }
                break;
            case OpKind::CX:
            case OpKind::CY:
                out << ' ' << op.a << ' ' << op.b;
                break;
            case OpKind::E1:
                out << ' ' << format_double(op.p[0]) << ' ' << format_double(op.p[1]) << ' '
                    << format_double(op.p[2]) << ' ' << op.a;
                break;
            case OpKind::E2:
                out << ' ' << format_double(op.p[0]) << ' ' << op.a << ' ' << op.b;
                break;
            case OpKind::EPrep:
                out << ' ' << format_double(op.p[0]) << ' ' << op.a;
                break;
            case OpKind::EMeas:
                out << ' ' << format_double(op.p[0]) << ' ' << qubit_of_record[op.record];
                break;
            default:
                out << ' ' << op.a;
                break;
        }
        out << '\n';
    }
    if (!flag_records_.empty()) {
        out << "FLAG";
        write_records(out, flag_records_);
        out << '\n';
    }
    for (const auto& d : detectors_) {
        out << "DETECTOR";
        if (d.tag.group >= 0) {
            out << '(' << d.tag.group << ',' << d.tag.stabilizer << ',' << d.tag.round << ')';
        }
        write_records(out, d.records);
        out << '\n';
    }
    for (std::size_t k = 0; k < observables_.size(); ++k) {
        out << "OBSERVABLE";
        if (observables_[k].group >= 0) {
            out << '(' << observables_[k].group << ')';
        }
        out << ' ' << k;
        write_records(out, observables_[k].records);
        out << '\n';
    }
}

std::string Circuit::str() const {
    std::ostringstream out;
    write(out);
    return out.str();
}

namespace {

struct LineError : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

std::uint32_t parse_uint(std::string_view tok) {
    std::uint32_t v = 0;
    auto res = std::from_chars(tok.data(), tok.data() + tok.size(), v);
    if (res.ec != std::errc() || res.ptr != tok.data() + tok.size()) {
        throw LineError("expected a non-negative integer, got '" + std::string(tok) + "'");
    }
    return v;
}

int parse_int(std::string_view tok) {
    int v = 0;
    auto res = std::from_chars(tok.data(), tok.data() + tok.size(), v);
    if (res.ec != std::errc() || res.ptr != tok.data() + tok.size()) {
        throw LineError("expected an integer, got '" + std::string(tok) + "'");
    }
    return v;
}

double parse_double(std::string_view tok) {
    double v = 0;
    auto res = std::from_chars(tok.data(), tok.data() + tok.size(), v);
    if (res.ec != std::errc() || res.ptr != tok.data() + tok.size()) {
        throw LineError("expected a number, got '" + std::string(tok) + "'");
    }
    return v;
}

std::uint32_t parse_record(std::string_view tok) {
    if (!tok.empty() && tok[0] == 'm') {
        tok.remove_prefix(1);
    }
    return parse_uint(tok);
}

std::vector<std::string_view> split_tokens(std::string_view line) {
    std::vector<std::string_view> out;
    std::size_t k = 0;
    while (k < line.size()) {
        while (k < line.size() && (line[k] == ' ' || line[k] == '\t' || line[k] == '\r')) {
            ++k;
        }
        std::size_t start = k;
        while (k < line.size() && line[k] != ' ' && line[k] != '\t' && line[k] != '\r') {
            ++k;
        }
        if (k > start) {
            out.push_back(line.substr(start, k - start));
        }
    }
    return out;
}

// Splits "NAME(a,b,c)" into NAME and its integer arguments.
std::pair<std::string_view, std::vector<int>> split_head(std::string_view head) {
    auto open = head.find('(');
    if (open == std::string_view::npos) {
        return {head, {}};
    }
    if (head.back() != ')') {
        throw LineError("unterminated argument list in '" + std::string(head) + "'");
    }
    std::vector<int> args;
    std::string_view inner = head.substr(open + 1, head.size() - open - 2);
    while (!inner.empty()) {
        auto comma = inner.find(',');
        args.push_back(parse_int(inner.substr(0, comma)));
        if (comma == std::string_view::npos) {
            break;
        }
        inner.remove_prefix(comma + 1);
    }
    return {head.substr(0, open), args};
}

void expect_count(const std::vector<std::string_view>& toks, std::size_t n) {
    if (toks.size() != n) {
        throw LineError("'" + std::string(toks[0]) + "' expects " + std::to_string(n - 1) + " operands");
    }
}

}  // namespace

Circuit Circuit::parse(std::string_view text) {
    Circuit c;
    bool have_qubits = false;
    std::vector<std::int64_t> last_record;
    std::size_t line_no = 0;
    while (!text.empty()) {
        ++line_no;
        auto nl = text.find('\n');
        std::string_view line = text.substr(0, nl);
        text.remove_prefix(nl == std::string_view::npos ? text.size() : nl + 1);
        if (auto hash = line.find('#'); hash != std::string_view::npos) {
            line = line.substr(0, hash);
        }
        auto toks = split_tokens(line);
        if (toks.empty()) {
            continue;
        }
        try {
            auto [name, args] = split_head(toks[0]);
            if (name == "QUBITS") {
                expect_count(toks, 2);
                if (have_qubits) {
                    throw LineError("QUBITS given twice");
                }
                c.num_qubits_ = parse_uint(toks[1]);
                last_record.assign(c.num_qubits_, -1);
                have_qubits = true;
                continue;
            }
            if (!have_qubits) {
                throw LineError("QUBITS must come first");
            }
            auto single = [&](OpKind kind) {
                if (toks.size() < 2) {
                    throw LineError("'" + std::string(name) + "' needs at least one qubit");
                }
                for (std::size_t k = 1; k < toks.size(); ++k) {
                    Instruction op;
                    op.kind = kind;
                    op.a = parse_uint(toks[k]);
                    c.append(op);
                    if (is_measurement(kind)) {
                        last_record[op.a] = c.num_measurements_ - 1;
                    }
                }
            };
            if (name == "PZ") {
                single(OpKind::PrepZ);
            } else if (name == "PX") {
                single(OpKind::PrepX);
            } else if (name == "PY") {
                single(OpKind::PrepY);
            } else if (name == "H") {
                single(OpKind::H);
            } else if (name == "MZ") {
                single(OpKind::MeasZ);
            } else if (name == "MX") {
                single(OpKind::MeasX);
            } else if (name == "MY") {
                single(OpKind::MeasY);
            } else if (name == "CX" || name == "CY") {
                if (toks.size() < 3 || toks.size() % 2 == 0) {
                    throw LineError("'" + std::string(name) + "' expects qubit pairs");
                }
                for (std::size_t k = 1; k + 1 < toks.size(); k += 2) {
                    c.gate2(name == "CX" ? OpKind::CX : OpKind::CY, parse_uint(toks[k]), parse_uint(toks[k + 1]));
                }
            } else if (name == "TICK") {
                expect_count(toks, 1);
                c.tick();
            } else if (name == "CYCLE") {
                if (args.size() > 1 || (!args.empty() && args[0] < 0)) {
                    throw LineError("CYCLE takes one non-negative round argument");
                }
                std::vector<std::uint32_t> qs;
                for (std::size_t k = 1; k < toks.size(); ++k) {
                    qs.push_back(parse_uint(toks[k]));
                }
                c.cycle(args.empty() ? 0u : static_cast<std::uint32_t>(args[0]), std::move(qs));
            } else if (name == "E1") {
                expect_count(toks, 5);
                c.error1(parse_double(toks[1]), parse_double(toks[2]), parse_double(toks[3]), parse_uint(toks[4]));
            } else if (name == "E2") {
                expect_count(toks, 4);
                c.error2(parse_double(toks[1]), parse_uint(toks[2]), parse_uint(toks[3]));
            } else if (name == "EPREP") {
                expect_count(toks, 3);
                c.error_prep(parse_double(toks[1]), parse_uint(toks[2]));
            } else if (name == "EMEAS") {
                expect_count(toks, 3);
                auto q = parse_uint(toks[2]);
                c.check_qubit(q);
                if (last_record[q] < 0) {
                    throw LineError("EMEAS on qubit " + std::to_string(q) + " before any measurement of it");
                }
                c.error_meas(parse_double(toks[1]), static_cast<std::uint32_t>(last_record[q]));
            } else if (name == "DETECTOR") {
                DetectorDef d;
                if (!args.empty()) {
                    if (args.size() != 3) {
                        throw LineError("DETECTOR tag needs (group,stabilizer,round)");
                    }
                    d.tag = {args[0], args[1], args[2]};
                }
                for (std::size_t k = 1; k < toks.size(); ++k) {
                    d.records.push_back(parse_record(toks[k]));
                }
                c.add_detector(std::move(d));
            } else if (name == "OBSERVABLE") {
                if (toks.size() < 2) {
                    throw LineError("OBSERVABLE needs an index");
                }
                auto index = parse_uint(toks[1]);
                if (index != c.observables_.size()) {
                    throw LineError("observables must be numbered consecutively from 0");
                }
                ObservableDef o;
                if (args.size() > 1) {
                    throw LineError("OBSERVABLE tag takes one group argument");
                }
                if (!args.empty()) {
                    o.group = args[0];
                }
                for (std::size_t k = 2; k < toks.size(); ++k) {
                    o.records.push_back(parse_record(toks[k]));
                }
                c.add_observable(std::move(o));
            } else if (name == "FLAG") {
                for (std::size_t k = 1; k < toks.size(); ++k) {
                    auto r = parse_record(toks[k]);
                    c.check_record(r);
                    c.flag_records_.push_back(r);
                }
            } else {
                throw LineError("unknown instruction '" + std::string(name) + "'");
            }
        } catch (const std::invalid_argument& e) {
            throw std::invalid_argument("line " + std::to_string(line_no) + ": " + e.what());
        }
    }
    if (!have_qubits) {
        throw std::invalid_argument("missing QUBITS line");
    }
    return c;
}

namespace {

PropagationResult effects_from_flips(const Circuit& circuit, const std::vector<std::uint8_t>& flipped) {
    PropagationResult out;
    for (std::uint32_t r = 0; r < flipped.size(); ++r) {
        if (flipped[r]) {
            out.records.push_back(r);
        }
    }
    for (std::uint32_t k = 0; k < circuit.detectors().size(); ++k) {
        bool parity = false;
        for (auto r : circuit.detectors()[k].records) {
            parity ^= flipped[r] != 0;
        }
        if (parity) {
            out.detectors.push_back(k);
        }
    }
    for (std::uint32_t k = 0; k < circuit.observables().size(); ++k) {
        bool parity = false;
        for (auto r : circuit.observables()[k].records) {
            parity ^= flipped[r] != 0;
        }
        if (parity) {
            out.observables.push_back(k);
        }
    }
    return out;
}

}  // namespace

PropagationResult propagate_pauli(const Circuit& circuit, std::size_t location, const PauliString& pauli) {
    if (location > circuit.ops().size()) {
        throw std::invalid_argument("fault location beyond the end of the circuit");
    }
    std::vector<std::uint8_t> x(circuit.num_qubits(), 0);
    std::vector<std::uint8_t> z(circuit.num_qubits(), 0);
    for (const auto& [q, p] : pauli.terms()) {
        if (q >= circuit.num_qubits()) {
            throw std::invalid_argument("fault qubit out of range");
        }
        x[q] = has_x(p);
        z[q] = has_z(p);
    }
    std::vector<std::uint8_t> flipped(circuit.num_measurements(), 0);
    const auto& ops = circuit.ops();
    for (std::size_t k = location; k < ops.size(); ++k) {
        const auto& op = ops[k];
        auto a = op.a;
        auto b = op.b;
        switch (op.kind) {
            case OpKind::PrepZ:
            case OpKind::PrepX:
            case OpKind::PrepY:
                x[a] = z[a] = 0;
                break;
            case OpKind::H:
                std::swap(x[a], z[a]);
                break;
            case OpKind::CX:
                x[b] ^= x[a];
                z[a] ^= z[b];
                break;
            case OpKind::CY:
                z[a] ^= x[b] ^ z[b];
                x[b] ^= x[a];
                z[b] ^= x[a];
                break;
            case OpKind::MeasZ:
                flipped[op.record] = x[a];
                break;
            case OpKind::MeasX:
                flipped[op.record] = z[a];
                break;
            case OpKind::MeasY:
                flipped[op.record] = x[a] ^ z[a];
                break;
            default:
                break;
        }
    }
    return effects_from_flips(circuit, flipped);
}

PropagationResult records_to_effects(const Circuit& circuit, std::vector<std::uint32_t> records) {
    std::vector<std::uint8_t> flipped(circuit.num_measurements(), 0);
    for (auto r : records) {
        if (r >= flipped.size()) {
            throw std::invalid_argument("record out of range");
        }
        flipped[r] ^= 1;
    }
    return effects_from_flips(circuit, flipped);
}

}  // namespace hexqec
