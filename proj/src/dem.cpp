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

#include "hexqec/dem.hpp"

#include <algorithm>
#include <bit>
#include <charconv>
#include <functional>
#include <map>
#include <sstream>
#include <stdexcept>
#include <unordered_map>

namespace hexqec {

double merge_probability(double q1, double q2) { return q1 * (1 - q2) + q2 * (1 - q1); }

namespace {

// Sensitivity bitsets over detectors followed by observables.
class Sensitivity {
  public:
    Sensitivity(std::size_t qubits, std::size_t bits)
        : words_((bits + 63) / 64), xs_(qubits * words_, 0), zs_(qubits * words_, 0) {}

    std::size_t words() const { return words_; }
    std::uint64_t* x(std::uint32_t q) { return xs_.data() + static_cast<std::size_t>(q) * words_; }
    std::uint64_t* z(std::uint32_t q) { return zs_.data() + static_cast<std::size_t>(q) * words_; }

  private:
    std::size_t words_;
    std::vector<std::uint64_t> xs_;
    std::vector<std::uint64_t> zs_;
};

void xor_into(std::uint64_t* dst, const std::uint64_t* src, std::size_t n) {
    for (std::size_t w = 0; w < n; ++w) {
        dst[w] ^= src[w];
    }
}

void xor_ids(std::uint64_t* dst, const std::vector<std::uint32_t>& ids) {
    for (auto id : ids) {
        dst[id / 64] ^= std::uint64_t{1} << (id % 64);
    }
}

std::string describe_bit(const Circuit& c, std::uint32_t bit) {
    auto nd = static_cast<std::uint32_t>(c.detectors().size());
    if (bit < nd) {
        return "detector " + std::to_string(bit);
    }
    return "observable " + std::to_string(bit - nd);
}

std::uint32_t first_bit(const std::uint64_t* v, std::size_t n) {
    for (std::size_t w = 0; w < n; ++w) {
        if (v[w] != 0) {
            return static_cast<std::uint32_t>(w * 64 + static_cast<std::size_t>(std::countr_zero(v[w])));
        }
    }
    return 0;
}

bool any_bit(const std::uint64_t* v, std::size_t n) {
    for (std::size_t w = 0; w < n; ++w) {
        if (v[w] != 0) {
            return true;
        }
    }
    return false;
}

using FaultSink = std::function<void(std::size_t instruction, double p, const std::uint64_t* signature)>;

// Walks the circuit backwards, reporting every noise outcome's signature.
void backward_pass(const Circuit& c, const FaultSink& sink) {
    const std::size_t nd = c.detectors().size();
    const std::size_t bits = nd + c.observables().size();
    Sensitivity sens(c.num_qubits(), bits);
    const std::size_t W = sens.words();

    std::vector<std::vector<std::uint32_t>> record_bits(c.num_measurements());
    for (std::uint32_t d = 0; d < nd; ++d) {
        for (auto r : c.detectors()[d].records) {
            record_bits[r].push_back(d);
        }
    }
    for (std::uint32_t o = 0; o < c.observables().size(); ++o) {
        for (auto r : c.observables()[o].records) {
            record_bits[r].push_back(static_cast<std::uint32_t>(nd) + o);
        }
    }
    // Duplicated records cancel.
    for (auto& v : record_bits) {
        std::sort(v.begin(), v.end());
        std::vector<std::uint32_t> odd;
        for (std::size_t k = 0; k < v.size();) {
            std::size_t j = k;
            while (j < v.size() && v[j] == v[k]) {
                ++j;
            }
            if ((j - k) % 2 == 1) {
                odd.push_back(v[k]);
            }
            k = j;
        }
        v = std::move(odd);
    }

    // Forward scan: which Pauli undoes each preparation.
    std::vector<std::uint8_t> prep_flip(c.ops().size(), 1);
    {
        std::vector<OpKind> last(c.num_qubits(), OpKind::PrepZ);
        for (std::size_t k = 0; k < c.ops().size(); ++k) {
            const auto& op = c.ops()[k];
            if (is_prep(op.kind)) {
                last[op.a] = op.kind;
            } else if (op.kind == OpKind::EPrep) {
                prep_flip[k] = last[op.a] == OpKind::PrepX ? 2 : 1;
            }
        }
    }

    std::vector<std::uint64_t> tmp(W);
    auto check_prep = [&](std::uint32_t q, OpKind kind) {
        const auto* x = sens.x(q);
        const auto* z = sens.z(q);
        // Bits that an error of the undetermined kind would flip.
        for (std::size_t w = 0; w < W; ++w) {
            switch (kind) {
                case OpKind::PrepZ:
                    tmp[w] = z[w];
                    break;
                case OpKind::PrepX:
                    tmp[w] = x[w];
                    break;
                default:
                    tmp[w] = x[w] ^ z[w];
                    break;
            }
        }
        if (any_bit(tmp.data(), W)) {
            throw std::invalid_argument(describe_bit(c, first_bit(tmp.data(), W)) +
                                        " is not deterministic without noise (qubit " + std::to_string(q) + ")");
        }
    };

    const auto& ops = c.ops();
    std::vector<std::uint64_t> sig(W);
    for (std::size_t k = ops.size(); k-- > 0;) {
        const auto& op = ops[k];
        const auto a = op.a;
        const auto b = op.b;
        switch (op.kind) {
            case OpKind::PrepZ:
            case OpKind::PrepX:
            case OpKind::PrepY:
                check_prep(a, op.kind);
                std::fill(sens.x(a), sens.x(a) + W, 0);
                std::fill(sens.z(a), sens.z(a) + W, 0);
                break;
            case OpKind::H:
                std::swap_ranges(sens.x(a), sens.x(a) + W, sens.z(a));
                break;
            case OpKind::CX:
                xor_into(sens.x(a), sens.x(b), W);
                xor_into(sens.z(b), sens.z(a), W);
                break;
            case OpKind::CY:
                for (std::size_t w = 0; w < W; ++w) {
                    const auto xc = sens.x(a)[w];
                    const auto zc = sens.z(a)[w];
                    const auto xt = sens.x(b)[w];
                    const auto zt = sens.z(b)[w];
                    sens.x(a)[w] = xc ^ xt ^ zt;
                    sens.x(b)[w] = zc ^ xt;
                    sens.z(b)[w] = zc ^ zt;
                }
                break;
            case OpKind::MeasZ:
                xor_ids(sens.x(a), record_bits[op.record]);
                break;
            case OpKind::MeasX:
                xor_ids(sens.z(a), record_bits[op.record]);
                break;
            case OpKind::MeasY:
                xor_ids(sens.x(a), record_bits[op.record]);
                xor_ids(sens.z(a), record_bits[op.record]);
                break;
            case OpKind::E1: {
                const double ps[3] = {op.p[0], op.p[1], op.p[2]};
                for (int j = 0; j < 3; ++j) {
                    if (ps[j] <= 0) {
                        continue;
                    }
                    for (std::size_t w = 0; w < W; ++w) {
                        std::uint64_t v = 0;
                        if (j != 2) {
                            v ^= sens.x(a)[w];
                        }
                        if (j != 0) {
                            v ^= sens.z(a)[w];
                        }
                        sig[w] = v;
                    }
                    sink(k, ps[j], sig.data());
                }
                break;
            }
            case OpKind::E2: {
                if (op.p[0] <= 0) {
                    break;
                }
                for (unsigned m = 1; m < 16; ++m) {
                    for (std::size_t w = 0; w < W; ++w) {
                        std::uint64_t v = 0;
                        if (m & 1u) {
                            v ^= sens.x(a)[w];
                        }
                        if (m & 2u) {
                            v ^= sens.z(a)[w];
                        }
                        if (m & 4u) {
                            v ^= sens.x(b)[w];
                        }
                        if (m & 8u) {
                            v ^= sens.z(b)[w];
                        }
                        sig[w] = v;
                    }
                    sink(k, op.p[0] / 15, sig.data());
                }
                break;
            }
            case OpKind::EPrep:
                if (op.p[0] > 0) {
                    const auto* src = prep_flip[k] == 2 ? sens.z(a) : sens.x(a);
                    std::copy(src, src + W, sig.begin());
                    sink(k, op.p[0], sig.data());
                }
                break;
            case OpKind::EMeas:
                if (op.p[0] > 0) {
                    std::fill(sig.begin(), sig.end(), 0);
                    xor_ids(sig.data(), record_bits[op.record]);
                    sink(k, op.p[0], sig.data());
                }
                break;
            default:
                break;
        }
    }
    // Every qubit starts in |0>.
    for (std::uint32_t q = 0; q < c.num_qubits(); ++q) {
        check_prep(q, OpKind::PrepZ);
    }
}

void unpack(const std::uint64_t* sig, std::size_t words, std::size_t nd, std::vector<std::uint32_t>& dets,
            std::uint64_t& obs) {
    dets.clear();
    obs = 0;
    for (std::size_t w = 0; w < words; ++w) {
        std::uint64_t v = sig[w];
        while (v != 0) {
            auto bit = w * 64 + static_cast<std::size_t>(std::countr_zero(v));
            v &= v - 1;
            if (bit < nd) {
                dets.push_back(static_cast<std::uint32_t>(bit));
            } else {
                auto o = bit - nd;
                if (o >= 64) {
                    throw std::invalid_argument("at most 64 observables are supported");
                }
                obs |= std::uint64_t{1} << o;
            }
        }
    }
}

struct SignatureHash {
    std::size_t operator()(const std::pair<std::vector<std::uint32_t>, std::uint64_t>& k) const {
        std::size_t h = std::hash<std::uint64_t>()(k.second);
        for (auto d : k.first) {
            h ^= std::hash<std::uint32_t>()(d) + 0x9e3779b97f4a7c15ull + (h << 6) + (h >> 2);
        }
        return h;
    }
};

using SignatureMap = std::unordered_map<std::pair<std::vector<std::uint32_t>, std::uint64_t>, double, SignatureHash>;

std::vector<ErrorMechanism> sorted_mechanisms(const SignatureMap& merged) {
    std::vector<ErrorMechanism> out;
    out.reserve(merged.size());
    for (const auto& [key, p] : merged) {
        out.push_back({p, key.first, key.second});
    }
    std::sort(out.begin(), out.end(), [](const auto& a, const auto& b) {
        if (a.detectors != b.detectors) {
            return a.detectors < b.detectors;
        }
        return a.observables < b.observables;
    });
    return out;
}

}  // namespace

std::vector<ElementaryFault> enumerate_faults(const Circuit& noisy) {
    std::vector<ElementaryFault> out;
    const std::size_t nd = noisy.detectors().size();
    const std::size_t words = (nd + noisy.observables().size() + 63) / 64;
    backward_pass(noisy, [&](std::size_t k, double p, const std::uint64_t* sig) {
        ElementaryFault f;
        f.instruction = k;
        f.probability = p;
        unpack(sig, words, nd, f.detectors, f.observables);
        out.push_back(std::move(f));
    });
    std::reverse(out.begin(), out.end());
    return out;
}

DetectorErrorModel extract_dem(const Circuit& noisy) {
    DetectorErrorModel dem;
    dem.num_detectors = static_cast<std::uint32_t>(noisy.detectors().size());
    dem.num_observables = static_cast<std::uint32_t>(noisy.observables().size());
    for (const auto& d : noisy.detectors()) {
        dem.detector_tags.push_back(d.tag);
    }
    for (const auto& o : noisy.observables()) {
        dem.observable_groups.push_back(o.group);
    }
    const std::size_t nd = dem.num_detectors;
    const std::size_t words = (nd + dem.num_observables + 63) / 64;
    SignatureMap merged;
    std::pair<std::vector<std::uint32_t>, std::uint64_t> key;
    backward_pass(noisy, [&](std::size_t, double p, const std::uint64_t* sig) {
        unpack(sig, words, nd, key.first, key.second);
        if (key.first.empty() && key.second == 0) {
            return;
        }
        auto [it, inserted] = merged.try_emplace(key, p);
        if (!inserted) {
            it->second = merge_probability(it->second, p);
        }
    });
    dem.mechanisms = sorted_mechanisms(merged);
    for (const auto& m : dem.mechanisms) {
        if (m.detectors.empty()) {
            ++dem.undetectable_logical;
        }
    }
    return dem;
}

namespace {

std::string format_double(double v) {
    char buf[64];
    auto res = std::to_chars(buf, buf + sizeof(buf), v);
    return std::string(buf, res.ptr);
}

}  // namespace

std::string DetectorErrorModel::str() const {
    std::ostringstream out;
    for (std::uint32_t d = 0; d < detector_tags.size(); ++d) {
        const auto& t = detector_tags[d];
        if (t.group >= 0) {
            out << "detector(" << t.group << ',' << t.stabilizer << ',' << t.round << ") D" << d << '\n';
        }
    }
    for (std::uint32_t o = 0; o < observable_groups.size(); ++o) {
        if (observable_groups[o] >= 0) {
            out << "logical_observable(" << observable_groups[o] << ") L" << o << '\n';
        }
    }
    for (const auto& m : mechanisms) {
        out << "error " << format_double(m.probability);
        for (auto d : m.detectors) {
            out << " D" << d;
        }
        for (std::uint32_t o = 0; o < 64; ++o) {
            if ((m.observables >> o) & 1u) {
                out << " L" << o;
            }
        }
        out << '\n';
    }
    return out.str();
}

DetectorErrorModel DetectorErrorModel::parse(std::string_view text) {
    DetectorErrorModel dem;
    std::size_t line_no = 0;
    auto fail = [&](const std::string& msg) {
        throw std::invalid_argument("line " + std::to_string(line_no) + ": " + msg);
    };
    auto parse_uint = [&](std::string_view t) {
        std::uint32_t v = 0;
        auto res = std::from_chars(t.data(), t.data() + t.size(), v);
        if (res.ec != std::errc() || res.ptr != t.data() + t.size()) {
            fail("bad integer '" + std::string(t) + "'");
        }
        return v;
    };
    auto parse_args = [&](std::string_view head, std::string_view name) {
        std::vector<std::string_view> args;
        if (head.size() < name.size() + 2 || head[name.size()] != '(' || head.back() != ')') {
            fail("expected " + std::string(name) + "(...)");
        }
        auto inner = head.substr(name.size() + 1, head.size() - name.size() - 2);
        while (true) {
            auto comma = inner.find(',');
            args.push_back(inner.substr(0, comma));
            if (comma == std::string_view::npos) {
                break;
            }
            inner.remove_prefix(comma + 1);
        }
        return args;
    };
    auto parse_int = [&](std::string_view t) {
        int v = 0;
        auto res = std::from_chars(t.data(), t.data() + t.size(), v);
        if (res.ec != std::errc() || res.ptr != t.data() + t.size()) {
            fail("bad integer '" + std::string(t) + "'");
        }
        return v;
    };
    auto grow = [&](std::uint32_t d) {
        if (d + 1 > dem.num_detectors) {
            dem.num_detectors = d + 1;
            dem.detector_tags.resize(dem.num_detectors);
        }
    };
    auto grow_obs = [&](std::uint32_t o) {
        if (o >= 64) {
            fail("at most 64 observables are supported");
        }
        if (o + 1 > dem.num_observables) {
            dem.num_observables = o + 1;
            dem.observable_groups.resize(dem.num_observables, -1);
        }
    };
    while (!text.empty()) {
        ++line_no;
        auto nl = text.find('\n');
        std::string_view line = text.substr(0, nl);
        text.remove_prefix(nl == std::string_view::npos ? text.size() : nl + 1);
        if (auto hash = line.find('#'); hash != std::string_view::npos) {
            line = line.substr(0, hash);
        }
        std::vector<std::string_view> toks;
        std::size_t k = 0;
        while (k < line.size()) {
            while (k < line.size() && (line[k] == ' ' || line[k] == '\t' || line[k] == '\r')) {
                ++k;
            }
            auto start = k;
            while (k < line.size() && line[k] != ' ' && line[k] != '\t' && line[k] != '\r') {
                ++k;
            }
            if (k > start) {
                toks.push_back(line.substr(start, k - start));
            }
        }
        if (toks.empty()) {
            continue;
        }
        auto head = toks[0];
        if (head.rfind("error", 0) == 0) {
            ErrorMechanism m;
            std::string_view prob_text;
            std::size_t first = 1;
            if (head == "error") {
                if (toks.size() < 2) {
                    fail("error needs a probability");
                }
                prob_text = toks[1];
                first = 2;
            } else {
                prob_text = parse_args(head, "error").at(0);
            }
            auto res = std::from_chars(prob_text.data(), prob_text.data() + prob_text.size(), m.probability);
            if (res.ec != std::errc() || res.ptr != prob_text.data() + prob_text.size() || m.probability < 0 ||
                m.probability > 1) {
                fail("bad probability '" + std::string(prob_text) + "'");
            }
            for (std::size_t j = first; j < toks.size(); ++j) {
                auto t = toks[j];
                if (t.size() > 1 && t[0] == 'D') {
                    auto d = parse_uint(t.substr(1));
                    grow(d);
                    m.detectors.push_back(d);
                } else if (t.size() > 1 && t[0] == 'L') {
                    auto o = parse_uint(t.substr(1));
                    grow_obs(o);
                    m.observables ^= std::uint64_t{1} << o;
                } else {
                    fail("unexpected target '" + std::string(t) + "'");
                }
            }
            std::sort(m.detectors.begin(), m.detectors.end());
            if (m.detectors.empty() && m.observables != 0) {
                ++dem.undetectable_logical;
            }
            dem.mechanisms.push_back(std::move(m));
        } else if (head.rfind("detector", 0) == 0) {
            auto args = parse_args(head, "detector");
            if (args.size() != 3 || toks.size() != 2 || toks[1][0] != 'D') {
                fail("expected detector(group,stabilizer,round) D<k>");
            }
            auto d = parse_uint(toks[1].substr(1));
            grow(d);
            dem.detector_tags[d] = {parse_int(args[0]), parse_int(args[1]), parse_int(args[2])};
        } else if (head.rfind("logical_observable", 0) == 0) {
            auto args = parse_args(head, "logical_observable");
            if (args.size() != 1 || toks.size() != 2 || toks[1][0] != 'L') {
                fail("expected logical_observable(group) L<k>");
            }
            auto o = parse_uint(toks[1].substr(1));
            grow_obs(o);
            dem.observable_groups[o] = parse_int(args[0]);
        } else {
            fail("unknown line '" + std::string(head) + "'");
        }
    }
    return dem;
}

namespace {

using EdgeKey = std::pair<std::uint32_t, std::uint32_t>;  // second == UINT32_MAX for boundary
constexpr std::uint32_t kNone = UINT32_MAX;

// Splits `dets` into known one/two-detector signatures whose masks XOR to `mask`.
bool decompose(const std::vector<std::uint32_t>& dets, std::vector<bool>& used, std::uint64_t mask,
               const std::map<EdgeKey, std::vector<std::uint64_t>>& edges,
               std::vector<std::pair<EdgeKey, std::uint64_t>>& parts, int budget_depth) {
    std::size_t first = 0;
    while (first < dets.size() && used[first]) {
        ++first;
    }
    if (first == dets.size()) {
        return mask == 0;
    }
    if (budget_depth <= 0) {
        return false;
    }
    used[first] = true;
    // Pair with another detector.
    for (std::size_t j = first + 1; j < dets.size(); ++j) {
        if (used[j]) {
            continue;
        }
        auto it = edges.find({dets[first], dets[j]});
        if (it == edges.end()) {
            continue;
        }
        used[j] = true;
        for (auto m : it->second) {
            parts.push_back({it->first, m});
            if (decompose(dets, used, mask ^ m, edges, parts, budget_depth - 1)) {
                return true;
            }
            parts.pop_back();
        }
        used[j] = false;
    }
    // Or send it to the boundary.
    auto it = edges.find({dets[first], kNone});
    if (it != edges.end()) {
        for (auto m : it->second) {
            parts.push_back({it->first, m});
            if (decompose(dets, used, mask ^ m, edges, parts, budget_depth - 1)) {
                return true;
            }
            parts.pop_back();
        }
    }
    used[first] = false;
    return false;
}

}  // namespace

SplitDem split_dem(const DetectorErrorModel& dem) {
    SplitDem out;
    std::vector<std::int64_t> local(dem.num_detectors, -1);
    std::vector<int> group_of(dem.num_detectors, -1);
    for (std::uint32_t d = 0; d < dem.num_detectors; ++d) {
        int g = d < dem.detector_tags.size() ? dem.detector_tags[d].group : -1;
        if (g != 0 && g != 1) {
            throw std::invalid_argument("detector " + std::to_string(d) + " has no stabilizer-group tag");
        }
        group_of[d] = g;
        local[d] = static_cast<std::int64_t>(out.local_to_global[static_cast<std::size_t>(g)].size());
        out.local_to_global[static_cast<std::size_t>(g)].push_back(d);
    }
    std::array<std::uint64_t, 2> obs_mask{0, 0};
    for (std::uint32_t o = 0; o < dem.num_observables; ++o) {
        int g = o < dem.observable_groups.size() ? dem.observable_groups[o] : -1;
        if (g == 0 || g == 1) {
            obs_mask[static_cast<std::size_t>(g)] |= std::uint64_t{1} << o;
        }
    }

    for (std::size_t g = 0; g < 2; ++g) {
        auto& part = out.groups[g];
        part.num_detectors = static_cast<std::uint32_t>(out.local_to_global[g].size());
        part.num_observables = dem.num_observables;
        for (auto d : out.local_to_global[g]) {
            part.detector_tags.push_back(dem.detector_tags[d]);
        }
        part.observable_groups = dem.observable_groups;

        // Project.
        std::vector<ErrorMechanism> projected;
        for (const auto& m : dem.mechanisms) {
            ErrorMechanism p;
            p.probability = m.probability;
            for (auto d : m.detectors) {
                if (group_of[d] == static_cast<int>(g)) {
                    p.detectors.push_back(static_cast<std::uint32_t>(local[d]));
                }
            }
            p.observables = m.observables & obs_mask[g];
            if (p.detectors.empty() && p.observables == 0) {
                continue;
            }
            projected.push_back(std::move(p));
        }
        std::map<EdgeKey, std::vector<std::uint64_t>> edges;
        for (const auto& p : projected) {
            if (p.detectors.size() == 1 || p.detectors.size() == 2) {
                EdgeKey key{p.detectors[0], p.detectors.size() == 2 ? p.detectors[1] : kNone};
                auto& masks = edges[key];
                if (std::find(masks.begin(), masks.end(), p.observables) == masks.end()) {
                    masks.push_back(p.observables);
                }
            }
        }
        SignatureMap merged;
        auto add = [&](std::vector<std::uint32_t> dets, std::uint64_t mask, double q) {
            auto [it, inserted] = merged.try_emplace({std::move(dets), mask}, q);
            if (!inserted) {
                it->second = merge_probability(it->second, q);
            }
        };
        for (auto& p : projected) {
            if (p.detectors.empty()) {
                ++part.undetectable_logical;
                continue;
            }
            if (p.detectors.size() <= 2) {
                add(p.detectors, p.observables, p.probability);
                continue;
            }
            std::vector<bool> used(p.detectors.size(), false);
            std::vector<std::pair<EdgeKey, std::uint64_t>> parts;
            if (decompose(p.detectors, used, p.observables, edges, parts, static_cast<int>(p.detectors.size()))) {
                ++out.decomposed[g];
                for (const auto& [key, mask] : parts) {
                    std::vector<std::uint32_t> dets{key.first};
                    if (key.second != kNone) {
                        dets.push_back(key.second);
                    }
                    add(std::move(dets), mask, p.probability);
                }
            } else {
                ++out.dropped[g];
            }
        }
        part.mechanisms = sorted_mechanisms(merged);
    }
    return out;
}

}  // namespace hexqec
