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

#include "hexqec/frame_sampler.hpp"

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <stdexcept>
#include <thread>

#include "hexqec/tableau.hpp"

namespace hexqec {

namespace {

constexpr std::size_t kWords = kShotsPerBlock / 64;

double uniform_open(std::mt19937_64& rng) {
    // Uniform on (0, 1].
    return static_cast<double>((rng() >> 11) + 1) * 0x1.0p-53;
}

}  // namespace

void SampleBatch::append(const SampleBatch& other) {
    if (shots == 0 && detectors.cols() == 0 && observables.cols() == 0) {
        *this = other;
        return;
    }
    detectors.append_rows(other.detectors);
    observables.append_rows(other.observables);
    if (flags.cols() != 0 || other.flags.cols() != 0) {
        flags.append_rows(other.flags);
    }
    shots += other.shots;
}

std::mt19937_64 make_stream(std::uint64_t seed, std::uint64_t stream) {
    std::seed_seq seq{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32),
                      static_cast<std::uint32_t>(stream), static_cast<std::uint32_t>(stream >> 32), 0x68657871u};
    return std::mt19937_64(seq);
}

unsigned default_workers() {
    if (const char* env = std::getenv("HEXQEC_WORKERS")) {
        char* end = nullptr;
        long v = std::strtol(env, &end, 10);
        if (end != env && *end == '\0' && v >= 1) {
            return static_cast<unsigned>(v);
        }
        throw std::invalid_argument("HEXQEC_WORKERS must be a positive integer");
    }
    unsigned hw = std::thread::hardware_concurrency();
    return hw == 0 ? 1 : hw;
}

FrameSampler::FrameSampler(const Circuit& circuit) : circuit_(circuit) {
    auto ref = reference_run(circuit_);
    reference_detectors_ = ref.detectors;
    reference_observables_ = ref.observables;
    for (auto r : circuit_.flag_records()) {
        reference_flags_.push_back(ref.records[r]);
    }
    std::vector<OpKind> last_prep(circuit_.num_qubits(), OpKind::PrepZ);
    for (const auto& in : circuit_.ops()) {
        Op op{in.kind, in.a, in.b, 0, 0, 0, 0, 0};
        switch (in.kind) {
            case OpKind::Tick:
            case OpKind::Cycle:
                continue;
            case OpKind::PrepZ:
            case OpKind::PrepX:
            case OpKind::PrepY:
                last_prep[in.a] = in.kind;
                break;
            case OpKind::MeasZ:
            case OpKind::MeasX:
            case OpKind::MeasY:
                op.b = in.record;
                break;
            case OpKind::E1:
                op.p = in.p[0] + in.p[1] + in.p[2];
                if (op.p > 0) {
                    op.cut_x = in.p[0] / op.p;
                    op.cut_xy = (in.p[0] + in.p[1]) / op.p;
                }
                break;
            case OpKind::E2:
                op.p = in.p[0];
                break;
            case OpKind::EPrep:
                op.p = in.p[0];
                op.flip = last_prep[in.a] == OpKind::PrepX ? 2 : 1;
                break;
            case OpKind::EMeas:
                op.p = in.p[0];
                op.a = in.record;
                break;
            default:
                break;
        }
        if (is_noise(in.kind)) {
            if (op.p <= 0) {
                continue;
            }
            op.log_q = std::log1p(-std::min(op.p, 1.0));
        }
        ops_.push_back(op);
    }
}

void FrameSampler::run_block(std::size_t shots, std::mt19937_64& rng, SampleBatch& out, bool keep_flags) const {
    const std::size_t nq = circuit_.num_qubits();
    std::vector<std::uint64_t> xs(nq * kWords, 0);
    std::vector<std::uint64_t> zs(nq * kWords, 0);
    std::vector<std::uint64_t> rec(static_cast<std::size_t>(circuit_.num_measurements()) * kWords, 0);
    auto X = [&](std::uint32_t q) { return xs.data() + static_cast<std::size_t>(q) * kWords; };
    auto Z = [&](std::uint32_t q) { return zs.data() + static_cast<std::size_t>(q) * kWords; };
    auto flip_bit = [](std::uint64_t* row, std::size_t shot) { row[shot / 64] ^= std::uint64_t{1} << (shot % 64); };

    // Visits each shot hit by an event of probability op.p.
    auto for_each_hit = [&](const Op& op, auto&& fn) {
        if (op.p >= 1) {
            for (std::size_t s = 0; s < shots; ++s) {
                fn(s);
            }
            return;
        }
        std::size_t s = 0;
        while (true) {
            double gap = std::floor(std::log(uniform_open(rng)) / op.log_q);
            if (gap >= static_cast<double>(shots - s)) {
                return;
            }
            s += static_cast<std::size_t>(gap);
            fn(s);
            ++s;
            if (s >= shots) {
                return;
            }
        }
    };

    for (const auto& op : ops_) {
        switch (op.kind) {
            case OpKind::PrepZ:
            case OpKind::PrepX:
            case OpKind::PrepY:
                std::fill(X(op.a), X(op.a) + kWords, 0);
                std::fill(Z(op.a), Z(op.a) + kWords, 0);
                break;
            case OpKind::H: {
                auto* x = X(op.a);
                auto* z = Z(op.a);
                for (std::size_t w = 0; w < kWords; ++w) {
                    std::swap(x[w], z[w]);
                }
                break;
            }
            case OpKind::CX: {
                auto* xc = X(op.a);
                auto* zc = Z(op.a);
                auto* xt = X(op.b);
                auto* zt = Z(op.b);
                for (std::size_t w = 0; w < kWords; ++w) {
                    xt[w] ^= xc[w];
                    zc[w] ^= zt[w];
                }
                break;
            }
            case OpKind::CY: {
                auto* xc = X(op.a);
                auto* zc = Z(op.a);
                auto* xt = X(op.b);
                auto* zt = Z(op.b);
                for (std::size_t w = 0; w < kWords; ++w) {
                    zc[w] ^= xt[w] ^ zt[w];
                    xt[w] ^= xc[w];
                    zt[w] ^= xc[w];
                }
                break;
            }
            case OpKind::MeasZ: {
                auto* r = rec.data() + static_cast<std::size_t>(op.b) * kWords;
                std::copy(X(op.a), X(op.a) + kWords, r);
                break;
            }
            case OpKind::MeasX: {
                auto* r = rec.data() + static_cast<std::size_t>(op.b) * kWords;
                std::copy(Z(op.a), Z(op.a) + kWords, r);
                break;
            }
            case OpKind::MeasY: {
                auto* r = rec.data() + static_cast<std::size_t>(op.b) * kWords;
                for (std::size_t w = 0; w < kWords; ++w) {
                    r[w] = X(op.a)[w] ^ Z(op.a)[w];
                }
                break;
            }
            case OpKind::E1:
                for_each_hit(op, [&](std::size_t s) {
                    double u = uniform_open(rng);
                    if (u <= op.cut_x) {
                        flip_bit(X(op.a), s);
                    } else if (u <= op.cut_xy) {
                        flip_bit(X(op.a), s);
                        flip_bit(Z(op.a), s);
                    } else {
                        flip_bit(Z(op.a), s);
                    }
                });
                break;
            case OpKind::E2:
                for_each_hit(op, [&](std::size_t s) {
                    auto k = static_cast<unsigned>(std::uniform_int_distribution<unsigned>(1, 15)(rng));
                    if (k & 1u) {
                        flip_bit(X(op.a), s);
                    }
                    if (k & 2u) {
                        flip_bit(Z(op.a), s);
                    }
                    if (k & 4u) {
                        flip_bit(X(op.b), s);
                    }
                    if (k & 8u) {
                        flip_bit(Z(op.b), s);
                    }
                });
                break;
            case OpKind::EPrep:
                for_each_hit(op, [&](std::size_t s) { flip_bit(op.flip == 2 ? Z(op.a) : X(op.a), s); });
                break;
            case OpKind::EMeas:
                for_each_hit(op, [&](std::size_t s) {
                    flip_bit(rec.data() + static_cast<std::size_t>(op.a) * kWords, s);
                });
                break;
            default:
                break;
        }
    }

    std::uint64_t tail_mask[kWords];
    for (std::size_t w = 0; w < kWords; ++w) {
        std::size_t lo = w * 64;
        tail_mask[w] = lo >= shots ? 0 : (shots - lo >= 64 ? ~std::uint64_t{0} : (std::uint64_t{1} << (shots - lo)) - 1);
    }
    auto scatter = [&](const std::vector<std::uint32_t>& records, std::uint8_t reference, BitMatrix& m,
                       std::size_t col) {
        std::uint64_t acc[kWords] = {};
        for (auto r : records) {
            const auto* p = rec.data() + static_cast<std::size_t>(r) * kWords;
            for (std::size_t w = 0; w < kWords; ++w) {
                acc[w] ^= p[w];
            }
        }
        for (std::size_t w = 0; w < kWords; ++w) {
            std::uint64_t v = (reference ? ~acc[w] : acc[w]) & tail_mask[w];
            while (v != 0) {
                auto b = static_cast<std::size_t>(__builtin_ctzll(v));
                m.set(w * 64 + b, col, true);
                v &= v - 1;
            }
        }
    };
    out.shots = shots;
    out.detectors = BitMatrix(shots, circuit_.detectors().size());
    out.observables = BitMatrix(shots, circuit_.observables().size());
    for (std::size_t d = 0; d < circuit_.detectors().size(); ++d) {
        scatter(circuit_.detectors()[d].records, reference_detectors_[d], out.detectors, d);
    }
    for (std::size_t o = 0; o < circuit_.observables().size(); ++o) {
        scatter(circuit_.observables()[o].records, reference_observables_[o], out.observables, o);
    }
    if (keep_flags) {
        out.flags = BitMatrix(shots, circuit_.flag_records().size());
        for (std::size_t f = 0; f < circuit_.flag_records().size(); ++f) {
            scatter({circuit_.flag_records()[f]}, reference_flags_[f], out.flags, f);
        }
    }
}

SampleBatch FrameSampler::sample(std::size_t shots, std::uint64_t seed, unsigned workers, bool keep_flags) const {
    const std::size_t blocks = (shots + kShotsPerBlock - 1) / kShotsPerBlock;
    std::vector<SampleBatch> parts(blocks);
    auto work = [&](std::size_t first, std::size_t stride) {
        for (std::size_t b = first; b < blocks; b += stride) {
            auto rng = make_stream(seed, b);
            std::size_t n = std::min(kShotsPerBlock, shots - b * kShotsPerBlock);
            run_block(n, rng, parts[b], keep_flags);
        }
    };
    workers = std::max(1u, std::min<unsigned>(workers, static_cast<unsigned>(std::max<std::size_t>(blocks, 1))));
    if (workers == 1) {
        work(0, 1);
    } else {
        std::vector<std::thread> pool;
        for (unsigned w = 0; w < workers; ++w) {
            pool.emplace_back(work, w, workers);
        }
        for (auto& t : pool) {
            t.join();
        }
    }
    SampleBatch out;
    out.detectors = BitMatrix(0, circuit_.detectors().size());
    out.observables = BitMatrix(0, circuit_.observables().size());
    if (keep_flags) {
        out.flags = BitMatrix(0, circuit_.flag_records().size());
    }
    for (auto& p : parts) {
        out.detectors.append_rows(p.detectors);
        out.observables.append_rows(p.observables);
        if (keep_flags) {
            out.flags.append_rows(p.flags);
        }
        out.shots += p.shots;
    }
    return out;
}

SampleBatch sample(const Circuit& circuit, std::size_t shots, std::uint64_t seed, unsigned workers,
                   bool keep_flags) {
    return FrameSampler(circuit).sample(shots, seed, workers, keep_flags);
}

}  // namespace hexqec
