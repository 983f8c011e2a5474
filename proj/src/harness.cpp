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

#include "hexqec/harness.hpp"

#include <algorithm>
#include <bit>
#include <charconv>
#include <cmath>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <map>
#include <random>
#include <sstream>
#include <stdexcept>
#include <thread>

#include "hexqec/circuit_builder.hpp"
#include "hexqec/decoder.hpp"
#include "hexqec/frame_sampler.hpp"
#include "hexqec/stats.hpp"
#include "json.hpp"

namespace hexqec {

std::string format_number(double v) {
    if (std::isnan(v)) {
        return "nan";
    }
    char buf[64];
    auto res = std::to_chars(buf, buf + sizeof(buf), v);
    return std::string(buf, res.ptr);
}

namespace {

double parse_double(std::string_view t) {
    double v = 0;
    auto res = std::from_chars(t.data(), t.data() + t.size(), v);
    if (res.ec != std::errc() || res.ptr != t.data() + t.size()) {
        throw std::invalid_argument("bad number '" + std::string(t) + "'");
    }
    return v;
}

template <typename T>
T parse_integer(std::string_view t) {
    T v = 0;
    auto res = std::from_chars(t.data(), t.data() + t.size(), v);
    if (res.ec != std::errc() || res.ptr != t.data() + t.size()) {
        throw std::invalid_argument("bad integer '" + std::string(t) + "'");
    }
    return v;
}

std::vector<std::string_view> split(std::string_view text, char sep) {
    std::vector<std::string_view> out;
    while (true) {
        auto k = text.find(sep);
        out.push_back(text.substr(0, k));
        if (k == std::string_view::npos) {
            return out;
        }
        text.remove_prefix(k + 1);
    }
}

std::uint64_t point_seed(std::uint64_t seed, CodeFamily f, Structure s, Bias eta, double p, int d) {
    auto pb = std::bit_cast<std::uint64_t>(p);
    auto eb = eta.is_infinite() ? ~std::uint64_t{0} : std::bit_cast<std::uint64_t>(eta.value());
    std::seed_seq seq{static_cast<std::uint32_t>(seed),       static_cast<std::uint32_t>(seed >> 32),
                      static_cast<std::uint32_t>(f),          static_cast<std::uint32_t>(s),
                      static_cast<std::uint32_t>(d),          static_cast<std::uint32_t>(pb),
                      static_cast<std::uint32_t>(pb >> 32),   static_cast<std::uint32_t>(eb),
                      static_cast<std::uint32_t>(eb >> 32)};
    std::array<std::uint32_t, 2> out{};
    seq.generate(out.begin(), out.end());
    return (static_cast<std::uint64_t>(out[1]) << 32) | out[0];
}

std::vector<Correction> decode_parallel(const MemoryDecoder& decoder, const BitMatrix& detectors, unsigned workers) {
    std::vector<Correction> out(detectors.rows());
    const std::size_t n = detectors.rows();
    workers = std::max(1u, std::min<unsigned>(workers, static_cast<unsigned>(std::max<std::size_t>(n, 1))));
    auto run = [&](std::size_t begin, std::size_t end) {
        for (std::size_t s = begin; s < end; ++s) {
            out[s] = decoder.decode_shot(detectors, s);
        }
    };
    if (workers == 1) {
        run(0, n);
        return out;
    }
    std::vector<std::thread> threads;
    std::vector<std::exception_ptr> errors(workers);
    for (unsigned w = 0; w < workers; ++w) {
        std::size_t begin = n * w / workers;
        std::size_t end = n * (w + 1) / workers;
        threads.emplace_back([&, w, begin, end] {
            try {
                run(begin, end);
            } catch (...) {
                errors[w] = std::current_exception();
            }
        });
    }
    for (auto& t : threads) {
        t.join();
    }
    for (auto& e : errors) {
        if (e) {
            std::rethrow_exception(e);
        }
    }
    return out;
}

}  // namespace

void SweepConfig::validate() const {
    if (families.empty() || structures.empty() || etas.empty() || ps.empty() || ds.empty()) {
        throw std::invalid_argument("sweep grids must be nonempty");
    }
    if (shots < 2) {
        throw std::invalid_argument("shots must be at least 2 (one per logical basis)");
    }
    for (double p : ps) {
        if (!(p >= 0 && p < 1)) {
            throw std::invalid_argument("p must lie in [0, 1)");
        }
    }
    for (int d : ds) {
        if (d < 3 || d % 2 == 0) {
            throw std::invalid_argument("distance must be odd and at least 3");
        }
    }
    if (workers == 0) {
        throw std::invalid_argument("workers must be positive");
    }
}

std::vector<double> parse_p_grid(std::string_view text) {
    std::vector<double> out;
    if (text.find(':') != std::string_view::npos) {
        auto parts = split(text, ':');
        if (parts.size() != 3) {
            throw std::invalid_argument("p range must be start:stop:step");
        }
        double a = parse_double(parts[0]);
        double b = parse_double(parts[1]);
        double step = parse_double(parts[2]);
        if (!(step > 0) || b < a) {
            throw std::invalid_argument("p range needs start <= stop and step > 0");
        }
        auto n = static_cast<long>(std::floor((b - a) / step + 1e-9));
        for (long k = 0; k <= n; ++k) {
            // Round to 12 significant digits to avoid accumulation noise.
            double v = a + step * static_cast<double>(k);
            out.push_back(std::stod(format_number(std::round(v * 1e12) / 1e12)));
        }
    } else {
        for (auto t : split(text, ',')) {
            out.push_back(parse_double(t));
        }
    }
    if (out.empty()) {
        throw std::invalid_argument("empty p grid");
    }
    return out;
}

SweepConfig preset(std::string_view name, Structure structure) {
    SweepConfig c;
    c.families = {CodeFamily::Surface, CodeFamily::Tailored, CodeFamily::XZZX};
    c.structures = {structure};
    c.seed = 42;
    c.workers = default_workers();
    const std::string grid = structure == Structure::HeavyHex ? "0.0010:0.0040" : "0.0030:0.0060";
    if (name == "desk") {
        c.etas = {Bias(0.5), Bias::infinite()};
        c.ds = {3, 5, 7};
        c.shots = 200000;
        c.ps = parse_p_grid(grid + ":0.0005");
    } else if (name == "paper") {
        c.etas = {Bias(0.5), Bias(1), Bias(10), Bias(100), Bias(1000), Bias::infinite()};
        c.ds = {3, 5, 7, 9, 11};
        c.shots = 1200000;
        c.ps = parse_p_grid(grid + ":0.00025");
    } else {
        throw std::invalid_argument("unknown preset '" + std::string(name) + "'");
    }
    return c;
}

void finalize_point(RatePoint& point) {
    auto r1 = make_rate(point.fail1, point.shots1());
    auto r2 = make_rate(point.fail2, point.shots2());
    point.e1 = r1.rate;
    point.e2 = r2.rate;
    point.e_total = combine_total(r1.rate, r2.rate);
    point.ci_low = combine_total(r1.ci_low, r2.ci_low);
    point.ci_high = combine_total(r1.ci_high, r2.ci_high);
}

RatePoint run_point(CodeFamily family, Structure structure, Bias eta, double p, int d, std::size_t shots,
                    std::uint64_t seed, unsigned workers, IdleMode idle) {
    if (shots < 2) {
        throw std::invalid_argument("shots must be at least 2 (one per logical basis)");
    }
    RatePoint point;
    point.family = family;
    point.structure = structure;
    point.eta = eta;
    point.p = p;
    point.d = d;
    point.shots = shots;
    const auto layout = build_layout(family, structure, d);
    const BiasedNoise model{p, eta, idle};
    auto base = point_seed(seed, family, structure, eta, p, d);
    for (auto basis : {LogicalBasis::L1, LogicalBasis::L2}) {
        const auto noisy = apply_noise(build_memory_circuit(layout, d, basis), model);
        const MemoryDecoder decoder(noisy);
        const std::size_t n = basis == LogicalBasis::L1 ? point.shots1() : point.shots2();
        const auto batch = sample(noisy, n, make_stream(base, static_cast<std::uint64_t>(basis))(), workers);
        const auto corrections = decode_parallel(decoder, batch.detectors, workers);
        const auto rates = logical_error_rates(batch, corrections);
        (basis == LogicalBasis::L1 ? point.fail1 : point.fail2) = rates.at(0).failures;
    }
    finalize_point(point);
    return point;
}

std::vector<RatePoint> sweep(const SweepConfig& config, bool progress) {
    config.validate();
    std::vector<RatePoint> out;
    for (auto f : config.families) {
        for (auto s : config.structures) {
            for (const auto& eta : config.etas) {
                for (double p : config.ps) {
                    for (int d : config.ds) {
                        out.push_back(run_point(f, s, eta, p, d, config.shots, config.seed, config.workers,
                                                config.idle));
                        if (progress) {
                            const auto& r = out.back();
                            std::cerr << to_string(f) << ' ' << to_string(s) << " eta=" << eta.str()
                                      << " p=" << format_number(p) << " d=" << d
                                      << " e_total=" << std::setprecision(6) << r.e_total << '\n';
                        }
                    }
                }
            }
        }
    }
    return out;
}

std::string_view to_string(ThresholdStatus s) {
    switch (s) {
        case ThresholdStatus::Ok:
            return "ok";
        case ThresholdStatus::Degenerate:
            return "degenerate";
        case ThresholdStatus::OutOfRange:
            return "out-of-range";
    }
    return "?";
}

namespace {

struct Curve {
    int d;
    std::map<double, const RatePoint*> by_p;
};

double floored_total(std::size_t f1, std::size_t n1, std::size_t f2, std::size_t n2) {
    double e1 = n1 == 0 ? 0 : static_cast<double>(f1) / static_cast<double>(n1);
    double e2 = n2 == 0 ? 0 : static_cast<double>(f2) / static_cast<double>(n2);
    double e = combine_total(e1, e2);
    if (e <= 0) {
        e = 0.5 / static_cast<double>(n1 + n2);
    }
    return e;
}

struct Counts {
    std::size_t f1, n1, f2, n2;
};

// Crossing between two curves sampled on the same p grid.
Crossing cross(const std::vector<double>& ps, const std::vector<Counts>& small, const std::vector<Counts>& large,
               bool& degenerate) {
    Crossing c;
    std::vector<double> diff(ps.size());
    degenerate = true;
    for (std::size_t k = 0; k < ps.size(); ++k) {
        diff[k] = std::log(floored_total(large[k].f1, large[k].n1, large[k].f2, large[k].n2)) -
                  std::log(floored_total(small[k].f1, small[k].n1, small[k].f2, small[k].n2));
        if (diff[k] != 0) {
            degenerate = false;
        }
    }
    if (degenerate) {
        return c;
    }
    for (std::size_t k = 0; k + 1 < ps.size(); ++k) {
        if (diff[k] < 0 && diff[k + 1] >= 0) {
            c.p = ps[k] + (ps[k + 1] - ps[k]) * (-diff[k]) / (diff[k + 1] - diff[k]);
            c.found = true;
            return c;
        }
    }
    return c;
}

double median(std::vector<double> v) {
    std::sort(v.begin(), v.end());
    auto n = v.size();
    return n % 2 == 1 ? v[n / 2] : 0.5 * (v[n / 2 - 1] + v[n / 2]);
}

double percentile(const std::vector<double>& sorted, double q) {
    if (sorted.empty()) {
        return std::nan("");
    }
    double pos = q * static_cast<double>(sorted.size() - 1);
    auto lo = static_cast<std::size_t>(std::floor(pos));
    auto hi = std::min(lo + 1, sorted.size() - 1);
    return sorted[lo] + (sorted[hi] - sorted[lo]) * (pos - static_cast<double>(lo));
}

}  // namespace

ThresholdEstimate estimate_threshold(const std::vector<RatePoint>& points, std::size_t bootstrap, std::uint64_t seed) {
    ThresholdEstimate est;
    est.p_th = std::nan("");
    est.ci_low = std::nan("");
    est.ci_high = std::nan("");
    if (points.empty()) {
        est.diagnostic = "no points";
        return est;
    }
    est.family = points[0].family;
    est.structure = points[0].structure;
    est.eta = points[0].eta;
    std::map<int, Curve> curves;
    for (const auto& p : points) {
        if (p.family != est.family || p.structure != est.structure || !(p.eta == est.eta)) {
            throw std::invalid_argument("threshold points must share family, structure and eta");
        }
        auto& c = curves[p.d];
        c.d = p.d;
        if (!c.by_p.emplace(p.p, &p).second) {
            throw std::invalid_argument("duplicate point at d=" + std::to_string(p.d) + " p=" + format_number(p.p));
        }
    }
    if (curves.size() < 2) {
        est.diagnostic = "need at least two distances";
        return est;
    }
    // Adjacent distance pairs on their common p grid.
    struct Pair {
        int ds;
        int dl;
        std::vector<double> ps;
        std::vector<const RatePoint*> small;
        std::vector<const RatePoint*> large;
    };
    std::vector<Pair> pairs;
    for (auto it = curves.begin(); std::next(it) != curves.end(); ++it) {
        auto nx = std::next(it);
        Pair pr{it->first, nx->first, {}, {}, {}};
        for (const auto& [p, pt] : it->second.by_p) {
            auto jt = nx->second.by_p.find(p);
            if (jt != nx->second.by_p.end()) {
                pr.ps.push_back(p);
                pr.small.push_back(pt);
                pr.large.push_back(jt->second);
            }
        }
        if (pr.ps.size() < 3) {
            est.diagnostic = "distances " + std::to_string(pr.ds) + "/" + std::to_string(pr.dl) +
                             " share fewer than three p values";
            return est;
        }
        pairs.push_back(std::move(pr));
    }
    auto counts_of = [](const std::vector<const RatePoint*>& v) {
        std::vector<Counts> out;
        for (auto* p : v) {
            out.push_back({p->fail1, p->shots1(), p->fail2, p->shots2()});
        }
        return out;
    };
    auto evaluate = [&](const std::vector<std::vector<Counts>>& small, const std::vector<std::vector<Counts>>& large,
                        std::vector<Crossing>* record, bool& all_degenerate) {
        std::vector<double> found;
        all_degenerate = true;
        for (std::size_t k = 0; k < pairs.size(); ++k) {
            bool degenerate = false;
            auto c = cross(pairs[k].ps, small[k], large[k], degenerate);
            c.d_small = pairs[k].ds;
            c.d_large = pairs[k].dl;
            all_degenerate = all_degenerate && degenerate;
            if (c.found) {
                found.push_back(c.p);
            }
            if (record != nullptr) {
                record->push_back(c);
            }
        }
        return found;
    };
    std::vector<std::vector<Counts>> small;
    std::vector<std::vector<Counts>> large;
    for (const auto& pr : pairs) {
        small.push_back(counts_of(pr.small));
        large.push_back(counts_of(pr.large));
    }
    bool all_degenerate = false;
    auto found = evaluate(small, large, &est.crossings, all_degenerate);
    if (all_degenerate) {
        est.status = ThresholdStatus::Degenerate;
        est.diagnostic = "curves coincide at every p; every grid point is a crossing";
        return est;
    }
    if (found.empty()) {
        est.status = ThresholdStatus::OutOfRange;
        est.diagnostic = "no crossing bracketed by the p grid";
        return est;
    }
    est.status = ThresholdStatus::Ok;
    est.p_th = median(found);
    if (found.size() < pairs.size()) {
        est.diagnostic = std::to_string(pairs.size() - found.size()) + " distance pair(s) without a crossing";
    }

    std::mt19937_64 rng(seed);
    auto draw = [&](std::size_t f, std::size_t n) -> std::size_t {
        if (n == 0) {
            return 0;
        }
        std::binomial_distribution<std::size_t> dist(n, static_cast<double>(f) / static_cast<double>(n));
        return dist(rng);
    };
    // Points shared by two pairs are resampled once.
    std::vector<double> samples;
    for (std::size_t b = 0; b < bootstrap; ++b) {
        std::map<const RatePoint*, Counts> drawn;
        auto draw_all = [&](const std::vector<const RatePoint*>& v) {
            std::vector<Counts> out;
            for (auto* p : v) {
                auto it = drawn.find(p);
                if (it == drawn.end()) {
                    Counts c{draw(p->fail1, p->shots1()), p->shots1(), draw(p->fail2, p->shots2()), p->shots2()};
                    it = drawn.emplace(p, c).first;
                }
                out.push_back(it->second);
            }
            return out;
        };
        std::vector<std::vector<Counts>> bs;
        std::vector<std::vector<Counts>> bl;
        for (const auto& pr : pairs) {
            bs.push_back(draw_all(pr.small));
            bl.push_back(draw_all(pr.large));
        }
        bool deg = false;
        auto f = evaluate(bs, bl, nullptr, deg);
        if (!f.empty()) {
            samples.push_back(median(f));
        }
    }
    est.bootstrap = bootstrap;
    std::sort(samples.begin(), samples.end());
    est.ci_low = percentile(samples, 0.025);
    est.ci_high = percentile(samples, 0.975);
    return est;
}

std::vector<ThresholdEstimate> estimate_thresholds(const std::vector<RatePoint>& points, std::size_t bootstrap,
                                                   std::uint64_t seed) {
    std::vector<std::vector<RatePoint>> groups;
    for (const auto& p : points) {
        auto it = std::find_if(groups.begin(), groups.end(), [&](const auto& g) {
            return g[0].family == p.family && g[0].structure == p.structure && g[0].eta == p.eta;
        });
        if (it == groups.end()) {
            groups.push_back({p});
        } else {
            it->push_back(p);
        }
    }
    std::vector<ThresholdEstimate> out;
    for (const auto& g : groups) {
        out.push_back(estimate_threshold(g, bootstrap, seed));
    }
    return out;
}

namespace {

constexpr std::string_view kPointsHeader = "family,structure,eta,p,d,shots,fail1,fail2,e1,e2,e_total,ci_low,ci_high";

}  // namespace

std::string points_csv(const std::vector<RatePoint>& points) {
    std::ostringstream out;
    out << kPointsHeader << '\n';
    for (const auto& r : points) {
        out << to_string(r.family) << ',' << to_string(r.structure) << ',' << r.eta.str() << ','
            << format_number(r.p) << ',' << r.d << ',' << r.shots << ',' << r.fail1 << ',' << r.fail2 << ','
            << format_number(r.e1) << ',' << format_number(r.e2) << ',' << format_number(r.e_total) << ','
            << format_number(r.ci_low) << ',' << format_number(r.ci_high) << '\n';
    }
    return out.str();
}

std::vector<RatePoint> parse_points_csv(std::string_view text) {
    std::vector<RatePoint> out;
    std::size_t line_no = 0;
    bool header = false;
    for (auto line : split(text, '\n')) {
        ++line_no;
        if (!line.empty() && line.back() == '\r') {
            line.remove_suffix(1);
        }
        if (line.empty()) {
            continue;
        }
        if (!header) {
            if (line != kPointsHeader) {
                throw std::invalid_argument("line 1: unexpected CSV header");
            }
            header = true;
            continue;
        }
        auto f = split(line, ',');
        if (f.size() != 13) {
            throw std::invalid_argument("line " + std::to_string(line_no) + ": expected 13 fields");
        }
        try {
            RatePoint r;
            r.family = parse_family(f[0]);
            r.structure = parse_structure(f[1]);
            r.eta = Bias::parse(f[2]);
            r.p = parse_double(f[3]);
            r.d = parse_integer<int>(f[4]);
            r.shots = parse_integer<std::size_t>(f[5]);
            r.fail1 = parse_integer<std::size_t>(f[6]);
            r.fail2 = parse_integer<std::size_t>(f[7]);
            if (r.fail1 > r.shots1() || r.fail2 > r.shots2()) {
                throw std::invalid_argument("more failures than shots");
            }
            finalize_point(r);
            out.push_back(r);
        } catch (const std::invalid_argument& e) {
            throw std::invalid_argument("line " + std::to_string(line_no) + ": " + e.what());
        }
    }
    if (!header) {
        throw std::invalid_argument("missing CSV header");
    }
    return out;
}

std::string thresholds_csv(const std::vector<ThresholdEstimate>& estimates) {
    std::ostringstream out;
    out << "family,structure,eta,p_th,ci_low,ci_high,status,crossings,bootstrap\n";
    for (const auto& e : estimates) {
        out << to_string(e.family) << ',' << to_string(e.structure) << ',' << e.eta.str() << ','
            << format_number(e.p_th) << ',' << format_number(e.ci_low) << ',' << format_number(e.ci_high) << ','
            << to_string(e.status) << ',';
        bool first = true;
        for (const auto& c : e.crossings) {
            out << (first ? "" : ";") << c.d_small << '/' << c.d_large << ':'
                << (c.found ? format_number(c.p) : "none");
            first = false;
        }
        out << ',' << e.bootstrap << '\n';
    }
    return out.str();
}

void emit_results(const std::filesystem::path& dir, const SweepConfig& config, const std::vector<RatePoint>& points) {
    std::filesystem::create_directories(dir);
    auto write = [](const std::filesystem::path& path, const std::string& text) {
        std::ofstream f(path);
        if (!f) {
            throw std::runtime_error("cannot write " + path.string());
        }
        f << text;
        if (!f) {
            throw std::runtime_error("cannot write " + path.string());
        }
    };
    write(dir / "results.csv", points_csv(points));

    nlohmann::json j;
    j["version"] = kVersion;
    auto& c = j["config"];
    c["families"] = nlohmann::json::array();
    for (auto f : config.families) {
        c["families"].push_back(to_string(f));
    }
    c["structures"] = nlohmann::json::array();
    for (auto s : config.structures) {
        c["structures"].push_back(to_string(s));
    }
    c["eta"] = nlohmann::json::array();
    for (const auto& e : config.etas) {
        c["eta"].push_back(e.str());
    }
    c["p"] = config.ps;
    c["d"] = config.ds;
    c["shots"] = config.shots;
    c["seed"] = config.seed;
    c["workers"] = config.workers;
    c["idle"] = config.idle == IdleMode::PerCycle ? "per-cycle" : "per-round";
    j["points"] = nlohmann::json::array();
    for (const auto& r : points) {
        j["points"].push_back({{"family", to_string(r.family)},
                               {"structure", to_string(r.structure)},
                               {"eta", r.eta.str()},
                               {"p", r.p},
                               {"d", r.d},
                               {"shots", r.shots},
                               {"fail1", r.fail1},
                               {"fail2", r.fail2},
                               {"e1", r.e1},
                               {"e2", r.e2},
                               {"e_total", r.e_total},
                               {"ci_low", r.ci_low},
                               {"ci_high", r.ci_high}});
    }
    write(dir / "results.json", j.dump(2) + "\n");
}

std::string layout_json(const CodeLayout& layout, bool ithaca_map) {
    nlohmann::json j;
    j["family"] = to_string(layout.family);
    j["structure"] = to_string(layout.structure);
    j["d"] = layout.distance;
    std::vector<std::uint32_t> device;
    if (ithaca_map) {
        device = ithaca_index_map(layout);
    }
    j["qubits"] = nlohmann::json::array();
    for (const auto& q : layout.qubits) {
        nlohmann::json e{{"id", q.id}, {"role", to_string(q.role)}, {"row", q.coord.row}, {"col", q.coord.col}};
        if (ithaca_map) {
            e["device"] = device.at(q.id);
        }
        j["qubits"].push_back(std::move(e));
    }
    j["stabilizers"] = nlohmann::json::array();
    for (const auto& s : layout.stabilizers) {
        std::string letters;
        for (auto p : s.letters) {
            letters.push_back(pauli_char(p));
        }
        j["stabilizers"].push_back({{"group", to_string(s.group)},
                                    {"letters", letters},
                                    {"data", s.data_ids},
                                    {"flags", s.flag_ids},
                                    {"syndrome", s.syndrome_id}});
    }
    j["logicals"] = nlohmann::json::array();
    for (const auto& l : layout.logicals) {
        j["logicals"].push_back(l.str());
    }
    j["couplings"] = layout.couplings;
    return j.dump(2) + "\n";
}

std::string samples_text(const SampleBatch& batch) {
    std::string out = std::to_string(batch.shots) + ' ' + std::to_string(batch.detectors.cols()) + ' ' +
                      std::to_string(batch.observables.cols()) + '\n';
    for (std::size_t s = 0; s < batch.shots; ++s) {
        for (std::size_t d = 0; d < batch.detectors.cols(); ++d) {
            out.push_back(batch.detectors.get(s, d) ? '1' : '0');
        }
        out.push_back(' ');
        for (std::size_t o = 0; o < batch.observables.cols(); ++o) {
            out.push_back(batch.observables.get(s, o) ? '1' : '0');
        }
        out.push_back('\n');
    }
    return out;
}

SampleBatch parse_samples_text(std::string_view text) {
    auto lines = split(text, '\n');
    auto header = split(lines.at(0), ' ');
    if (header.size() != 3) {
        throw std::invalid_argument("line 1: expected 'shots detectors observables'");
    }
    SampleBatch batch;
    batch.shots = parse_integer<std::size_t>(header[0]);
    const auto nd = parse_integer<std::size_t>(header[1]);
    const auto no = parse_integer<std::size_t>(header[2]);
    batch.detectors = BitMatrix(batch.shots, nd);
    batch.observables = BitMatrix(batch.shots, no);
    for (std::size_t s = 0; s < batch.shots; ++s) {
        const std::string where = "line " + std::to_string(s + 2) + ": ";
        if (s + 1 >= lines.size()) {
            throw std::invalid_argument(where + "missing shot row");
        }
        auto row = lines[s + 1];
        if (!row.empty() && row.back() == '\r') {
            row.remove_suffix(1);
        }
        if (row.size() != nd + 1 + no || row[nd] != ' ') {
            throw std::invalid_argument(where + "row has the wrong shape");
        }
        for (std::size_t k = 0; k < row.size(); ++k) {
            if (k == nd) {
                continue;
            }
            if (row[k] != '0' && row[k] != '1') {
                throw std::invalid_argument(where + "expected 0 or 1");
            }
            if (row[k] == '1') {
                if (k < nd) {
                    batch.detectors.set(s, k, true);
                } else {
                    batch.observables.set(s, k - nd - 1, true);
                }
            }
        }
    }
    return batch;
}

}  // namespace hexqec
