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

#ifndef HEXQEC_HARNESS_HPP
#define HEXQEC_HARNESS_HPP

#include <cstdint>
#include <filesystem>
#include <string>
#include <string_view>
#include <vector>

#include "hexqec/code_layout.hpp"
#include "hexqec/frame_sampler.hpp"
#include "hexqec/noise_model.hpp"

namespace hexqec {

inline constexpr std::string_view kVersion = "1.0.0";

struct SweepConfig {
    std::vector<CodeFamily> families;
    std::vector<Structure> structures;
    std::vector<Bias> etas;
    std::vector<double> ps;
    std::vector<int> ds;
    std::size_t shots = 0;
    std::uint64_t seed = 0;
    unsigned workers = 1;
    IdleMode idle = IdleMode::PerCycle;

    /// Throws std::invalid_argument on empty grids, shots < 2 or bad values.
    void validate() const;
};

/// Named presets: "desk" (d 3..7, 2e5 shots) and "paper" (d 3..11, 1.2e6
/// shots). The p grid brackets the published values for the structure.
SweepConfig preset(std::string_view name, Structure structure);

/// "a:b:step" (inclusive) or a comma list.
std::vector<double> parse_p_grid(std::string_view text);

struct RatePoint {
    CodeFamily family = CodeFamily::Surface;
    Structure structure = Structure::HeavyHex;
    Bias eta;
    double p = 0;
    int d = 0;
    std::size_t shots = 0;  // total over both bases
    std::size_t fail1 = 0;
    std::size_t fail2 = 0;
    double e1 = 0;
    double e2 = 0;
    double e_total = 0;
    double ci_low = 0;
    double ci_high = 0;

    std::size_t shots1() const { return shots / 2; }
    std::size_t shots2() const { return shots - shots / 2; }
};

/// Builds both memory experiments with d rounds, samples half the shots in
/// each, decodes, and combines the two logical error rates.
RatePoint run_point(CodeFamily family, Structure structure, Bias eta, double p, int d, std::size_t shots,
                    std::uint64_t seed, unsigned workers = 1, IdleMode idle = IdleMode::PerCycle);

/// Fills e1, e2, e_total and the interval from the counts.
void finalize_point(RatePoint& point);

/// All points of the sweep in family, structure, eta, p, d order.
std::vector<RatePoint> sweep(const SweepConfig& config, bool progress = false);

enum class ThresholdStatus { Ok, Degenerate, OutOfRange };
std::string_view to_string(ThresholdStatus s);

struct Crossing {
    int d_small = 0;
    int d_large = 0;
    double p = 0;
    bool found = false;
};

struct ThresholdEstimate {
    CodeFamily family = CodeFamily::Surface;
    Structure structure = Structure::HeavyHex;
    Bias eta;
    ThresholdStatus status = ThresholdStatus::OutOfRange;
    double p_th = 0;
    double ci_low = 0;
    double ci_high = 0;
    std::vector<Crossing> crossings;
    std::size_t bootstrap = 0;
    std::string diagnostic;
};

/// Crossing of log E_total between adjacent distances by linear
/// interpolation in p; the threshold is the median crossing and the interval
/// comes from a parametric bootstrap of the failure counts.
ThresholdEstimate estimate_threshold(const std::vector<RatePoint>& points, std::size_t bootstrap = 1000,
                                     std::uint64_t seed = 1);

/// Groups points by (family, structure, eta) and estimates each.
std::vector<ThresholdEstimate> estimate_thresholds(const std::vector<RatePoint>& points,
                                                   std::size_t bootstrap = 1000, std::uint64_t seed = 1);

std::string points_csv(const std::vector<RatePoint>& points);
std::vector<RatePoint> parse_points_csv(std::string_view text);
std::string thresholds_csv(const std::vector<ThresholdEstimate>& estimates);

/// Writes results.csv and results.json into `dir` (created if needed).
void emit_results(const std::filesystem::path& dir, const SweepConfig& config, const std::vector<RatePoint>& points);

std::string format_number(double v);

/// JSON description of a layout; `ithaca_map` adds each qubit's device index
/// (distance-3 heavy-hex only).
std::string layout_json(const CodeLayout& layout, bool ithaca_map = false);

/// Text sample format: header "shots detectors observables", then one row per
/// shot with the detector bits, a space, and the observable bits.
std::string samples_text(const SampleBatch& batch);
SampleBatch parse_samples_text(std::string_view text);

}  // namespace hexqec

#endif
