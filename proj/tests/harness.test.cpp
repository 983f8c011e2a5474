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

#include <cmath>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "gtest/gtest.h"
#include "hexqec/stats.hpp"
#include "json.hpp"

using namespace hexqec;

namespace {

// E_d(p) = 0.1 (p / p*)^((d + 1) / 2), stored as failure counts of basis 1.
std::vector<RatePoint> synthetic(double p_star, const std::vector<double>& ps, const std::vector<int>& ds,
                                 std::size_t shots) {
    std::vector<RatePoint> out;
    for (int d : ds) {
        for (double p : ps) {
            RatePoint r;
            r.family = CodeFamily::Tailored;
            r.structure = Structure::HeavyHex;
            r.eta = Bias(0.5);
            r.p = p;
            r.d = d;
            r.shots = shots;
            double e = 0.1 * std::pow(p / p_star, (d + 1) / 2.0);
            r.fail1 = static_cast<std::size_t>(std::llround(e * static_cast<double>(r.shots1())));
            finalize_point(r);
            out.push_back(r);
        }
    }
    return out;
}

std::string slurp(const std::filesystem::path& p) {
    std::ifstream f(p);
    std::ostringstream ss;
    ss << f.rdbuf();
    return ss.str();
}

}  // namespace

TEST(harness, p_grid_parsing) {
    auto g = parse_p_grid("0.0010:0.0040:0.0005");
    ASSERT_EQ(g.size(), 7u);
    EXPECT_DOUBLE_EQ(g.front(), 0.001);
    EXPECT_DOUBLE_EQ(g[3], 0.0025);
    EXPECT_DOUBLE_EQ(g.back(), 0.004);
    EXPECT_EQ(parse_p_grid("0.1,0.2"), (std::vector<double>{0.1, 0.2}));
    EXPECT_THROW(parse_p_grid("0.1:0.05:0.01"), std::invalid_argument);
    EXPECT_THROW(parse_p_grid("0.1:0.2"), std::invalid_argument);
    EXPECT_THROW(parse_p_grid("x"), std::invalid_argument);
}

TEST(harness, presets) {
    auto desk = preset("desk", Structure::HeavyHex);
    EXPECT_EQ(desk.ds, (std::vector<int>{3, 5, 7}));
    EXPECT_EQ(desk.shots, 200000u);
    EXPECT_EQ(desk.ps.size(), 7u);
    auto paper = preset("paper", Structure::Lattice);
    EXPECT_EQ(paper.ds.back(), 11);
    EXPECT_GE(paper.shots, 1200000u);
    EXPECT_EQ(paper.etas.size(), 6u);
    EXPECT_THROW(preset("huge", Structure::Lattice), std::invalid_argument);
}

TEST(harness, zero_noise_point) {
    auto r = run_point(CodeFamily::Surface, Structure::HeavyHex, Bias(0.5), 0.0, 3, 200, 1);
    EXPECT_EQ(r.e_total, 0.0);
    EXPECT_EQ(r.fail1 + r.fail2, 0u);
    EXPECT_EQ(r.shots1() + r.shots2(), 200u);
}

TEST(harness, point_is_reproducible) {
    auto a = run_point(CodeFamily::Surface, Structure::HeavyHex, Bias(0.5), 0.002, 3, 4000, 7);
    auto b = run_point(CodeFamily::Surface, Structure::HeavyHex, Bias(0.5), 0.002, 3, 4000, 7, 2);
    EXPECT_EQ(a.fail1, b.fail1);
    EXPECT_EQ(a.fail2, b.fail2);
    EXPECT_GT(a.e_total, 0.0);
    EXPECT_LT(a.e_total, 1.0);
    EXPECT_NEAR(a.e_total, combine_total(a.e1, a.e2), 1e-15);
    EXPECT_LE(a.ci_low, a.e_total);
    EXPECT_GE(a.ci_high, a.e_total);
}

TEST(harness, error_rate_grows_with_p) {
    auto lo = run_point(CodeFamily::XZZX, Structure::Lattice, Bias::infinite(), 0.002, 3, 6000, 3);
    auto hi = run_point(CodeFamily::XZZX, Structure::Lattice, Bias::infinite(), 0.008, 3, 6000, 3);
    EXPECT_LT(lo.e_total, hi.e_total);
}

TEST(harness, synthetic_threshold_is_recovered) {
    auto ps = parse_p_grid("0.0010:0.0050:0.0005");
    auto points = synthetic(0.003, ps, {3, 5, 7}, 20000000);
    auto est = estimate_threshold(points, 200, 3);
    ASSERT_EQ(est.status, ThresholdStatus::Ok) << est.diagnostic;
    EXPECT_NEAR(est.p_th, 0.003, 0.0005);
    EXPECT_EQ(est.crossings.size(), 2u);
    EXPECT_EQ(est.bootstrap, 200u);
    EXPECT_LE(est.ci_low, est.p_th + 1e-12);
    EXPECT_GE(est.ci_high, est.p_th - 1e-12);
}

TEST(harness, identical_curves_are_degenerate) {
    auto points = synthetic(0.003, {0.001, 0.002, 0.003}, {3}, 1000000);
    auto more = points;
    for (auto& r : more) {
        r.d = 5;
    }
    points.insert(points.end(), more.begin(), more.end());
    EXPECT_EQ(estimate_threshold(points).status, ThresholdStatus::Degenerate);
}

TEST(harness, unbracketed_crossing_is_out_of_range) {
    auto points = synthetic(0.01, {0.001, 0.002, 0.003}, {3, 5}, 1000000);
    auto est = estimate_threshold(points, 10);
    EXPECT_EQ(est.status, ThresholdStatus::OutOfRange);
    EXPECT_TRUE(std::isnan(est.p_th));
    auto single = synthetic(0.003, {0.001, 0.002, 0.003}, {3}, 1000);
    EXPECT_EQ(estimate_threshold(single).status, ThresholdStatus::OutOfRange);
}

TEST(harness, empty_sweep_csv_is_header_only) {
    EXPECT_EQ(points_csv({}), "family,structure,eta,p,d,shots,fail1,fail2,e1,e2,e_total,ci_low,ci_high\n");
    EXPECT_TRUE(parse_points_csv(points_csv({})).empty());
}

TEST(harness, csv_and_json_round_trip) {
    auto points = synthetic(0.003, {0.002}, {3}, 1000);
    points[0].eta = Bias::infinite();
    points[0].fail2 = 17;
    finalize_point(points[0]);
    auto back = parse_points_csv(points_csv(points));
    ASSERT_EQ(back.size(), 1u);
    EXPECT_EQ(back[0].family, points[0].family);
    EXPECT_TRUE(back[0].eta.is_infinite());
    EXPECT_EQ(back[0].fail2, 17u);
    EXPECT_DOUBLE_EQ(back[0].e_total, points[0].e_total);
    EXPECT_THROW(parse_points_csv("a,b\n"), std::invalid_argument);

    auto dir = std::filesystem::temp_directory_path() / "hexqec_harness_test";
    std::filesystem::remove_all(dir);
    SweepConfig config;
    config.families = {CodeFamily::Tailored};
    config.structures = {Structure::HeavyHex};
    config.etas = {Bias::infinite()};
    config.ps = {0.002};
    config.ds = {3};
    config.shots = 1000;
    config.seed = 5;
    emit_results(dir, config, points);
    auto j = nlohmann::json::parse(slurp(dir / "results.json"));
    EXPECT_EQ(j["version"], std::string(kVersion));
    EXPECT_EQ(j["config"]["seed"], 5);
    EXPECT_EQ(j["config"]["eta"][0], "inf");
    ASSERT_EQ(j["points"].size(), 1u);
    EXPECT_EQ(j["points"][0]["fail2"], 17);
    EXPECT_EQ(j["points"][0]["eta"], "inf");
    EXPECT_DOUBLE_EQ(j["points"][0]["e_total"].get<double>(), points[0].e_total);
    EXPECT_EQ(slurp(dir / "results.csv"), points_csv(points));
    std::filesystem::remove_all(dir);
}

TEST(harness, sweep_row_count) {
    SweepConfig config;
    config.families = {CodeFamily::Surface, CodeFamily::Tailored, CodeFamily::XZZX};
    config.structures = {Structure::HeavyHex};
    config.etas = {Bias(0.5)};
    config.ps = {0.001, 0.002};
    config.ds = {3, 5};
    config.shots = 20;
    auto points = sweep(config);
    EXPECT_EQ(points.size(), 12u);
    for (const auto& r : points) {
        EXPECT_NEAR(r.e_total, combine_total(r.e1, r.e2), 1e-15);
    }
    config.ds = {4};
    EXPECT_THROW(sweep(config), std::invalid_argument);
}

TEST(harness, layout_json_fields) {
    auto layout = build_layout(CodeFamily::Tailored, Structure::HeavyHex, 3);
    auto j = nlohmann::json::parse(layout_json(layout, true));
    EXPECT_EQ(j["family"], "tailored");
    EXPECT_EQ(j["structure"], "heavy-hex");
    EXPECT_EQ(j["d"], 3);
    EXPECT_EQ(j["qubits"].size(), layout.qubits.size());
    EXPECT_TRUE(j["qubits"][0].contains("device"));
    EXPECT_EQ(j["stabilizers"].size(), 12u);
    EXPECT_EQ(j["logicals"].size(), 2u);
    auto lattice = build_layout(CodeFamily::Tailored, Structure::Lattice, 3);
    EXPECT_THROW(layout_json(lattice, true), std::invalid_argument);
}

TEST(harness, samples_text_round_trip) {
    SampleBatch b;
    b.shots = 2;
    b.detectors = BitMatrix(2, 3);
    b.observables = BitMatrix(2, 1);
    b.detectors.set(0, 2, true);
    b.observables.set(1, 0, true);
    auto text = samples_text(b);
    EXPECT_EQ(text, "2 3 1\n001 0\n000 1\n");
    auto back = parse_samples_text(text);
    EXPECT_TRUE(back.detectors == b.detectors);
    EXPECT_TRUE(back.observables == b.observables);
    EXPECT_THROW(parse_samples_text("2 3 1\n001 0\n"), std::invalid_argument);
    EXPECT_THROW(parse_samples_text("1 3 1\n0x1 0\n"), std::invalid_argument);
}

TEST(harness, regression_snapshot_heavy_hex_surface) {
    // Frozen from the first verified run of this configuration.
    auto r = run_point(CodeFamily::Surface, Structure::HeavyHex, Bias(0.5), 0.002, 3, 20000, 2026);
    EXPECT_EQ(r.fail1, 290u);
    EXPECT_EQ(r.fail2, 121u);
    EXPECT_GT(r.e_total, 0.0);
    EXPECT_LT(r.e_total, 1.0);
}

TEST(harness, larger_distance_helps_below_threshold) {
    auto d3 = run_point(CodeFamily::Surface, Structure::HeavyHex, Bias(0.5), 0.001, 3, 20000, 2026);
    auto d5 = run_point(CodeFamily::Surface, Structure::HeavyHex, Bias(0.5), 0.001, 5, 20000, 2026);
    EXPECT_LT(d5.ci_high, d3.ci_low);
}
