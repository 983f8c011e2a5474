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

#include <fstream>
#include <iostream>
#include <sstream>
#include <stdexcept>
#include <string>

#include "CLI11.hpp"
#include "hexqec/circuit_builder.hpp"
#include "hexqec/code_layout.hpp"
#include "hexqec/decoder.hpp"
#include "hexqec/dem.hpp"
#include "hexqec/frame_sampler.hpp"
#include "hexqec/harness.hpp"
#include "hexqec/noise_model.hpp"

using namespace hexqec;

namespace {

std::string read_file(const std::string& path) {
    std::ifstream f(path, std::ios::binary);
    if (!f) {
        throw std::runtime_error("cannot read " + path);
    }
    std::ostringstream ss;
    ss << f.rdbuf();
    return ss.str();
}

void write_output(const std::string& path, const std::string& text) {
    if (path.empty() || path == "-") {
        std::cout << text;
        return;
    }
    std::ofstream f(path, std::ios::binary);
    if (!f) {
        throw std::runtime_error("cannot write " + path);
    }
    f << text;
    if (!f) {
        throw std::runtime_error("cannot write " + path);
    }
}

std::vector<std::string> split_list(const std::string& text) {
    std::vector<std::string> out;
    std::stringstream ss(text);
    std::string item;
    while (std::getline(ss, item, ',')) {
        if (!item.empty()) {
            out.push_back(item);
        }
    }
    return out;
}

LogicalBasis parse_basis(const std::string& text) {
    if (text == "l1" || text == "L1") {
        return LogicalBasis::L1;
    }
    if (text == "l2" || text == "L2") {
        return LogicalBasis::L2;
    }
    throw std::invalid_argument("basis must be l1 or l2");
}

unsigned resolve_workers(unsigned requested) { return requested == 0 ? default_workers() : requested; }

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Circuit-level simulation and matching decoding of planar codes on lattice and heavy-hex hardware"};
    app.require_subcommand(1);
    app.set_version_flag("--version", std::string(kVersion));

    // layout
    std::string code = "surface";
    std::string structure = "heavy-hex";
    int d = 3;
    bool ithaca = false;
    std::string out;
    auto* layout_cmd = app.add_subcommand("layout", "Emit a code layout as JSON");
    layout_cmd->add_option("--code", code, "surface, tailored or xzzx")->required();
    layout_cmd->add_option("--structure", structure, "lattice or heavy-hex")->required();
    layout_cmd->add_option("--d", d, "code distance")->required();
    layout_cmd->add_flag("--ithaca-map", ithaca, "include device qubit indices (d=3 heavy-hex)");
    layout_cmd->add_option("--out", out, "output file (default stdout)");

    // circuit
    std::string basis = "l1";
    int rounds = -1;
    double p = -1;
    std::string eta = "0.5";
    std::string idle = "per-cycle";
    auto* circuit_cmd = app.add_subcommand("circuit", "Emit a memory circuit in text form");
    circuit_cmd->add_option("--code", code)->required();
    circuit_cmd->add_option("--structure", structure)->required();
    circuit_cmd->add_option("--d", d)->required();
    circuit_cmd->add_option("--basis", basis, "l1 or l2");
    circuit_cmd->add_option("--rounds", rounds, "syndrome rounds (default d)");
    circuit_cmd->add_option("--p", p, "add biased noise with this total rate");
    circuit_cmd->add_option("--eta", eta, "noise bias, a number or inf");
    circuit_cmd->add_option("--idle", idle, "per-cycle or per-round");
    circuit_cmd->add_option("--out", out);

    // sample
    std::string circuit_path;
    std::size_t shots = 0;
    std::uint64_t seed = 0;
    unsigned workers = 0;
    auto* sample_cmd = app.add_subcommand("sample", "Sample detector and observable bits");
    sample_cmd->add_option("--circuit", circuit_path)->required();
    sample_cmd->add_option("--shots", shots)->required()->check(CLI::PositiveNumber);
    sample_cmd->add_option("--seed", seed);
    sample_cmd->add_option("--workers", workers, "default HEXQEC_WORKERS or hardware concurrency");
    sample_cmd->add_option("--out", out);

    // dem
    bool split_groups = false;
    auto* dem_cmd = app.add_subcommand("dem", "Emit the detector error model of a noisy circuit");
    dem_cmd->add_option("--circuit", circuit_path)->required();
    dem_cmd->add_flag("--split", split_groups, "emit the decomposed per-group models");
    dem_cmd->add_option("--out", out);

    // decode
    std::string samples_path;
    auto* decode_cmd = app.add_subcommand("decode", "Decode sampled detector bits");
    decode_cmd->add_option("--circuit", circuit_path)->required();
    decode_cmd->add_option("--samples", samples_path)->required();
    decode_cmd->add_option("--out", out);

    // sweep
    std::string codes = "surface,tailored,xzzx";
    std::string etas = "0.5";
    std::string ds = "3,5,7";
    std::string p_grid = "0.0010:0.0040:0.0005";
    std::string preset_name;
    auto* sweep_cmd = app.add_subcommand("sweep", "Run a Monte Carlo sweep");
    sweep_cmd->add_option("--preset", preset_name, "desk or paper; explicit options override it");
    sweep_cmd->add_option("--code", codes, "comma list of families");
    sweep_cmd->add_option("--structure", structure, "comma list of structures");
    sweep_cmd->add_option("--eta", etas, "comma list of biases");
    sweep_cmd->add_option("--d", ds, "comma list of distances");
    sweep_cmd->add_option("--p", p_grid, "start:stop:step or comma list");
    sweep_cmd->add_option("--shots", shots, "shots per point");
    sweep_cmd->add_option("--seed", seed);
    sweep_cmd->add_option("--workers", workers);
    sweep_cmd->add_option("--idle", idle);
    sweep_cmd->add_option("--out", out, "output directory")->required();

    // threshold
    std::string in_dir;
    std::size_t bootstrap = 1000;
    auto* threshold_cmd = app.add_subcommand("threshold", "Estimate thresholds from sweep results");
    threshold_cmd->add_option("--in", in_dir, "sweep output directory")->required();
    threshold_cmd->add_option("--bootstrap", bootstrap);
    threshold_cmd->add_option("--seed", seed);
    threshold_cmd->add_option("--out", out);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        return app.exit(e);
    }

    try {
        if (layout_cmd->parsed()) {
            auto layout = build_layout(parse_family(code), parse_structure(structure), d);
            write_output(out, layout_json(layout, ithaca));
        } else if (circuit_cmd->parsed()) {
            auto layout = build_layout(parse_family(code), parse_structure(structure), d);
            auto circuit = build_memory_circuit(layout, rounds < 0 ? d : rounds, parse_basis(basis));
            if (p >= 0) {
                circuit = apply_noise(circuit, BiasedNoise{p, Bias::parse(eta), parse_idle_mode(idle)});
            }
            write_output(out, circuit.str());
        } else if (sample_cmd->parsed()) {
            auto circuit = Circuit::parse(read_file(circuit_path));
            auto batch = sample(circuit, shots, seed, resolve_workers(workers));
            write_output(out, samples_text(batch));
        } else if (dem_cmd->parsed()) {
            auto dem = extract_dem(Circuit::parse(read_file(circuit_path)));
            if (!split_groups) {
                write_output(out, dem.str());
            } else {
                auto parts = split_dem(dem);
                std::string text;
                for (std::size_t g = 0; g < 2; ++g) {
                    text += "# group S" + std::to_string(g + 1) + ": " + std::to_string(parts.decomposed[g]) +
                            " decomposed, " + std::to_string(parts.dropped[g]) + " dropped\n";
                    text += parts.groups[g].str();
                }
                write_output(out, text);
            }
        } else if (decode_cmd->parsed()) {
            auto circuit = Circuit::parse(read_file(circuit_path));
            auto batch = parse_samples_text(read_file(samples_path));
            if (batch.detectors.cols() != circuit.detectors().size()) {
                throw std::invalid_argument("sample detector count does not match the circuit");
            }
            MemoryDecoder decoder(circuit);
            auto corrections = decoder.decode_batch(batch.detectors);
            std::string text;
            const auto n_obs = circuit.observables().size();
            for (const auto& c : corrections) {
                for (std::size_t o = 0; o < n_obs; ++o) {
                    text.push_back(((c.observables >> o) & 1u) != 0 ? '1' : '0');
                }
                text.push_back('\n');
            }
            write_output(out, text);
        } else if (sweep_cmd->parsed()) {
            SweepConfig config;
            if (!preset_name.empty()) {
                auto s = split_list(structure);
                config = preset(preset_name, parse_structure(s.empty() ? "heavy-hex" : s[0]));
            }
            auto given = [&](const char* name) { return sweep_cmd->count(name) > 0; };
            if (preset_name.empty() || given("--code")) {
                config.families.clear();
                for (const auto& f : split_list(codes)) {
                    config.families.push_back(parse_family(f));
                }
            }
            if (preset_name.empty() || given("--structure")) {
                config.structures.clear();
                for (const auto& s : split_list(structure)) {
                    config.structures.push_back(parse_structure(s));
                }
            }
            if (preset_name.empty() || given("--eta")) {
                config.etas.clear();
                for (const auto& e : split_list(etas)) {
                    config.etas.push_back(Bias::parse(e));
                }
            }
            if (preset_name.empty() || given("--d")) {
                config.ds.clear();
                for (const auto& x : split_list(ds)) {
                    config.ds.push_back(std::stoi(x));
                }
            }
            if (preset_name.empty() || given("--p")) {
                config.ps = parse_p_grid(p_grid);
            }
            if (preset_name.empty() || given("--shots")) {
                config.shots = shots == 0 ? 200000 : shots;
            }
            if (preset_name.empty() || given("--seed")) {
                config.seed = seed;
            }
            config.workers = resolve_workers(workers);
            config.idle = parse_idle_mode(idle);
            auto points = sweep(config, true);
            emit_results(out, config, points);
        } else if (threshold_cmd->parsed()) {
            auto points = parse_points_csv(read_file((std::filesystem::path(in_dir) / "results.csv").string()));
            write_output(out, thresholds_csv(estimate_thresholds(points, bootstrap, seed)));
        }
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 1;
    }
    return 0;
}
