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

#include <algorithm>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>

#include "gtest/gtest.h"
#include "hexqec/harness.hpp"
#include "json.hpp"

namespace fs = std::filesystem;

namespace {

class cli : public ::testing::Test {
  protected:
    void SetUp() override {
        dir_ = fs::temp_directory_path() /
               ("hexqec_cli_" + std::string(::testing::UnitTest::GetInstance()->current_test_info()->name()));
        fs::remove_all(dir_);
        fs::create_directories(dir_);
    }
    void TearDown() override { fs::remove_all(dir_); }

    int run(const std::string& args) {
        std::string cmd = std::string(HEXQEC_CLI_PATH) + " " + args + " >" + (dir_ / "stdout").string() + " 2>" +
                          (dir_ / "stderr").string();
        int status = std::system(cmd.c_str());
        return WIFEXITED(status) ? WEXITSTATUS(status) : -1;
    }

    std::string read(const std::string& name) const {
        std::ifstream f(dir_ / name);
        std::ostringstream ss;
        ss << f.rdbuf();
        return ss.str();
    }

    std::string path(const std::string& name) const { return (dir_ / name).string(); }

    fs::path dir_;
};

}  // namespace

TEST_F(cli, layout_emits_json) {
    ASSERT_EQ(run("layout --code xzzx --structure heavy-hex --d 3 --ithaca-map"), 0) << read("stderr");
    auto j = nlohmann::json::parse(read("stdout"));
    EXPECT_EQ(j["family"], "xzzx");
    EXPECT_EQ(j["qubits"].size(), 61u);
}

TEST_F(cli, circuit_sample_decode_pipeline) {
    ASSERT_EQ(run("circuit --code tailored --structure heavy-hex --d 3 --basis l2 --p 0.002 --eta inf --out " +
                  path("c.txt")),
              0)
        << read("stderr");
    ASSERT_EQ(run("sample --circuit " + path("c.txt") + " --shots 300 --seed 4 --workers 2 --out " + path("s.txt")),
              0)
        << read("stderr");
    auto samples = read("s.txt");
    EXPECT_EQ(samples.substr(0, samples.find('\n')), "300 36 1");
    ASSERT_EQ(run("decode --circuit " + path("c.txt") + " --samples " + path("s.txt") + " --out " + path("p.txt")),
              0)
        << read("stderr");
    auto predictions = read("p.txt");
    EXPECT_EQ(std::count(predictions.begin(), predictions.end(), '\n'), 300);
    ASSERT_EQ(run("dem --circuit " + path("c.txt")), 0);
    EXPECT_NE(read("stdout").find("error "), std::string::npos);
    ASSERT_EQ(run("dem --split --circuit " + path("c.txt")), 0);
    EXPECT_NE(read("stdout").find("# group S2"), std::string::npos);
}

TEST_F(cli, sweep_and_threshold) {
    ASSERT_EQ(run("sweep --code surface --structure lattice --eta 0.5 --d 3,5 --p 0.002:0.004:0.001 --shots 200 "
                  "--seed 3 --workers 1 --out " +
                  path("out")),
              0)
        << read("stderr");
    auto csv = read("out/results.csv");
    EXPECT_EQ(std::count(csv.begin(), csv.end(), '\n'), 1 + 3 * 2);
    EXPECT_TRUE(fs::exists(dir_ / "out" / "results.json"));
    ASSERT_EQ(run("threshold --in " + path("out") + " --bootstrap 20 --out " + path("t.csv")), 0) << read("stderr");
    auto t = read("t.csv");
    EXPECT_EQ(t.rfind("family,structure,eta,p_th", 0), 0u);
    EXPECT_NE(t.find("surface,lattice,0.5,"), std::string::npos);
}

TEST_F(cli, errors_exit_nonzero) {
    EXPECT_NE(run("layout --code nope --structure lattice --d 3"), 0);
    EXPECT_NE(read("stderr").find("error"), std::string::npos);
    EXPECT_NE(run("layout --code surface --structure lattice --d 4"), 0);
    EXPECT_NE(run("sample --circuit " + path("missing.txt") + " --shots 10"), 0);
    EXPECT_NE(run("bogus"), 0);
    EXPECT_NE(run(""), 0);
}

TEST_F(cli, worker_env_fallback_is_validated) {
    ASSERT_EQ(run("circuit --code surface --structure lattice --d 3 --p 0.01 --out " + path("c.txt")), 0);
    EXPECT_EQ(run("sample --circuit " + path("c.txt") + " --shots 10 --out " + path("a.txt")), 0);
    std::string bad = "HEXQEC_WORKERS=abc ";
    std::string cmd = bad + HEXQEC_CLI_PATH + " sample --circuit " + path("c.txt") + " --shots 10 >/dev/null 2>&1";
    EXPECT_NE(std::system(cmd.c_str()), 0);
}
