// Copyright 2026 The mubqct Authors
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

// Runs the installed command-line tool and checks exit codes and outputs.

#include <gtest/gtest.h>
#include <json.hpp>

#include <sys/wait.h>

#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>

namespace {

struct Run {
    int code = -1;
    std::string out;
};

Run run(const std::string& args, const std::string& env = "") {
    const std::string cmd = env + " " + MUBQCT_CLI_PATH + " " + args + " 2>/dev/null";
    Run r;
    FILE* pipe = popen(cmd.c_str(), "r");
    if (!pipe) return r;
    char buf[4096];
    std::size_t n = 0;
    while ((n = fread(buf, 1, sizeof buf, pipe)) > 0) r.out.append(buf, n);
    const int status = pclose(pipe);
    r.code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
    return r;
}

// Output is a `# config:` line followed by a JSON document.
nlohmann::json body(const Run& r) {
    const auto nl = r.out.find('\n');
    return nlohmann::json::parse(r.out.substr(nl + 1));
}

std::string first_line(const std::string& s) { return s.substr(0, s.find('\n')); }

std::size_t data_rows(const std::string& csv) {
    std::istringstream in(csv);
    std::string line;
    std::size_t rows = 0;
    while (std::getline(in, line)) rows += (!line.empty() && line[0] != '#') ? 1 : 0;
    return rows - 1;  // header
}

std::filesystem::path scratch(const std::string& name) {
    return std::filesystem::temp_directory_path() / ("mubqct_cli_test_" + name);
}

TEST(Cli, MubVerify) {
    const auto ok = run("mub-verify --k 3");
    EXPECT_EQ(ok.code, 0);
    EXPECT_EQ(first_line(ok.out).rfind("# config: command=mub-verify", 0), 0u);
    const auto j = body(ok);
    EXPECT_TRUE(j["passed"].get<bool>());
    EXPECT_LT(j["max_unbiasedness_deviation"].get<double>(), 1e-9);
    EXPECT_LT(j["max_orthonormality_deviation"].get<double>(), 1e-9);
    EXPECT_EQ(run("mub-verify --k 0").code, 1);
    EXPECT_EQ(run("mub-verify").code, 1);
    // Rounding in the d=8 family exceeds an unreasonably tight tolerance.
    EXPECT_EQ(run("mub-verify --k 3 --tol 1e-17").code, 2);
}

TEST(Cli, MubExport) {
    const auto path = scratch("family.txt");
    EXPECT_EQ(run("mub-verify --k 2 --export " + path.string()).code, 0);
    std::ifstream in(path);
    std::string header;
    std::getline(in, header);
    EXPECT_EQ(header, "d=4 bases=5");
    std::filesystem::remove(path);
    EXPECT_EQ(run("mub-verify --k 2 --export /nonexistent/dir/f.txt").code, 4);
}

TEST(Cli, Bounds) {
    const auto oracle = run("bounds --d 16 --m 1 --oracle");
    ASSERT_EQ(oracle.code, 0);
    auto j = body(oracle);
    EXPECT_TRUE(j["oracle_used"].get<bool>());
    EXPECT_TRUE(j["lambda_numeric"].is_number());
    const auto plain = run("bounds --d 1024 --m 4");
    ASSERT_EQ(plain.code, 0);
    j = body(plain);
    EXPECT_FALSE(j["oracle_used"].get<bool>());
    EXPECT_TRUE(j["lambda_numeric"].is_null());
    EXPECT_EQ(run("bounds --d 1024 --m 4 --oracle").code, 3);
}

TEST(Cli, SweepGrid) {
    const auto r = run("sweep --d 128,16384 --L 0:400:5 --profile snspd_lab");
    ASSERT_EQ(r.code, 0);
    EXPECT_EQ(data_rows(r.out), 2u * 81u);
    EXPECT_EQ(first_line(r.out).rfind("# config: command=sweep", 0), 0u);
    const auto parallel = run("sweep --d 128,16384 --L 0:400:5 --profile snspd_lab --jobs 3");
    // Only the echoed jobs value differs.
    EXPECT_EQ(r.out.substr(r.out.find('\n')), parallel.out.substr(parallel.out.find('\n')));
    EXPECT_EQ(run("sweep --d 128 --L 0:10:0").code, 1);
    EXPECT_EQ(run("sweep --d 128 --profile nope").code, 1);
}

TEST(Cli, SimulateIsByteReproducible) {
    const std::string args = "simulate --d 16 --m 4 --L 50 --rounds 100000 --seed 7";
    const auto a = run(args), b = run(args);
    ASSERT_EQ(a.code, 0);
    EXPECT_EQ(a.out, b.out);
    const auto j = body(a);
    EXPECT_EQ(j["config"]["seed"], "7");
    EXPECT_LT(std::abs(j["z"]["p_c"].get<double>()), 5.0);
}

TEST(Cli, SimulateTranscript) {
    const auto path = scratch("transcript.csv");
    ASSERT_EQ(run("simulate --d 4 --rounds 50 --transcript " + path.string()).code, 0);
    std::ifstream in(path);
    std::stringstream buf;
    buf << in.rdbuf();
    EXPECT_EQ(buf.str().rfind("# config: command=simulate", 0), 0u);
    EXPECT_NE(buf.str().find("\nround,x,r,theta,outcome\n"), std::string::npos);
    EXPECT_EQ(data_rows(buf.str()), 50u);
    std::filesystem::remove(path);
}

TEST(Cli, SeedFromEnvironmentAndFlagPrecedence) {
    const auto env = run("simulate --d 4 --rounds 200", "MUBQCT_SEED=99");
    const auto flag = run("simulate --d 4 --rounds 200 --seed 99");
    EXPECT_EQ(env.out, flag.out);
    const auto both = run("simulate --d 4 --rounds 200 --seed 5", "MUBQCT_SEED=99");
    EXPECT_EQ(body(both)["config"]["seed"], "5");
}

TEST(Cli, ConfigFileWithOverride) {
    const auto path = scratch("run.cfg");
    {
        std::ofstream cfg(path);
        cfg << "# comment\nd = 16\nm = 4\nL = 50\nrounds = 1000\nseed = 3\n";
    }
    const auto from_file = run("simulate --config " + path.string());
    ASSERT_EQ(from_file.code, 0);
    auto j = body(from_file);
    EXPECT_EQ(j["config"]["m"], "4");
    EXPECT_EQ(j["config"]["seed"], "3");
    const auto override = run("simulate --config " + path.string() + " --m 2");
    j = body(override);
    EXPECT_EQ(j["config"]["m"], "2");
    EXPECT_EQ(j["config"]["L"], "50");
    {
        std::ofstream cfg(path);
        cfg << "no_such_key = 1\n";
    }
    EXPECT_EQ(run("simulate --config " + path.string()).code, 1);
    std::filesystem::remove(path);
    EXPECT_EQ(run("simulate --config " + path.string()).code, 4);
}

TEST(Cli, Multiparty) {
    const auto r = run("multiparty --d 64 --m 9 --parties 3 --rounds 500");
    ASSERT_EQ(r.code, 0);
    EXPECT_EQ(body(r)["parties"].size(), 3u);
    EXPECT_EQ(run("multiparty --d 64 --m 9 --parties 9 --rounds 10").code, 1);
}

TEST(Cli, OracleReference) {
    const auto r = run("oracle --d 4 --samples 20000");
    ASSERT_EQ(r.code, 0);
    const auto j = body(r);
    EXPECT_NEAR(j["lambda_numeric"].get<double>(), 2.0, 1e-12);
    EXPECT_TRUE(j["detection"]["monte_carlo"]["p_c"].is_number());
    EXPECT_EQ(run("oracle --d 64").code, 3);
}

TEST(Cli, FormatVersionAndUsage) {
    EXPECT_EQ(run("bounds --d 8 --format-version 1").code, 0);
    EXPECT_EQ(run("bounds --d 8 --format-version 2").code, 1);
    EXPECT_EQ(run("").code, 1);
    EXPECT_EQ(run("frobnicate").code, 1);
    EXPECT_EQ(run("--help").code, 0);
}

}  // namespace
