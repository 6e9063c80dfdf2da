// Copyright 2026 The mubtomo Authors
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


#include "mubtomo/cli.hpp"

#include <filesystem>
#include <fstream>
#include <set>
#include <sstream>

#include "gtest/gtest.h"

#include "oracles.hpp"

using namespace mubtomo;
namespace fs = std::filesystem;

namespace {

struct CliResult {
    int code = -1;
    std::string out;
    std::string err;
};

CliResult run_cli(std::vector<std::string> args, const std::string &stdin_text = "") {
    args.insert(args.begin(), "mubtomo");
    std::vector<const char *> argv;
    for (const auto &a : args) {
        argv.push_back(a.c_str());
    }
    std::istringstream in(stdin_text);
    std::ostringstream out, err;
    CliResult r;
    r.code = cli::run(static_cast<int>(argv.size()), argv.data(), {in, out, err});
    r.out = out.str();
    r.err = err.str();
    return r;
}

std::string slurp(const fs::path &p) {
    std::ifstream f(p, std::ios::binary);
    std::stringstream s;
    s << f.rdbuf();
    return s.str();
}

void spit(const fs::path &p, const std::string &text) {
    std::ofstream(p, std::ios::binary) << text;
}

/// Runs each test body inside a fresh temporary directory.
class CliTest : public ::testing::Test {
   protected:
    void SetUp() override {
        old_ = fs::current_path();
        dir_ = fs::temp_directory_path() /
               ("mubtomo_cli_" + std::string(::testing::UnitTest::GetInstance()->current_test_info()->name()));
        fs::remove_all(dir_);
        fs::create_directories(dir_);
        fs::current_path(dir_);
    }
    void TearDown() override {
        fs::current_path(old_);
        fs::remove_all(dir_);
    }

    fs::path old_, dir_;
};

io::Json parse(const std::string &text) {
    return io::Json::parse(text);
}

const char *kQubitZ = R"({"schema": "mubtomo.state", "dim": 2, "ket": [1, 0]})";

}  // namespace

TEST(io, writer_uses_17_digits_and_flat_rows) {
    io::Json doc;
    doc["x"] = 0.1;
    doc["row"] = io::Json::array({1.0 / 3, -0.0, 2});
    std::string text = io::to_text(doc);
    ASSERT_NE(text.find("0.10000000000000001"), std::string::npos);
    ASSERT_NE(text.find("[0.33333333333333331, 0, 2]"), std::string::npos);
}

TEST(io, matrix_roundtrip_is_exact) {
    SplitMix64 rng(51);
    ComplexMatrix m = random_operator(3, rng);
    io::Json j = io::Json::parse(io::to_text(io::matrix_to_json(m)));
    ASSERT_EQ(io::matrix_from_json(j, 3, "m"), m);
}

TEST(io, mubset_roundtrip_is_exact) {
    MubSet set = construct_mub(5);
    io::Json j = io::Json::parse(io::to_text(io::mubset_to_json(set, {})));
    ASSERT_EQ(io::mubset_from_json(j), set);
}

TEST(io, record_roundtrip) {
    MeasurementRecord rec = sample(DensityMatrix::maximally_mixed(3), construct_mub(3), 100, 9);
    ASSERT_EQ(io::record_from_json(io::record_to_json(rec)), rec);
}

TEST(io, parse_errors) {
    ASSERT_THROW(io::state_matrix_from_json(parse(R"({"dim": 2})")), ParseError);
    ASSERT_THROW(io::state_matrix_from_json(parse(R"({"dim": 2, "ket": [1, 0, 0]})")), ParseError);
    ASSERT_THROW(io::state_matrix_from_json(parse(R"({"dim": 2, "ket": [1, 0], "matrix": []})")), ParseError);
    ASSERT_THROW(io::state_matrix_from_json(parse(R"({"schema": "mubtomo.tomogram", "dim": 2, "ket": [1, 0]})")),
                 ParseError);
    ASSERT_THROW(io::tomogram_from_json(parse(R"({"dim": 2, "probs": [[1, 0], [1, 0]]})")), ParseError);
    ASSERT_THROW(io::sic_symbol_from_json(parse(R"({"values": [1, 2, 3]})")), ParseError);
    ASSERT_THROW(io::complex_from_json(parse(R"([1, 2, 3])"), "c"), ParseError);
}

TEST(io, job_config_rejects_unknown_keys) {
    io::Json job = parse(R"({"command": "construct", "dimension": 3, "colour": "blue"})");
    ASSERT_THROW(cli::JobConfig::from_json(job), ParseError);
    io::Json tol = parse(R"({"command": "construct", "dimension": 3, "tolerances": {"herm": 1e-9, "speed": 1}})");
    ASSERT_THROW(cli::JobConfig::from_json(tol), ParseError);
}

TEST(io, job_config_validation) {
    cli::JobConfig job = cli::JobConfig::from_json(
        parse(R"({"command": "simulate", "state": "s.json", "mub": "m.json", "shots": 10, "seed": 3,
                  "repair": "project", "tolerances": {"psd": 1e-8}})"));
    ASSERT_EQ(job.command, cli::Command::Simulate);
    ASSERT_EQ(job.repair, Repair::Project);
    ASSERT_EQ(job.tolerances.psd, 1e-8);
    ASSERT_NO_THROW(job.validate());
    job.shots = 0;
    ASSERT_THROW(job.validate(), ParseError);
    ASSERT_THROW(cli::JobConfig::from_json(parse(R"({"command": "construct", "dimension": -3})")), ParseError);
    ASSERT_THROW(cli::JobConfig::from_json(parse(R"({"command": "explode"})")), ParseError);
    ASSERT_THROW(cli::JobConfig::from_json(parse(R"({"command": "verify", "level": "medium"})")), ParseError);
}

TEST_F(CliTest, construct_writes_file) {
    CliResult r = run_cli({"construct", "--dim", "3", "--out", "mub3.json"});
    ASSERT_EQ(r.code, 0) << r.err;
    io::Json doc = parse(slurp("mub3.json"));
    ASSERT_EQ(doc["schema"], "mubtomo.mubset");
    ASSERT_EQ(doc["schema_version"], 1);
    ASSERT_EQ(doc["dim"], 3);
    ASSERT_EQ(doc["tool_version"], io::kToolVersion);
    ASSERT_EQ(doc["invocation"][0], "construct");
    ASSERT_EQ(doc["bases"].size(), 4u);
    for (const auto &basis : doc["bases"]) {
        ASSERT_EQ(basis.size(), 3u);
    }
}

TEST_F(CliTest, construct_unsupported_dimension) {
    CliResult r = run_cli({"construct", "--dim", "6"});
    ASSERT_EQ(r.code, 2);
    ASSERT_NE(r.err.find("prime"), std::string::npos);
}

TEST_F(CliTest, construct_qubit_matches_pauli_projectors) {
    CliResult r = run_cli({"construct", "--dim", "2"});
    ASSERT_EQ(r.code, 0);
    MubSet set = io::mubset_from_json(parse(r.out));
    ProjectorSet p = projectors(set);
    ProjectorSet q = qubit::qubit_mub_projectors();
    for (std::size_t x = 0; x < 6; ++x) {
        ASSERT_LE(oracle::max_diff(p[x], q[x]), 1e-15);
    }
}

TEST_F(CliTest, tomogram_examples) {
    ASSERT_EQ(run_cli({"construct", "--dim", "2", "--out", "mub2.json"}).code, 0);
    ASSERT_EQ(run_cli({"construct", "--dim", "3", "--out", "mub3.json"}).code, 0);
    spit("z.json", kQubitZ);
    CliResult z = run_cli({"tomogram", "--state", "z.json", "--mub", "mub2.json"});
    ASSERT_EQ(z.code, 0) << z.err;
    Tomogram t = io::tomogram_from_json(parse(z.out));
    std::vector<double> expected = {0.5, 0.5, 0.5, 0.5, 1, 0};
    for (std::size_t x = 0; x < 6; ++x) {
        ASSERT_NEAR(t[x], expected[x], 1e-15);
    }

    spit("mixed.json", R"({"dim": 3, "matrix": [[0.3333333333333333, 0, 0], [0, 0.3333333333333333, 0],
                                                [0, 0, 0.3333333333333334]]})");
    CliResult m = run_cli({"tomogram", "--state", "mixed.json", "--mub", "mub3.json"});
    ASSERT_EQ(m.code, 0) << m.err;
    Tomogram uniform = io::tomogram_from_json(parse(m.out));
    for (double p : uniform.probs()) {
        ASSERT_NEAR(p, 1.0 / 3, 1e-15);
    }
}

TEST_F(CliTest, tomogram_reads_stdin) {
    ASSERT_EQ(run_cli({"construct", "--dim", "2", "--out", "mub2.json"}).code, 0);
    CliResult r = run_cli({"tomogram", "--state", "-", "--mub", "mub2.json"}, kQubitZ);
    ASSERT_EQ(r.code, 0) << r.err;
    ASSERT_EQ(parse(r.out)["probs"][2][0], 1.0);
}

TEST_F(CliTest, input_errors_exit_3) {
    ASSERT_EQ(run_cli({"construct", "--dim", "2", "--out", "mub2.json"}).code, 0);
    spit("broken.json", "{\"dim\": 2, \"ket\": [1, 0");
    CliResult r = run_cli({"tomogram", "--state", "broken.json", "--mub", "mub2.json"});
    ASSERT_EQ(r.code, 3);
    ASSERT_NE(r.err.find("broken.json"), std::string::npos);
    ASSERT_EQ(run_cli({"tomogram", "--state", "missing.json", "--mub", "mub2.json"}).code, 3);
    ASSERT_EQ(run_cli({"construct"}).code, 3);
    ASSERT_EQ(run_cli({"frobnicate"}).code, 3);
    ASSERT_EQ(run_cli({"simulate", "--state", "x", "--mub", "y", "--shots", "0"}).code, 3);
    // Dimension mismatch between state and MUB family.
    spit("q3.json", R"({"dim": 3, "ket": [1, 0, 0]})");
    ASSERT_EQ(run_cli({"tomogram", "--state", "q3.json", "--mub", "mub2.json"}).code, 3);
}

TEST_F(CliTest, invalid_input_data_exit_4) {
    ASSERT_EQ(run_cli({"construct", "--dim", "2", "--out", "mub2.json"}).code, 0);
    spit("notpsd.json", R"({"dim": 2, "matrix": [[1.5, 0], [0, -0.5]]})");
    ASSERT_EQ(run_cli({"tomogram", "--state", "notpsd.json", "--mub", "mub2.json"}).code, 4);

    io::Json bad = parse(slurp("mub2.json"));
    bad["bases"][1] = bad["bases"][0];
    spit("badmub.json", io::to_text(bad));
    spit("z.json", kQubitZ);
    ASSERT_EQ(run_cli({"tomogram", "--state", "z.json", "--mub", "badmub.json"}).code, 4);
}

TEST_F(CliTest, reconstruct_roundtrip_and_diagnostics) {
    ASSERT_EQ(run_cli({"construct", "--dim", "3", "--out", "mub3.json"}).code, 0);
    SplitMix64 rng(52);
    DensityMatrix rho = random_density_matrix(3, rng);
    spit("rho.json", io::to_text(io::state_to_json(rho.matrix(), {})));
    ASSERT_EQ(run_cli({"tomogram", "--state", "rho.json", "--mub", "mub3.json", "--out", "t.json"}).code, 0);
    CliResult r = run_cli({"reconstruct", "--tomogram", "t.json", "--mub", "mub3.json"});
    ASSERT_EQ(r.code, 0) << r.err;
    io::Json doc = parse(r.out);
    ASSERT_LE(oracle::max_diff(io::state_matrix_from_json(doc), rho.matrix()), 1e-10);
    ASSERT_TRUE(doc["diagnostics"]["positive"].get<bool>());
    ASSERT_TRUE(doc["diagnostics"].contains("min_eigenvalue"));
}

TEST_F(CliTest, reconstruct_noisy_and_invalid_tomograms) {
    ASSERT_EQ(run_cli({"construct", "--dim", "2", "--out", "mub2.json"}).code, 0);
    spit("noisy.json", R"({"dim": 2, "probs": [[0.9, 0.1], [0.2, 0.8], [0.95, 0.05]]})");
    CliResult noisy = run_cli({"reconstruct", "--tomogram", "noisy.json", "--mub", "mub2.json"});
    ASSERT_EQ(noisy.code, 0);
    ASSERT_FALSE(parse(noisy.out)["diagnostics"]["positive"].get<bool>());

    spit("off.json", R"({"dim": 2, "probs": [[0.9, 0.2], [0.2, 0.8], [0.95, 0.05]]})");
    ASSERT_EQ(run_cli({"reconstruct", "--tomogram", "off.json", "--mub", "mub2.json"}).code, 4);
    // A global tolerance override widens the acceptance window.
    ASSERT_EQ(run_cli({"--tol", "0.05", "reconstruct", "--tomogram", "off.json", "--mub", "mub2.json"}).code, 0);
}

TEST_F(CliTest, simulate_is_byte_identical_across_runs) {
    ASSERT_EQ(run_cli({"construct", "--dim", "2", "--out", "mub2.json"}).code, 0);
    spit("z.json", kQubitZ);
    std::vector<std::string> args = {"simulate", "--state", "z.json", "--mub", "mub2.json", "--shots", "1000",
                                      "--seed",   "11",      "--repair", "project", "--out", "a.json"};
    ASSERT_EQ(run_cli(args).code, 0);
    args.back() = "b.json";
    ASSERT_EQ(run_cli(args).code, 0);
    std::string a = slurp("a.json");
    std::string b = slurp("b.json");
    ASSERT_NE(a.find("\"b.json\""), 0u);
    // The output path is part of the recorded invocation; everything else matches.
    ASSERT_EQ(a.substr(a.find("\"dim\"")), b.substr(b.find("\"dim\"")));
    ASSERT_EQ(run_cli({"simulate", "--state", "z.json", "--mub", "mub2.json", "--shots", "1000", "--seed", "11"}).out,
              run_cli({"simulate", "--state", "z.json", "--mub", "mub2.json", "--shots", "1000", "--seed", "11"}).out);
}

TEST_F(CliTest, simulate_many_shots_and_repair) {
    ASSERT_EQ(run_cli({"construct", "--dim", "2", "--out", "mub2.json"}).code, 0);
    spit("z.json", kQubitZ);
    CliResult r = run_cli({"simulate", "--state", "z.json", "--mub", "mub2.json", "--shots", "1000000", "--seed", "42",
                     "--repair", "project"});
    ASSERT_EQ(r.code, 0) << r.err;
    io::Json doc = parse(r.out);
    ASSERT_EQ(doc["record"]["seed"], 42);
    ComplexMatrix est = io::matrix_from_json(doc["estimate"]["matrix"], 2, "estimate");
    ASSERT_NO_THROW(DensityMatrix{est});
    ASSERT_LE(trace_distance(est, ComplexMatrix{{1, 0}, {0, 0}}), 0.01);
}

TEST_F(CliTest, verify_passes_and_records_counts) {
    CliResult r2 = run_cli({"verify", "--dim", "2", "--level", "exhaustive"});
    ASSERT_EQ(r2.code, 0) << r2.err;
    ASSERT_TRUE(parse(r2.out)["passed"].get<bool>());

    CliResult r5 = run_cli({"verify", "--dim", "5", "--level", "quick", "--seed", "7"});
    ASSERT_EQ(r5.code, 0) << r5.err;
    io::Json doc = parse(r5.out);
    bool saw_sampled = false;
    for (const auto &c : doc["checks"]) {
        ASSERT_TRUE(c["passed"].get<bool>()) << c["name"];
        if (c["sampled"].get<bool>()) {
            saw_sampled = true;
            ASSERT_EQ(c["tuple_count"], 10000);
        }
    }
    ASSERT_TRUE(saw_sampled);
    ASSERT_EQ(doc["samples"], 10000);
}

TEST_F(CliTest, verify_injected_fault_names_argmax) {
    CliResult r = run_cli({"verify", "--dim", "2", "--inject-fault"});
    ASSERT_EQ(r.code, 1);
    ASSERT_NE(r.err.find("kernel_cross_check_ordinary"), std::string::npos);
    ASSERT_NE(r.err.find("(0, 1, 2)"), std::string::npos);
    ASSERT_FALSE(parse(r.out)["passed"].get<bool>());
}

TEST_F(CliTest, verify_unsupported_dimension) {
    ASSERT_EQ(run_cli({"verify", "--dim", "9"}).code, 2);
}

TEST_F(CliTest, intertwine_examples) {
    spit("sic.json", R"({"values": [0.25, 0.25, 0.25, 0.25]})");
    CliResult r = run_cli({"intertwine", "--direction", "sic2mub", "--symbol", "sic.json", "--out", "mub.json"});
    ASSERT_EQ(r.code, 0) << r.err;
    MubSymbol f = io::mub_symbol_from_json(parse(slurp("mub.json")));
    for (std::size_t x = 0; x < 6; ++x) {
        ASSERT_NEAR(std::abs(f[x] - 0.5), 0, 1e-15);
    }
    CliResult back = run_cli({"intertwine", "--direction", "mub2sic", "--symbol", "mub.json"});
    ASSERT_EQ(back.code, 0) << back.err;
    qubit::SicSymbol g = io::sic_symbol_from_json(parse(back.out));
    for (Complex v : g) {
        ASSERT_NEAR(std::abs(v - 0.25), 0, 1e-12);
    }

    spit("short.json", R"({"values": [0.25, 0.25, 0.5]})");
    ASSERT_EQ(run_cli({"intertwine", "--direction", "sic2mub", "--symbol", "short.json"}).code, 3);
    ASSERT_EQ(run_cli({"intertwine", "--direction", "sideways", "--symbol", "sic.json"}).code, 3);
}

TEST_F(CliTest, run_job_file) {
    spit("job.json", R"({"schema": "mubtomo.job", "command": "construct", "dimension": 3, "output": "m.json"})");
    ASSERT_EQ(run_cli({"run", "job.json"}).code, 0);
    ASSERT_EQ(parse(slurp("m.json"))["dim"], 3);
    spit("bad.json", R"({"command": "construct", "dimension": 3, "extra": 1})");
    ASSERT_EQ(run_cli({"run", "bad.json"}).code, 3);
    spit("six.json", R"({"command": "construct", "dimension": 6})");
    ASSERT_EQ(run_cli({"run", "six.json"}).code, 2);
}

TEST_F(CliTest, every_command_is_deterministic) {
    ASSERT_EQ(run_cli({"construct", "--dim", "3", "--out", "mub3.json"}).code, 0);
    ASSERT_EQ(run_cli({"construct", "--dim", "2", "--out", "mub2.json"}).code, 0);
    spit("z.json", kQubitZ);
    spit("sic.json", R"({"values": [0.4, 0.1, 0.3, 0.2]})");
    ASSERT_EQ(run_cli({"tomogram", "--state", "z.json", "--mub", "mub2.json", "--out", "t.json"}).code, 0);
    std::vector<std::vector<std::string>> commands = {
        {"construct", "--dim", "5"},
        {"tomogram", "--state", "z.json", "--mub", "mub2.json"},
        {"reconstruct", "--tomogram", "t.json", "--mub", "mub2.json"},
        {"simulate", "--state", "z.json", "--mub", "mub2.json", "--shots", "500", "--seed", "3"},
        {"verify", "--dim", "3", "--seed", "1"},
        {"intertwine", "--direction", "sic2mub", "--symbol", "sic.json"},
    };
    for (const auto &c : commands) {
        CliResult a = run_cli(c);
        CliResult b = run_cli(c);
        ASSERT_EQ(a.code, 0) << c[0] << ": " << a.err;
        ASSERT_EQ(a.out, b.out) << c[0];
    }
}

TEST(golden, outputs_match_published_examples) {
    const fs::path golden = MUBTOMO_GOLDEN_DIR;
    const fs::path old = fs::current_path();
    fs::current_path(golden);
    std::ifstream cases(golden / "cases.txt");
    std::string line;
    std::size_t count = 0;
    std::set<std::string> schemas;
    while (std::getline(cases, line)) {
        if (line.empty() || line[0] == '#') {
            continue;
        }
        const auto tab = line.find('\t');
        const std::string name = line.substr(0, tab);
        std::istringstream words(line.substr(tab + 1));
        std::vector<std::string> args;
        for (std::string w; words >> w;) {
            args.push_back(w);
        }
        CliResult r = run_cli(args);
        EXPECT_EQ(r.code, 0) << name << ": " << r.err;
        EXPECT_EQ(r.out, slurp(golden / name)) << name;
        schemas.insert(parse(r.out)["schema"].get<std::string>());
        ++count;
    }
    // The MUB family input is itself a construct output.
    EXPECT_EQ(run_cli({"construct", "--dim", "2"}).out, slurp(golden / "inputs" / "mub2.json"));
    fs::current_path(old);
    ASSERT_GE(count, 8u);
    for (const char *s : {io::schema::kMubSet, io::schema::kState, io::schema::kTomogram, io::schema::kSimulation,
                          io::schema::kVerification, io::schema::kMubSymbol, io::schema::kSicSymbol}) {
        EXPECT_TRUE(schemas.count(s)) << s;
    }
}
