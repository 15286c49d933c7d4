// Copyright 2026 The qthresh Authors
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

#include "cli.h"

#include <filesystem>
#include <sstream>

#include "gtest/gtest.h"

using namespace qthresh;

namespace {

std::vector<std::string> split_args(const std::string &line) {
    std::istringstream is(line);
    std::vector<std::string> out;
    std::string tok;
    while (is >> tok) out.push_back(tok);
    return out;
}

int exit_code(const std::string &line) {
    std::ostringstream out, err;
    return run_cli(split_args(line), out, err);
}

}  // namespace

TEST(cli, pauli_baseline_row) {
    const auto cmd = parse_cli(split_args(
        "--mode pauli --decoder mwpm --decoder unionfind --distances 5 --sweep-start 0.03 --sweep-stop 0.12 "
        "--sweep-step 0.01 --trials 3000"));
    EXPECT_EQ(cmd.kind, CliCommand::Kind::Run);
    EXPECT_EQ(cmd.matrix.config.grid.count, 10u);
    EXPECT_EQ(cmd.matrix.config.trials, 3000u);
    EXPECT_EQ(cmd.matrix.config.distances, std::vector<int>{5});
    EXPECT_EQ(cmd.matrix.config.seed, 1337u);
    EXPECT_EQ(cmd.matrix.bootstrap, 100u);
    EXPECT_EQ(cmd.matrix.config.decoders, (std::vector<DecoderKind>{DecoderKind::Mwpm, DecoderKind::UnionFind}));
}

TEST(cli, hybrid_threshold_row) {
    const auto cmd = parse_cli(split_args(
        "--distances 3,5,7 --mode hybrid --trials 2000 --decoder mwpm --sweep-start 0.05 --sweep-stop 0.6 "
        "--sweep-step 0.05 --threshold"));
    EXPECT_EQ(cmd.matrix.config.mode, NoiseMode::Hybrid);
    EXPECT_EQ(cmd.matrix.config.distances, (std::vector<int>{3, 5, 7}));
    EXPECT_EQ(cmd.matrix.config.grid.count, 12u);
    EXPECT_TRUE(cmd.matrix.threshold);
}

TEST(cli, config_errors) {
    const std::string base = "--decoder mwpm --distances 3 --sweep-start 0.1 --sweep-stop 0.2 --trials 10 ";
    EXPECT_THROW(parse_cli(split_args(base + "--sweep-step 0")), ConfigError);
    EXPECT_THROW(parse_cli(split_args(base + "--sweep-step 0.1 --bogus")), ConfigError);
    EXPECT_THROW(parse_cli(split_args(base + "--sweep-step 0.1x")), ConfigError);
    EXPECT_THROW(parse_cli(split_args(base + "--sweep-step 0.1 --decoder neural")), ConfigError);
    EXPECT_THROW(parse_cli(split_args(base + "--sweep-step 0.1 --decoder bp")), ConfigError);
    EXPECT_THROW(parse_cli(split_args(base + "--sweep-step 0.1 --distances 4")), ConfigError);
    EXPECT_THROW(parse_cli(split_args(base + "--sweep-step 0.1 --mode gaussian")), ConfigError);
    EXPECT_THROW(parse_cli(split_args("--distances 3 --sweep-start 0.1 --sweep-stop 0.2 --sweep-step 0.1 --trials 10")),
                 ConfigError);
    EXPECT_THROW(parse_cli(split_args("--replay x.json --trials 5")), ConfigError);
    EXPECT_NO_THROW(parse_cli(split_args(base + "--sweep-step 0.1")));
}

TEST(cli, subcommands) {
    auto cmd = parse_cli(split_args("train --out m.txt --samples 2000"));
    EXPECT_EQ(cmd.kind, CliCommand::Kind::Train);
    EXPECT_EQ(cmd.training.n_samples, 2000u);
    EXPECT_EQ(cmd.training.mode, NoiseMode::Hybrid);
    EXPECT_EQ(cmd.training.theta, 0.45);
    EXPECT_THROW(parse_cli(split_args("train")), ConfigError);
    cmd = parse_cli(split_args("channel --sigma 0.4"));
    EXPECT_EQ(cmd.kind, CliCommand::Kind::Channel);
    EXPECT_EQ(parse_cli(split_args("--help")).kind, CliCommand::Kind::Help);
}

TEST(cli, exit_codes) {
    const auto dir = std::filesystem::temp_directory_path() / "qthresh_cli_test";
    EXPECT_EQ(exit_code("--decoder mwpm --distances 3 --sweep-start 0.1 --sweep-stop 0.2 --sweep-step 0 --trials 5"),
              kExitConfig);
    EXPECT_EQ(exit_code("--decoder neural --model /nonexistent --distances 3 --sweep-start 0.1 --sweep-stop 0.2 "
                        "--sweep-step 0.1 --trials 5"),
              kExitConfig);
    EXPECT_EQ(exit_code("--decoder mwpm --distances 3 --sweep-start 0.1 --sweep-stop 0.2 --sweep-step 0.1 --trials 5 "
                        "--out " + dir.string()),
              kExitOk);
    EXPECT_TRUE(std::filesystem::exists(dir / "results.csv"));
    EXPECT_EQ(exit_code("--replay " + (dir / "threshold.json").string() + " --out " + dir.string()), kExitOk);
    EXPECT_EQ(exit_code("--decoder mwpm --distances 3 --sweep-start 0.1 --sweep-stop 0.2 --sweep-step 0.1 --trials 5 "
                        "--out /proc/qthresh_denied"),
              kExitRuntime);
    std::filesystem::remove_all(dir);
}
