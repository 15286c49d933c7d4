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

#ifndef QTHRESH_TOOLS_CLI_H
#define QTHRESH_TOOLS_CLI_H

#include <iosfwd>
#include <stdexcept>
#include <string>
#include <vector>

#include "qthresh/neural.h"
#include "qthresh/results_io.h"

namespace qthresh {

enum ExitCode : int { kExitOk = 0, kExitConfig = 1, kExitRuntime = 2 };

/// Bad flags or an invalid flag combination.
struct ConfigError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct CliCommand {
    enum class Kind { Run, Replay, Train, Channel, Help } kind = Kind::Run;
    std::string help_text;

    // run / replay
    RunMatrix matrix;
    std::string model_path;
    std::string replay_path;
    std::string out = "qthresh-out";
    unsigned workers = 1;

    // train
    TrainingConfig training;
    std::string model_out;

    // channel
    double sigma = 0;
    uint64_t channel_samples = 1000000;
    uint64_t channel_seed = 1337;
};

/// Parse arguments (without the program name). Model files are not read
/// here, so the neural/--model check happens in run_cli.
CliCommand parse_cli(const std::vector<std::string> &args);

/// Full entry point: parse, execute, report. Returns an ExitCode.
int run_cli(const std::vector<std::string> &args, std::ostream &out, std::ostream &err);

}  // namespace qthresh

#endif
