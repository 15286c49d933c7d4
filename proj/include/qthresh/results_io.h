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

#ifndef QTHRESH_RESULTS_IO_H
#define QTHRESH_RESULTS_IO_H

#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include "qthresh/analysis.h"
#include "qthresh/montecarlo.h"
#include "qthresh/neural.h"

namespace qthresh {

/// Everything needed to reproduce a run. Worker count and output location
/// are deliberately not part of it: they never change the artifacts.
struct RunMatrix {
    MatrixConfig config;
    bool threshold = false;
    size_t bootstrap = 100;
    std::optional<GuidanceModel> model;  // required iff a neural decoder is listed

    void validate() const;
};

/// Crossing and collapse analysis for one decoder over its distances.
struct DecoderAnalysis {
    DecoderKind decoder = DecoderKind::Mwpm;
    std::optional<CrossingMedian> crossings;
    std::optional<CollapseFit> collapse;
    std::string crossing_error;
    std::string collapse_error;
};

std::vector<DecoderAnalysis> analyze(const RunMatrix &matrix, const std::vector<SweepCurve> &curves);

extern const char *const kResultsHeader;
extern const char *const kSummaryHeader;

std::string results_csv(const std::vector<SweepCurve> &curves);
std::string summary_csv(const std::vector<SweepCurve> &curves);
std::string threshold_json(const RunMatrix &matrix, const std::vector<DecoderAnalysis> &analyses);

/// Inverse of results_csv. Diagnostics without a column are left at zero.
std::vector<TrialBatchResult> parse_results_csv(const std::string &text);

/// Recover the RunMatrix from a threshold.json config echo.
RunMatrix parse_config_echo(const std::string &json_text);

/// Write results.csv, summary.csv and threshold.json under `out`.
/// Throws std::runtime_error when the directory or a file cannot be written.
void emit_results(const std::filesystem::path &out, const RunMatrix &matrix, const std::vector<SweepCurve> &curves,
                  const std::vector<DecoderAnalysis> &analyses);

}  // namespace qthresh

#endif
