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

#include <algorithm>
#include <fstream>
#include <iostream>
#include <sstream>
#include <thread>

#include "CLI11.hpp"
#include "qthresh/format.h"
#include "qthresh/montecarlo.h"
#include "qthresh/noise.h"

namespace qthresh {

namespace {

const std::vector<std::string> kMatrixFlags = {"--mode",       "--decoder",    "--distances", "--sweep-start",
                                               "--sweep-stop", "--sweep-step", "--trials",    "--seed",
                                               "--threshold",  "--bootstrap",  "--model"};

std::string read_text(const std::string &path) {
    std::ifstream f(path, std::ios::binary);
    if (!f) {
        throw ConfigError("cannot read " + path);
    }
    std::ostringstream os;
    os << f.rdbuf();
    return os.str();
}

}  // namespace

CliCommand parse_cli(const std::vector<std::string> &args) {
    CliCommand cmd;
    CLI::App app{"Surface-code threshold sweeps under Pauli and digitized GKP noise.", "qthresh"};
    app.set_version_flag("--version", QTHRESH_VERSION);

    std::string mode = "pauli";
    std::vector<std::string> decoders;
    std::vector<int> distances;
    double start = 0;
    double stop = 0;
    double step = 0;
    uint64_t trials = 0;
    uint64_t seed = 1337;
    bool threshold = false;
    size_t bootstrap = 100;
    unsigned workers = std::max(1u, std::thread::hardware_concurrency());

    app.add_option("--mode", mode, "Noise model: pauli, hybrid or bitflip")->check(CLI::IsMember({"pauli", "hybrid", "bitflip"}));
    app.add_option("--decoder", decoders, "mwpm, unionfind or neural; repeatable")->delimiter(',');
    app.add_option("--distances", distances, "Comma-separated odd code distances")->delimiter(',');
    app.add_option("--sweep-start", start, "First noise strength");
    app.add_option("--sweep-stop", stop, "Last noise strength (inclusive)");
    app.add_option("--sweep-step", step, "Grid spacing");
    app.add_option("--trials", trials, "Trials per point");
    app.add_option("--seed", seed, "Base seed")->capture_default_str();
    app.add_flag("--threshold", threshold, "Write crossing and collapse analysis");
    app.add_option("--bootstrap", bootstrap, "Bootstrap resamples")->capture_default_str();
    app.add_option("--model", cmd.model_path, "Guidance model for the neural decoder");
    app.add_option("--replay", cmd.replay_path, "Rerun the config echoed in a threshold.json");
    app.add_option("--out", cmd.out, "Output directory")->capture_default_str();
    app.add_option("--workers", workers, "Worker threads (results do not depend on it)")->check(CLI::PositiveNumber);

    auto *train = app.add_subcommand("train", "Fit a guidance model for the neural decoder");
    std::string train_mode = "hybrid";
    train->add_option("--mode", train_mode, "Noise model")->check(CLI::IsMember({"pauli", "hybrid", "bitflip"}))->capture_default_str();
    train->add_option("--theta", cmd.training.theta, "Noise strength")->capture_default_str();
    train->add_option("--distance", cmd.training.distance, "Code distance")->capture_default_str();
    train->add_option("--samples", cmd.training.n_samples, "Sampled syndromes")->capture_default_str();
    train->add_option("--seed", cmd.training.seed, "Seed")->capture_default_str();
    train->add_option("--epochs", cmd.training.epochs, "Gradient steps")->capture_default_str();
    train->add_option("--step", cmd.training.step, "Gradient step size")->capture_default_str();
    train->add_option("--alpha-min", cmd.training.alpha_min, "Lower clip")->capture_default_str();
    train->add_option("--alpha-max", cmd.training.alpha_max, "Upper clip")->capture_default_str();
    train->add_option("--out", cmd.model_out, "Model file to write")->required();

    auto *channel = app.add_subcommand("channel", "Estimate the digitized GKP Pauli channel");
    channel->add_option("--sigma", cmd.sigma, "Displacement standard deviation")->required();
    channel->add_option("--samples", cmd.channel_samples, "Samples")->capture_default_str();
    channel->add_option("--seed", cmd.channel_seed, "Seed")->capture_default_str();
    app.require_subcommand(0, 1);

    std::vector<std::string> reversed(args.rbegin(), args.rend());
    try {
        app.parse(reversed);
    } catch (const CLI::CallForHelp &) {
        cmd.kind = CliCommand::Kind::Help;
        cmd.help_text = app.help();
        return cmd;
    } catch (const CLI::CallForAllHelp &) {
        cmd.kind = CliCommand::Kind::Help;
        cmd.help_text = app.help("", CLI::AppFormatMode::All);
        return cmd;
    } catch (const CLI::Success &) {
        cmd.kind = CliCommand::Kind::Help;
        cmd.help_text = std::string(QTHRESH_VERSION) + "\n";
        return cmd;
    } catch (const CLI::ParseError &e) {
        throw ConfigError(e.what());
    }

    auto given = [&](const std::string &flag) { return app.get_option(flag)->count() > 0; };
    try {
        if (train->parsed()) {
            cmd.kind = CliCommand::Kind::Train;
            cmd.training.mode = parse_noise_mode(train_mode);
            if (cmd.training.n_samples < 1000) {
                throw ConfigError("train needs --samples >= 1000");
            }
            return cmd;
        }
        if (channel->parsed()) {
            cmd.kind = CliCommand::Kind::Channel;
            if (!(cmd.sigma >= 0) || cmd.channel_samples == 0) {
                throw ConfigError("channel needs sigma >= 0 and samples >= 1");
            }
            return cmd;
        }
        cmd.workers = workers;
        if (!cmd.replay_path.empty()) {
            for (const auto &flag : kMatrixFlags) {
                if (given(flag)) {
                    throw ConfigError(flag + " cannot be combined with --replay");
                }
            }
            cmd.kind = CliCommand::Kind::Replay;
            return cmd;
        }
        cmd.kind = CliCommand::Kind::Run;
        for (const char *flag : {"--decoder", "--distances", "--sweep-start", "--sweep-stop", "--sweep-step", "--trials"}) {
            if (!given(flag)) {
                throw ConfigError(std::string(flag) + " is required");
            }
        }
        auto &m = cmd.matrix;
        m.config.mode = parse_noise_mode(mode);
        for (const auto &d : decoders) {
            m.config.decoders.push_back(parse_decoder(d));
        }
        m.config.distances = distances;
        m.config.grid = SweepGrid::from_range(start, stop, step);
        m.config.trials = trials;
        m.config.seed = seed;
        m.threshold = threshold;
        m.bootstrap = bootstrap;
        const bool neural = std::find(m.config.decoders.begin(), m.config.decoders.end(), DecoderKind::Neural) !=
                            m.config.decoders.end();
        if (neural && cmd.model_path.empty()) {
            throw ConfigError("the neural decoder needs --model (train one with `qthresh train`)");
        }
        if (!neural && !cmd.model_path.empty()) {
            throw ConfigError("--model only applies to the neural decoder");
        }
        if (neural) {
            // Placeholder so validate() passes; run_cli loads the real file.
            m.model = GuidanceModel::identity();
        }
        m.validate();
    } catch (const std::invalid_argument &e) {
        throw ConfigError(e.what());
    }
    return cmd;
}

namespace {

int execute_matrix(const CliCommand &cmd, const RunMatrix &matrix, std::ostream &out) {
    RunOptions options;
    options.workers = cmd.workers;
    if (matrix.model) {
        options.model = &*matrix.model;
    }
    const auto curves = run_matrix(matrix.config, options);
    std::vector<DecoderAnalysis> analyses;
    if (matrix.threshold) {
        analyses = analyze(matrix, curves);
    }
    emit_results(cmd.out, matrix, curves, analyses);
    for (const auto &c : curves) {
        const auto s = summarize(c);
        out << to_string(c.decoder) << " d=" << c.distance << " mean_ler=" << format_double(s.mean_ler)
            << " auc=" << format_double(s.auc_proxy) << '\n';
    }
    for (const auto &a : analyses) {
        out << to_string(a.decoder) << " crossing=";
        if (a.crossings && a.crossings->available) {
            out << format_double(a.crossings->median);
        } else {
            out << "n/a";
        }
        out << " collapse_p_c=";
        if (a.collapse) {
            out << format_double(a.collapse->p_c) << (a.collapse->p_c_pinned ? " (pinned)" : "");
        } else {
            out << "n/a";
        }
        out << '\n';
    }
    out << "wrote " << cmd.out << '\n';
    return kExitOk;
}

}  // namespace

int run_cli(const std::vector<std::string> &args, std::ostream &out, std::ostream &err) {
    CliCommand cmd;
    RunMatrix matrix;
    try {
        cmd = parse_cli(args);
        matrix = cmd.matrix;
        if (cmd.kind == CliCommand::Kind::Replay) {
            matrix = parse_config_echo(read_text(cmd.replay_path));
        } else if (cmd.kind == CliCommand::Kind::Run && !cmd.model_path.empty()) {
            matrix.model = load_model(cmd.model_path);
        }
    } catch (const ConfigError &e) {
        err << "error: " << e.what() << '\n';
        return kExitConfig;
    } catch (const std::exception &e) {
        err << "error: " << e.what() << '\n';
        return kExitConfig;
    }

    try {
        switch (cmd.kind) {
            case CliCommand::Kind::Help:
                out << cmd.help_text;
                return kExitOk;
            case CliCommand::Kind::Train: {
                const auto report = train_guidance(cmd.training);
                save_model(report.model, cmd.model_out);
                out << "train_examples=" << report.train_examples << " heldout_examples=" << report.heldout_examples
                    << " train_accuracy=" << format_double(report.train_accuracy)
                    << " heldout_accuracy=" << format_double(report.heldout_accuracy) << '\n';
                out << "phi=" << format_double(report.model.phi[0]) << ' ' << format_double(report.model.phi[1]) << ' '
                    << format_double(report.model.phi[2]) << ' ' << format_double(report.model.phi[3]) << '\n';
                out << "wrote " << cmd.model_out << '\n';
                return kExitOk;
            }
            case CliCommand::Kind::Channel: {
                const auto est = estimate_effective_channel(cmd.sigma, cmd.channel_samples, cmd.channel_seed);
                out << "sigma=" << format_double(cmd.sigma) << " p_i=" << format_double(est.p_i)
                    << " p_x=" << format_double(est.p_x) << " p_z=" << format_double(est.p_z)
                    << " p_y=" << format_double(est.p_y)
                    << " analytic_flip=" << format_double(analytic_flip_rate(cmd.sigma)) << '\n';
                return kExitOk;
            }
            case CliCommand::Kind::Run:
            case CliCommand::Kind::Replay:
                return execute_matrix(cmd, matrix, out);
        }
    } catch (const std::exception &e) {
        err << "error: " << e.what() << '\n';
        return kExitRuntime;
    }
    return kExitRuntime;
}

}  // namespace qthresh
