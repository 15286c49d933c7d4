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

#include "qthresh/results_io.h"

#include <fstream>
#include <sstream>
#include <stdexcept>

#include "json.hpp"
#include "qthresh/format.h"

namespace qthresh {

using Json = nlohmann::ordered_json;

const char *const kResultsHeader =
    "seed,mode,decoder,distance,theta,trials,failures,ler,ci_low,ci_high,decoder_failures,decoder_fail_rate,"
    "mean_defects,mean_correction_weight";
const char *const kSummaryHeader = "mode,decoder,distance,points,mean_ler,auc_proxy,max_decoder_fail_rate";

void RunMatrix::validate() const {
    if (config.decoders.empty()) {
        throw std::invalid_argument("no decoder selected");
    }
    if (config.distances.empty()) {
        throw std::invalid_argument("no distance selected");
    }
    for (int d : config.distances) {
        if (d < 3 || d % 2 == 0) {
            throw std::invalid_argument("distances must be odd and >= 3, got " + std::to_string(d));
        }
    }
    config.grid.validate();
    if (config.trials == 0) {
        throw std::invalid_argument("trials must be >= 1");
    }
    if (threshold && bootstrap == 0) {
        throw std::invalid_argument("bootstrap count must be >= 1");
    }
    bool neural = false;
    for (auto decoder : config.decoders) {
        neural |= decoder == DecoderKind::Neural;
    }
    if (neural && !model) {
        throw std::invalid_argument("the neural decoder needs a trained model (--model)");
    }
    if (model) {
        model->validate();
    }
}

std::vector<DecoderAnalysis> analyze(const RunMatrix &matrix, const std::vector<SweepCurve> &curves) {
    std::vector<DecoderAnalysis> out;
    for (auto decoder : matrix.config.decoders) {
        std::vector<SweepCurve> group;
        for (const auto &c : curves) {
            if (c.decoder == decoder) {
                group.push_back(c);
            }
        }
        DecoderAnalysis a;
        a.decoder = decoder;
        try {
            a.crossings = crossing_median(group, matrix.bootstrap, matrix.config.seed);
        } catch (const std::invalid_argument &e) {
            a.crossing_error = e.what();
        }
        try {
            a.collapse = collapse_fit(group, matrix.bootstrap, matrix.config.seed);
        } catch (const std::invalid_argument &e) {
            a.collapse_error = e.what();
        }
        out.push_back(std::move(a));
    }
    return out;
}

std::string results_csv(const std::vector<SweepCurve> &curves) {
    std::ostringstream os;
    os << kResultsHeader << '\n';
    for (const auto &c : curves) {
        for (const auto &p : c.points) {
            os << p.seed << ',' << to_string(p.mode) << ',' << to_string(p.decoder) << ',' << p.distance << ','
               << format_double(p.theta) << ',' << p.trials << ',' << p.failures << ',' << format_double(p.ler) << ','
               << format_double(p.ci_low) << ',' << format_double(p.ci_high) << ',' << p.decoder_failures << ','
               << format_double(p.decoder_fail_rate) << ',' << format_double(p.mean_defects) << ','
               << format_double(p.mean_correction_weight) << '\n';
        }
    }
    return os.str();
}

std::string summary_csv(const std::vector<SweepCurve> &curves) {
    std::ostringstream os;
    os << kSummaryHeader << '\n';
    for (const auto &c : curves) {
        if (c.points.size() < 2) {
            continue;
        }
        const auto s = summarize(c);
        os << to_string(s.mode) << ',' << to_string(s.decoder) << ',' << s.distance << ',' << s.n_points << ','
           << format_double(s.mean_ler) << ',' << format_double(s.auc_proxy) << ','
           << format_double(s.max_decoder_fail_rate) << '\n';
    }
    return os.str();
}

namespace {

std::vector<std::string_view> split(std::string_view line, char sep) {
    std::vector<std::string_view> out;
    size_t start = 0;
    while (true) {
        const size_t pos = line.find(sep, start);
        out.push_back(line.substr(start, pos - start));
        if (pos == std::string_view::npos) {
            return out;
        }
        start = pos + 1;
    }
}

Json config_echo(const RunMatrix &m) {
    Json decoders = Json::array();
    for (auto d : m.config.decoders) {
        decoders.push_back(std::string(to_string(d)));
    }
    const auto thetas = m.config.grid.values();
    Json j;
    j["mode"] = std::string(to_string(m.config.mode));
    j["decoders"] = decoders;
    j["distances"] = m.config.distances;
    j["sweep_start"] = m.config.grid.start;
    j["sweep_stop"] = thetas.back();
    j["sweep_step"] = m.config.grid.step;
    j["sweep_count"] = m.config.grid.count;
    j["trials"] = m.config.trials;
    j["seed"] = m.config.seed;
    j["threshold"] = m.threshold;
    j["bootstrap"] = m.bootstrap;
    if (m.model) {
        j["model"] = {{"phi", m.model->phi},
                      {"alpha_min", m.model->alpha_min},
                      {"alpha_max", m.model->alpha_max},
                      {"mode", std::string(to_string(m.model->mode))},
                      {"theta", m.model->theta},
                      {"distance", m.model->distance},
                      {"n_samples", m.model->n_samples},
                      {"seed", m.model->seed}};
    } else {
        j["model"] = nullptr;
    }
    return j;
}

Json interval(double lo, double hi) { return Json::array({lo, hi}); }

Json analysis_json(const DecoderAnalysis &a) {
    Json j;
    j["decoder"] = std::string(to_string(a.decoder));
    if (a.crossings) {
        const auto &c = *a.crossings;
        Json pairs = Json::array();
        for (const auto &p : c.pairwise) {
            pairs.push_back({{"d_a", p.d_a},
                             {"d_b", p.d_b},
                             {"theta_c", p.theta_c},
                             {"method", std::string(to_string(p.method))},
                             {"min_abs_delta", p.min_abs_delta}});
        }
        Json cj;
        cj["pairwise"] = pairs;
        cj["available"] = c.available;
        cj["median"] = c.available ? Json(c.median) : Json(nullptr);
        cj["interval"] = c.available ? interval(c.interval_low, c.interval_high) : Json(nullptr);
        cj["n_bootstrap"] = c.n_bootstrap;
        cj["n_bootstrap_used"] = c.n_bootstrap_used;
        j["crossings"] = cj;
    } else {
        j["crossings"] = {{"error", a.crossing_error}};
    }
    if (a.collapse) {
        const auto &f = *a.collapse;
        j["collapse"] = {{"p_c", f.p_c},
                         {"nu", f.nu},
                         {"cost", f.cost},
                         {"interval", interval(f.interval_low, f.interval_high)},
                         {"n_bootstrap", f.n_bootstrap},
                         {"p_c_pinned", f.p_c_pinned},
                         {"nu_pinned", f.nu_pinned},
                         {"search_box",
                          {{"p_c", interval(f.search_box[0], f.search_box[1])},
                           {"nu", interval(f.search_box[2], f.search_box[3])}}}};
    } else {
        j["collapse"] = {{"error", a.collapse_error}};
    }
    return j;
}

void write_file(const std::filesystem::path &path, const std::string &content) {
    std::ofstream f(path, std::ios::binary | std::ios::trunc);
    f << content;
    f.close();
    if (!f) {
        throw std::runtime_error("cannot write " + path.string());
    }
}

}  // namespace

std::string threshold_json(const RunMatrix &matrix, const std::vector<DecoderAnalysis> &analyses) {
    Json j;
    j["tool"] = {{"name", "qthresh"}, {"version", QTHRESH_VERSION}};
    j["config"] = config_echo(matrix);
    Json list = Json::array();
    for (const auto &a : analyses) {
        list.push_back(analysis_json(a));
    }
    j["analyses"] = list;
    return j.dump(2) + "\n";
}

std::vector<TrialBatchResult> parse_results_csv(const std::string &text) {
    std::istringstream is(text);
    std::string line;
    if (!std::getline(is, line) || line != kResultsHeader) {
        throw std::invalid_argument("results.csv: unexpected header");
    }
    std::vector<TrialBatchResult> out;
    while (std::getline(is, line)) {
        if (line.empty()) {
            continue;
        }
        const auto f = split(line, ',');
        if (f.size() != 14) {
            throw std::invalid_argument("results.csv: expected 14 fields, got " + std::to_string(f.size()));
        }
        TrialBatchResult r;
        r.seed = parse_integer<uint64_t>(f[0]);
        r.mode = parse_noise_mode(f[1]);
        r.decoder = parse_decoder(f[2]);
        r.distance = parse_integer<int>(f[3]);
        r.theta = parse_double(f[4]);
        r.trials = parse_integer<uint64_t>(f[5]);
        r.failures = parse_integer<uint64_t>(f[6]);
        r.ler = parse_double(f[7]);
        r.ci_low = parse_double(f[8]);
        r.ci_high = parse_double(f[9]);
        r.decoder_failures = parse_integer<uint64_t>(f[10]);
        r.decoder_fail_rate = parse_double(f[11]);
        r.mean_defects = parse_double(f[12]);
        r.mean_correction_weight = parse_double(f[13]);
        out.push_back(r);
    }
    return out;
}

RunMatrix parse_config_echo(const std::string &json_text) {
    const auto root = Json::parse(json_text);
    const auto &c = root.at("config");
    RunMatrix m;
    m.config.mode = parse_noise_mode(c.at("mode").get<std::string>());
    for (const auto &d : c.at("decoders")) {
        m.config.decoders.push_back(parse_decoder(d.get<std::string>()));
    }
    m.config.distances = c.at("distances").get<std::vector<int>>();
    m.config.grid.start = c.at("sweep_start").get<double>();
    m.config.grid.step = c.at("sweep_step").get<double>();
    m.config.grid.count = c.at("sweep_count").get<size_t>();
    m.config.trials = c.at("trials").get<uint64_t>();
    m.config.seed = c.at("seed").get<uint64_t>();
    m.threshold = c.at("threshold").get<bool>();
    m.bootstrap = c.at("bootstrap").get<size_t>();
    if (!c.at("model").is_null()) {
        const auto &mj = c.at("model");
        GuidanceModel g;
        g.phi = mj.at("phi").get<std::array<double, 4>>();
        g.alpha_min = mj.at("alpha_min").get<double>();
        g.alpha_max = mj.at("alpha_max").get<double>();
        g.mode = parse_noise_mode(mj.at("mode").get<std::string>());
        g.theta = mj.at("theta").get<double>();
        g.distance = mj.at("distance").get<int>();
        g.n_samples = mj.at("n_samples").get<uint64_t>();
        g.seed = mj.at("seed").get<uint64_t>();
        m.model = g;
    }
    m.validate();
    return m;
}

void emit_results(const std::filesystem::path &out, const RunMatrix &matrix, const std::vector<SweepCurve> &curves,
                  const std::vector<DecoderAnalysis> &analyses) {
    std::error_code ec;
    std::filesystem::create_directories(out, ec);
    if (ec) {
        throw std::runtime_error("cannot create output directory " + out.string() + ": " + ec.message());
    }
    write_file(out / "results.csv", results_csv(curves));
    write_file(out / "summary.csv", summary_csv(curves));
    write_file(out / "threshold.json", threshold_json(matrix, analyses));
}

}  // namespace qthresh
