// SPDX-License-Identifier: Apache-2.0
//
// mmhbf: hybrid beamforming simulator for multi-cell millimeter-wave MIMO
// Copyright (C) 2026 The mmhbf authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
// http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.
// ------------------------------------------------------------------------

// Command-line front end: `mmhbf simulate` runs a campaign and writes a
// report directory, `mmhbf coverage` estimates the cell-edge coverage radius.

#include "mmhbf/mmhbf.hpp"

#include "CLI11.hpp"

#include <fmt/format.h>

#include <chrono>
#include <cstdio>
#include <optional>
#include <string>

namespace {

struct SimulateArgs {
    std::string config;
    std::optional<std::string> schemes;
    std::optional<double> radius;
    std::optional<std::size_t> users;
    std::optional<std::size_t> streams;
    std::optional<std::size_t> realizations;
    std::optional<std::uint64_t> seed;
    std::optional<std::size_t> workers;
    std::optional<std::string> profile;
    std::string out = "results";
    std::string format = "json";
    std::string dump_channels;
    bool quiet = false;
};

struct CoverageArgs {
    std::string config;
    std::optional<std::string> profile;
    double target_snr_db = 5.0;
    double fraction = 0.95;
    std::size_t samples = 400;
    double max_radius = 1000.0;
};

mmhbf::CampaignConfig load_with_overrides(const SimulateArgs &a) {
    mmhbf::CampaignConfig cfg = mmhbf::load_config(a.config);
    if (a.schemes)
        cfg.set_schemes(*a.schemes);
    if (a.radius)
        cfg.cell_radius = *a.radius;
    if (a.users)
        cfg.users_per_cell = *a.users;
    if (a.streams)
        cfg.streams_per_user = *a.streams;
    if (a.realizations)
        cfg.realizations = *a.realizations;
    if (a.seed)
        cfg.seed = *a.seed;
    if (a.workers)
        cfg.workers = *a.workers;
    if (a.profile)
        cfg.channel_profile = *a.profile;
    cfg.validate();
    return cfg;
}

int simulate(const SimulateArgs &a) {
    const mmhbf::CampaignConfig cfg = load_with_overrides(a);
    mmhbf::CampaignOptions options;
    if (!a.dump_channels.empty())
        options.dump_channels = a.dump_channels;
    const auto format = mmhbf::parse_report_format(a.format);

    const auto start = std::chrono::steady_clock::now();
    const mmhbf::CampaignResult result = mmhbf::run_campaign(cfg, options);
    const double seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    mmhbf::emit_report(result, cfg, format, a.out);

    if (result.diagnostics.reused_rf_columns > 0)
        fmt::print(stderr, "warning: {} RF chain assignments reused a codebook column (fewer rays than chains)\n",
                   result.diagnostics.reused_rf_columns);
    if (result.diagnostics.regularized_records > 0)
        fmt::print(stderr, "warning: {} records needed a ridge on the whitening matrix\n",
                   result.diagnostics.regularized_records);
    if (result.diagnostics.unconverged_slnr > 0)
        fmt::print(stderr, "warning: {} SLNR users hit the fixed-point iteration cap; last iterate kept\n",
                   result.diagnostics.unconverged_slnr);
    if (a.quiet)
        return 0;

    fmt::print("{} realizations, {} channel matrices, {:.1f} s\n", cfg.realizations, result.channel_matrices, seconds);
    fmt::print("{:<9} {:>8} {:>9} {:>9} {:>9} {:>9}\n", "scheme", "records", "mean", "p10", "p50", "p90");
    for (const auto &s : mmhbf::summarize(result))
        fmt::print("{:<9} {:>8} {:>9.3f} {:>9.3f} {:>9.3f} {:>9.3f}\n", mmhbf::to_string(s.scheme), s.records,
                   s.mean_se, s.p10, s.p50, s.p90);
    fmt::print("report written to {}\n", a.out);
    return 0;
}

int coverage(const CoverageArgs &a) {
    mmhbf::CampaignConfig cfg = mmhbf::load_config(a.config);
    if (a.profile)
        cfg.channel_profile = *a.profile;
    const auto est = mmhbf::coverage_radius(cfg, a.target_snr_db, a.fraction, a.samples, a.max_radius);
    fmt::print("coverage radius {:.1f} m ({}th-percentile edge SNR {:.2f} dB, target {:.2f} dB)\n", est.radius_m,
               100.0 * (1.0 - a.fraction), est.edge_snr_db, a.target_snr_db);
    return 0;
}

} // namespace

int main(int argc, char **argv) {
    CLI::App app{"mmhbf: hybrid beamforming Monte Carlo simulator for multi-cell mmWave MIMO"};
    app.require_subcommand(1);

    SimulateArgs sim;
    auto *s = app.add_subcommand("simulate", "run a Monte Carlo campaign and write a report");
    s->add_option("--config", sim.config, "campaign config (JSON)")->required()->check(CLI::ExistingFile);
    s->add_option("--schemes", sim.schemes, "comma-separated subset of baseline,lsp,slnr,gmr, or 'all'");
    s->add_option("--radius", sim.radius, "cell radius in meters");
    s->add_option("--users", sim.users, "users per cell");
    s->add_option("--streams", sim.streams, "streams per user");
    s->add_option("--realizations", sim.realizations, "number of drops");
    s->add_option("--seed", sim.seed, "campaign seed");
    s->add_option("--workers", sim.workers, "worker threads (0: hardware concurrency)");
    s->add_option("--profile", sim.profile, "channel profile: many-weak-clusters | few-strong-lobes");
    s->add_option("--out", sim.out, "report directory")->capture_default_str();
    s->add_option("--format", sim.format, "summary format: json | csv")->capture_default_str();
    s->add_option("--dump-channels", sim.dump_channels, "write every channel matrix to this CSV file");
    s->add_flag("--quiet", sim.quiet, "suppress the summary table");

    CoverageArgs cov;
    auto *c = app.add_subcommand("coverage", "estimate the radius meeting a cell-edge SNR target");
    c->add_option("--config", cov.config, "campaign config (JSON)")->required()->check(CLI::ExistingFile);
    c->add_option("--profile", cov.profile, "channel profile override");
    c->add_option("--target-snr", cov.target_snr_db, "edge SNR target in dB")->capture_default_str();
    c->add_option("--fraction", cov.fraction, "fraction of edge users meeting the target")->capture_default_str();
    c->add_option("--samples", cov.samples, "edge users sampled per radius")->capture_default_str();
    c->add_option("--max-radius", cov.max_radius, "search upper bound in meters")->capture_default_str();

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp &e) {
        return app.exit(e);
    } catch (const CLI::ParseError &e) {
        app.exit(e);
        return static_cast<int>(mmhbf::ErrorCategory::Configuration);
    }

    try {
        if (*s)
            return simulate(sim);
        return coverage(cov);
    } catch (const mmhbf::Error &e) {
        fmt::print(stderr, "error: {}\n", e.what());
        return static_cast<int>(e.category());
    } catch (const std::exception &e) {
        fmt::print(stderr, "internal error: {}\n", e.what());
        return static_cast<int>(mmhbf::ErrorCategory::Internal);
    }
}
