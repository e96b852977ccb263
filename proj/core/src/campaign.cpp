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

#include "mmhbf/campaign.hpp"

#include "mmhbf/errors.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <condition_variable>
#include <exception>
#include <fstream>
#include <mutex>
#include <numbers>
#include <sstream>
#include <thread>

namespace mmhbf {

namespace {

UraConfig tp_for(const CampaignConfig &cfg, const SectorLayout &layout, std::size_t tp) {
    UraConfig c = cfg.tp_array;
    c.boresight_azimuth = layout.sector_boresights[tp];
    return c;
}

UraConfig ue_for(const CampaignConfig &cfg, const UserPosition &pos) {
    UraConfig c = cfg.ue_array;
    c.boresight_azimuth = pos.orientation;
    c.role = ArrayRole::UserEquipment;
    return c;
}

std::size_t resolve_workers(std::size_t requested, std::size_t tasks) {
    std::size_t n = requested;
    if (n == 0)
        n = std::max(1u, std::thread::hardware_concurrency());
    return std::max<std::size_t>(1, std::min(n, tasks));
}

} // namespace

SystemDrop generate_drop(const CampaignConfig &cfg, std::size_t index) {
    const SectorLayout layout = cfg.layout();
    const ChannelProfile profile = cfg.profile();

    SystemDrop drop;
    drop.index = index;
    Rng placement = make_rng(cfg.seed, {index, kPlacementStream, 0});
    drop.users = drop_users(layout, cfg.users_per_cell, placement);

    SystemChannels &ch = drop.channels;
    ch.users_per_cell = cfg.users_per_cell;
    ch.cells = layout.cell_count();
    ch.links.resize(ch.user_count() * ch.cells);
    drop.codebooks.reserve(ch.user_count());
    for (std::size_t u = 0; u < ch.user_count(); ++u) {
        const UserPosition &pos = drop.users.positions[u];
        const LinkGeometry geometry = link_geometry(layout, pos);
        const UraConfig ue = ue_for(cfg, pos);
        for (std::size_t tp = 0; tp < ch.cells; ++tp) {
            Rng rng = make_rng(cfg.seed, {index, tp, u});
            ch.at(u, tp) = generate_channel(tp_for(cfg, layout, tp), ue, geometry, profile, cfg.budget.carrier_ghz, rng);
        }
        const std::size_t serving = ch.serving_tp(u);
        drop.codebooks.push_back(build_codebooks(ch.at(u, serving), tp_for(cfg, layout, serving), ue));
    }
    return drop;
}

void design_drop(const CampaignConfig &cfg, SystemDrop &drop, std::span<const Scheme> schemes) {
    const SchemeContext ctx{drop.channels,
                            drop.codebooks,
                            cfg.chains(),
                            cfg.streams_per_user,
                            cfg.budget.tx_power_w(),
                            cfg.budget.noise_power_w()};
    drop.weights.clear();
    for (const Scheme s : schemes)
        drop.weights.emplace_back(s, design_weights(s, ctx));
}

std::vector<UserResult> CampaignResult::records_for(Scheme scheme) const {
    std::vector<UserResult> out;
    for (const UserResult &r : records)
        if (r.scheme == scheme)
            out.push_back(r);
    return out;
}

CampaignResult run_campaign(const CampaignConfig &cfg, const CampaignOptions &options) {
    cfg.validate();
    const std::vector<Scheme> schemes = cfg.active_schemes();
    if (schemes.empty())
        throw ConfigError("no scheme left to run after masking gmr");

    const std::size_t n_drops = cfg.realizations;
    const std::size_t n_workers = resolve_workers(options.workers.value_or(cfg.workers), n_drops);
    const double tx_w = cfg.budget.tx_power_w();
    const double noise_w = cfg.budget.noise_power_w();

    std::ofstream dump;
    if (options.dump_channels) {
        dump.open(*options.dump_channels, std::ios::binary | std::ios::trunc);
        if (!dump)
            throw IoError("cannot open channel dump '" + options.dump_channels->string() + "'");
        write_channel_dump_header(dump);
    }

    std::vector<std::vector<UserResult>> per_drop(n_drops);
    std::vector<CampaignDiagnostics> per_diag(n_drops);
    std::vector<std::size_t> per_count(n_drops, 0);

    std::atomic<std::size_t> next{0};
    std::atomic<bool> failed{false};
    std::exception_ptr first_error;
    std::mutex mutex;
    std::condition_variable turn;
    std::size_t next_to_write = 0;

    auto work = [&] {
        for (;;) {
            const std::size_t d = next.fetch_add(1);
            if (d >= n_drops || failed.load())
                return;
            try {
                SystemDrop drop = generate_drop(cfg, d);
                per_count[d] = drop.channels.links.size();
                if (dump.is_open()) {
                    bool ok = true;
                    {
                        std::unique_lock lock(mutex);
                        turn.wait(lock, [&] { return next_to_write == d || failed.load(); });
                        if (failed.load())
                            return;
                        write_channel_dump(dump, d, drop.channels);
                        ok = static_cast<bool>(dump);
                        ++next_to_write;
                        turn.notify_all();
                    }
                    if (!ok)
                        throw IoError("write to channel dump failed");
                }
                design_drop(cfg, drop, schemes);
                for (const auto &[scheme, weights] : drop.weights) {
                    for (const HybridWeights &w : weights) {
                        per_diag[d].reused_rf_columns += w.reused_columns;
                        per_diag[d].unconverged_slnr += w.unconverged ? 1 : 0;
                    }
                    auto rec = evaluate_users(drop.channels, weights, scheme, d, cfg.seed, tx_w, noise_w);
                    for (const UserResult &r : rec)
                        per_diag[d].regularized_records += r.regularized ? 1 : 0;
                    per_drop[d].insert(per_drop[d].end(), rec.begin(), rec.end());
                }
            } catch (...) {
                std::lock_guard lock(mutex);
                if (!first_error)
                    first_error = std::current_exception();
                failed.store(true);
                turn.notify_all();
                return;
            }
        }
    };

    if (n_workers == 1) {
        work();
    } else {
        std::vector<std::thread> pool;
        pool.reserve(n_workers);
        for (std::size_t i = 0; i < n_workers; ++i)
            pool.emplace_back(work);
        for (auto &t : pool)
            t.join();
    }
    if (first_error)
        std::rethrow_exception(first_error);

    CampaignResult result;
    result.schemes = schemes;
    for (std::size_t d = 0; d < n_drops; ++d) {
        result.records.insert(result.records.end(), per_drop[d].begin(), per_drop[d].end());
        result.channel_matrices += per_count[d];
        result.diagnostics.reused_rf_columns += per_diag[d].reused_rf_columns;
        result.diagnostics.regularized_records += per_diag[d].regularized_records;
        result.diagnostics.unconverged_slnr += per_diag[d].unconverged_slnr;
    }
    return result;
}

CoverageEstimate coverage_radius(const CampaignConfig &cfg, double target_snr_db, double fraction,
                                 std::size_t samples, double max_radius) {
    cfg.validate();
    if (!(fraction > 0.0 && fraction < 1.0) || samples == 0)
        throw ConfigError("coverage_radius: fraction must be in (0, 1) and samples >= 1");
    const ChannelProfile profile = cfg.profile();
    const double tx_w = cfg.budget.tx_power_w();
    const double noise_w = cfg.budget.noise_power_w();

    // Common random numbers across radii keep the quantile curve smooth.
    std::vector<double> azimuth(samples), orientation(samples);
    for (std::size_t i = 0; i < samples; ++i) {
        Rng r = make_rng(cfg.seed, {i, kPlacementStream, 1});
        std::uniform_real_distribution<double> unit(0.0, 1.0);
        azimuth[i] = 30.0 - 60.0 + 120.0 * unit(r);
        orientation[i] = 360.0 * unit(r);
    }

    auto edge_snr_quantile = [&](double radius) {
        SectorLayout layout = cfg.layout();
        layout.cell_radius = radius;
        UraConfig tp = cfg.tp_array;
        tp.boresight_azimuth = layout.sector_boresights[0];
        std::vector<double> snr_db(samples);
        for (std::size_t i = 0; i < samples; ++i) {
            UserPosition pos;
            pos.position = {radius * std::cos(azimuth[i] * std::numbers::pi / 180.0),
                            radius * std::sin(azimuth[i] * std::numbers::pi / 180.0)};
            pos.orientation = orientation[i];
            const LinkGeometry g = link_geometry(layout, pos);
            Rng rng = make_rng(cfg.seed, {i, 0, 1});
            const ChannelRealization link =
                generate_channel(tp, ue_for(cfg, pos), g, profile, cfg.budget.carrier_ghz, rng);
            const double gain = eigenvalue_profile(link.h, 1).front();
            snr_db[i] = 10.0 * std::log10(tx_w * gain / (link.path_loss_linear * noise_w));
        }
        std::sort(snr_db.begin(), snr_db.end());
        const double h = (1.0 - fraction) * static_cast<double>(samples - 1);
        const auto lo = static_cast<std::size_t>(std::floor(h));
        const std::size_t hi = std::min(lo + 1, samples - 1);
        return snr_db[lo] + (h - static_cast<double>(lo)) * (snr_db[hi] - snr_db[lo]);
    };

    double lo = std::nextafter(cfg.min_distance, max_radius);
    double hi = max_radius;
    if (edge_snr_quantile(hi) >= target_snr_db)
        return {hi, edge_snr_quantile(hi)};
    if (edge_snr_quantile(lo) < target_snr_db)
        return {lo, edge_snr_quantile(lo)};
    for (int it = 0; it < 30 && hi - lo > 0.1; ++it) {
        const double mid = 0.5 * (lo + hi);
        if (edge_snr_quantile(mid) >= target_snr_db)
            lo = mid;
        else
            hi = mid;
    }
    return {lo, edge_snr_quantile(lo)};
}

} // namespace mmhbf
