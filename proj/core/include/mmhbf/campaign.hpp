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

#ifndef MMHBF_CAMPAIGN_HPP
#define MMHBF_CAMPAIGN_HPP

#include "mmhbf/beamforming.hpp"
#include "mmhbf/channel.hpp"
#include "mmhbf/config.hpp"
#include "mmhbf/metrics.hpp"

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <optional>
#include <utility>
#include <vector>

namespace mmhbf {

// One Monte Carlo drop: placement, all K*L*L links, and per-scheme weights.
struct SystemDrop {
    std::size_t index = 0;
    UserDrop users;
    SystemChannels channels;
    std::vector<Codebooks> codebooks; // per user, from the serving link
    std::vector<std::pair<Scheme, std::vector<HybridWeights>>> weights;
};

// Placement and channels only; weights left empty.
SystemDrop generate_drop(const CampaignConfig &cfg, std::size_t index);

// Fills drop.weights for each scheme in order.
void design_drop(const CampaignConfig &cfg, SystemDrop &drop, std::span<const Scheme> schemes);

struct CampaignDiagnostics {
    std::size_t reused_rf_columns = 0;  // degenerate codebooks
    std::size_t regularized_records = 0; // SE whitening needed a ridge
    std::size_t unconverged_slnr = 0;    // users that kept the last SLNR iterate
};

struct CampaignResult {
    std::vector<Scheme> schemes;
    // Ordered by (drop, scheme position, user).
    std::vector<UserResult> records;
    std::size_t channel_matrices = 0;
    CampaignDiagnostics diagnostics;

    std::vector<UserResult> records_for(Scheme scheme) const;
};

struct CampaignOptions {
    std::optional<std::size_t> workers;                // overrides cfg.workers
    std::optional<std::filesystem::path> dump_channels; // CSV dump of every link
};

/// Runs cfg.realizations drops. Each drop draws from streams derived from
/// (cfg.seed, drop index), so results do not depend on the worker count.
CampaignResult run_campaign(const CampaignConfig &cfg, const CampaignOptions &options = {});

struct CoverageEstimate {
    double radius_m = 0.0;
    double edge_snr_db = 0.0; // at the returned radius, the given quantile
};

/// Largest cell radius at which `fraction` of users placed on the cell edge
/// see a single-user SNR P_t sigma_1^2 / (PL N_0) of at least target_snr_db.
/// sigma_1 is the top singular value of the small-scale channel.
CoverageEstimate coverage_radius(const CampaignConfig &cfg, double target_snr_db = 5.0, double fraction = 0.95,
                                 std::size_t samples = 400, double max_radius = 1000.0);

} // namespace mmhbf

#endif
