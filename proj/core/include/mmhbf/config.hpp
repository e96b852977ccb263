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

#ifndef MMHBF_CONFIG_HPP
#define MMHBF_CONFIG_HPP

#include "mmhbf/array_geometry.hpp"
#include "mmhbf/beamforming.hpp"
#include "mmhbf/channel.hpp"
#include "mmhbf/metrics.hpp"

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <string>
#include <vector>

namespace mmhbf {

/// Everything a campaign needs. Defaults follow the 28 GHz, 100 MHz,
/// 256 x 8 element, 4 + 4 RF chain reference system.
///
/// When `schemes_explicit` is false the scheme list is "all" and GMR is
/// silently masked whenever streams_per_user != ue_rf_chains. An explicit
/// GMR request under that mismatch is a configuration error.
struct CampaignConfig {
    LinkBudget budget{};
    double cell_radius = 50.0;
    double min_distance = 10.0;
    double tp_height = 10.0;
    double ue_height = 1.5;

    std::size_t users_per_cell = 3;
    std::size_t streams_per_user = 2;
    std::size_t tp_rf_chains = 4;
    std::size_t ue_rf_chains = 4;

    UraConfig tp_array = UraConfig::transmission_point();
    UraConfig ue_array = UraConfig::user_equipment();

    std::string channel_profile = "few-strong-lobes";
    std::vector<Scheme> schemes{Scheme::Baseline, Scheme::Lsp, Scheme::Slnr, Scheme::Gmr};
    bool schemes_explicit = false;

    std::size_t realizations = 50;
    std::uint64_t seed = 1;
    std::size_t workers = 0; // 0: one per hardware thread

    void validate() const;

    // Scheme list after GMR masking.
    std::vector<Scheme> active_schemes() const;
    SectorLayout layout() const;
    ChainCounts chains() const { return {tp_rf_chains, ue_rf_chains}; }
    ChannelProfile profile() const { return ChannelProfile::by_name(channel_profile); }

    // Accepts "all" or a comma-separated list.
    void set_schemes(const std::string &list);
};

CampaignConfig load_config(const std::filesystem::path &path);
CampaignConfig parse_config(const std::string &json_text);
std::string config_to_json(const CampaignConfig &cfg);

} // namespace mmhbf

#endif
