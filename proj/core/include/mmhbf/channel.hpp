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

#ifndef MMHBF_CHANNEL_HPP
#define MMHBF_CHANNEL_HPP

#include "mmhbf/array_geometry.hpp"
#include "mmhbf/linalg.hpp"
#include "mmhbf/rng.hpp"

#include <array>
#include <cstddef>
#include <iosfwd>
#include <string>
#include <vector>

namespace mmhbf {

// P(LOS) = (min(d1/d, 1) * (1 - exp(-d/d2)) + exp(-d/d2)) ^ exponent
struct LosProbabilityModel {
    double d1 = 18.0;
    double d2 = 36.0;
    double exponent = 1.0;
};

/// Parameters of the clustered statistical channel generator.
///
/// Angles and spreads are in degrees, powers and sigmas in dB. Cluster delays
/// are dimensionless (units of the delay spread): tau = -delay_scaling * ln(U),
/// and cluster power is exp(-power_decay * tau) with a per-cluster lognormal
/// term of cluster_shadow_sigma dB.
struct ChannelProfile {
    std::string name;
    std::vector<double> cluster_count_weights; // entry i: weight of i + 1 clusters
    std::size_t rays_per_cluster = 1;

    double cluster_spread_aod_azimuth = 0.0;
    double cluster_spread_aod_elevation = 0.0;
    double cluster_spread_aoa_azimuth = 0.0;
    double cluster_spread_aoa_elevation = 0.0;
    double global_spread_aod_azimuth = 0.0;
    double global_spread_aod_elevation = 0.0;
    double global_spread_aoa_azimuth = 0.0;
    double global_spread_aoa_elevation = 0.0;

    double delay_scaling = 1.0;
    double power_decay = 1.0;
    double cluster_shadow_sigma = 0.0;

    LosProbabilityModel los_probability{};
    double pathloss_exponent_los = 2.0;
    double pathloss_exponent_nlos = 3.0;
    double shadow_sigma_los = 0.0;
    double shadow_sigma_nlos = 0.0;
    double xpr_mean = 9.0;
    double xpr_sigma = 3.0;
    double rician_k_los = 9.0;

    void validate() const;

    // 3GPP-UMi-like: a dozen clusters of ten rays, flat power profile.
    static ChannelProfile many_weak_clusters();
    // NYUSIM-like: one to five narrow spatial lobes, steep power profile,
    // strong LOS ray and low cross-pol leakage.
    static ChannelProfile few_strong_lobes();
    static ChannelProfile by_name(const std::string &name);
};

struct Ray {
    double aod_azimuth = 0.0; // global frame, degrees
    double aod_elevation = 0.0;
    double aoa_azimuth = 0.0;
    double aoa_elevation = 0.0;
    cdouble gain{1.0, 0.0};
    // Row-major 2x2 coupling [rx_pol][tx_pol]; co-pol entries unit magnitude.
    std::array<cdouble, 4> polarization{cdouble{1.0, 0.0}, cdouble{0.0, 0.0}, cdouble{0.0, 0.0}, cdouble{1.0, 0.0}};
    double delay = 0.0;
};

struct ChannelRealization {
    ComplexMatrix h; // N_R x N_T small-scale channel
    double path_loss_linear = 1.0;
    bool los = false;
    std::vector<Ray> rays;

    double path_loss_db() const;
};

double los_probability(double distance_m, const LosProbabilityModel &model);
double los_probability(double distance_m, const ChannelProfile &profile);

// Friis loss at distance_m: 20 log10(4 pi d f / c).
double free_space_path_loss_db(double distance_m, double carrier_ghz);

/// Close-in model: FSPL(1 m) + 10 n log10(d) + X_sigma, X_sigma ~ N(0, sigma^2) dB.
/// Throws DomainError for distance < 1 m.
double path_loss_db(double distance_m, bool los, double carrier_ghz, const ChannelProfile &profile, Rng &rng);

/// H = sqrt(N_R N_T) sum_rays gain * sqrt(g_tx g_rx) * (a_R a_T^H) (.) P,
/// where P applies the ray's 2x2 coupling to each (rx pol, tx pol) block and
/// g_tx, g_rx are linear element gains at the ray angles.
ComplexMatrix assemble_channel(const UraConfig &tp, const UraConfig &ue, const std::vector<Ray> &rays);

ChannelRealization generate_channel(const UraConfig &tp, const UraConfig &ue, const LinkGeometry &geometry,
                                    const ChannelProfile &profile, double carrier_ghz, Rng &rng);

/// All K*L*L links of one drop. Users are cell-major (u = cell * K + k) and
/// the serving TP of user u is u / K.
struct SystemChannels {
    std::size_t users_per_cell = 0;
    std::size_t cells = 0;
    std::vector<ChannelRealization> links; // index user * cells + tp

    std::size_t user_count() const noexcept { return users_per_cell * cells; }
    std::size_t serving_tp(std::size_t user) const noexcept { return user / users_per_cell; }
    ChannelRealization &at(std::size_t user, std::size_t tp) { return links[user * cells + tp]; }
    const ChannelRealization &at(std::size_t user, std::size_t tp) const { return links[user * cells + tp]; }
};

/// Appends one CSV line per link:
/// realization,user,user_cell,tp,rows,cols,path_loss_db,los,re(0,0),im(0,0),re(0,1),...
void write_channel_dump(std::ostream &out, std::size_t realization, const SystemChannels &channels);
void write_channel_dump_header(std::ostream &out);

} // namespace mmhbf

#endif
