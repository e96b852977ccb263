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

#include "mmhbf/channel.hpp"

#include "mmhbf/errors.hpp"

#include <fmt/format.h>

#include <algorithm>
#include <cmath>
#include <numbers>
#include <ostream>

namespace mmhbf {

namespace {

constexpr double kSpeedOfLight = 299792458.0;

double db_to_amplitude(double db) { return std::pow(10.0, db / 20.0); }

// Mean |P_pq|^2 over the polarization combinations the two arrays use.
double coupling_power(const Ray &ray, std::size_t rx_pols, std::size_t tx_pols) {
    double acc = 0.0;
    for (std::size_t p = 0; p < rx_pols; ++p)
        for (std::size_t q = 0; q < tx_pols; ++q)
            acc += std::norm(ray.polarization[2 * p + q]);
    return acc / static_cast<double>(rx_pols * tx_pols);
}

std::array<cdouble, 4> draw_coupling(const ChannelProfile &profile, Rng &rng) {
    std::normal_distribution<double> xpr_db(profile.xpr_mean, profile.xpr_sigma);
    std::uniform_real_distribution<double> phase(-std::numbers::pi, std::numbers::pi);
    const double cross = db_to_amplitude(-xpr_db(rng));
    const double p0 = phase(rng), p1 = phase(rng), p2 = phase(rng), p3 = phase(rng);
    return {std::polar(1.0, p0), std::polar(cross, p1), std::polar(cross, p2), std::polar(1.0, p3)};
}

double clamp_elevation(double deg) { return std::clamp(deg, -90.0, 90.0); }

} // namespace

void ChannelProfile::validate() const {
    if (cluster_count_weights.empty())
        throw ConfigError("channel profile '" + name + "': empty cluster count distribution");
    double total = 0.0;
    for (const double w : cluster_count_weights) {
        if (!(w >= 0.0))
            throw ConfigError("channel profile '" + name + "': negative cluster count weight");
        total += w;
    }
    if (!(total > 0.0))
        throw ConfigError("channel profile '" + name + "': cluster count weights sum to zero");
    if (rays_per_cluster == 0)
        throw ConfigError("channel profile '" + name + "': rays_per_cluster must be >= 1");
    const double nonneg[] = {cluster_spread_aod_azimuth, cluster_spread_aod_elevation, cluster_spread_aoa_azimuth,
                             cluster_spread_aoa_elevation, global_spread_aod_azimuth,   global_spread_aod_elevation,
                             global_spread_aoa_azimuth,    global_spread_aoa_elevation, cluster_shadow_sigma,
                             shadow_sigma_los,             shadow_sigma_nlos,           xpr_sigma,
                             delay_scaling,                power_decay};
    for (const double v : nonneg)
        if (!(v >= 0.0))
            throw ConfigError("channel profile '" + name + "': spreads, sigmas and exponents must be nonnegative");
    if (!(los_probability.d1 > 0.0) || !(los_probability.d2 > 0.0) || !(los_probability.exponent > 0.0))
        throw ConfigError("channel profile '" + name + "': LOS probability parameters must be positive");
}

ChannelProfile ChannelProfile::many_weak_clusters() {
    ChannelProfile p;
    p.name = "many-weak-clusters";
    p.cluster_count_weights.assign(12, 0.0);
    p.cluster_count_weights.back() = 1.0;
    p.rays_per_cluster = 10;
    p.cluster_spread_aod_azimuth = 3.0;
    p.cluster_spread_aod_elevation = 1.5;
    p.cluster_spread_aoa_azimuth = 17.0;
    p.cluster_spread_aoa_elevation = 7.0;
    p.global_spread_aod_azimuth = 12.0;
    p.global_spread_aod_elevation = 4.0;
    p.global_spread_aoa_azimuth = 45.0;
    p.global_spread_aoa_elevation = 10.0;
    p.delay_scaling = 2.5;
    p.power_decay = 0.6;
    p.cluster_shadow_sigma = 3.0;
    p.los_probability = {18.0, 36.0, 1.0};
    p.pathloss_exponent_los = 2.1;
    p.pathloss_exponent_nlos = 3.19;
    p.shadow_sigma_los = 4.0;
    p.shadow_sigma_nlos = 8.2;
    p.xpr_mean = 9.0;
    p.xpr_sigma = 3.0;
    p.rician_k_los = 9.0;
    return p;
}

ChannelProfile ChannelProfile::few_strong_lobes() {
    ChannelProfile p;
    p.name = "few-strong-lobes";
    p.cluster_count_weights = {0.55, 0.25, 0.11, 0.06, 0.03};
    p.rays_per_cluster = 4;
    p.cluster_spread_aod_azimuth = 5.0;
    p.cluster_spread_aod_elevation = 0.5;
    p.cluster_spread_aoa_azimuth = 5.0;
    p.cluster_spread_aoa_elevation = 2.0;
    p.global_spread_aod_azimuth = 25.0;
    p.global_spread_aod_elevation = 4.0;
    p.global_spread_aoa_azimuth = 60.0;
    p.global_spread_aoa_elevation = 8.0;
    p.delay_scaling = 1.0;
    p.power_decay = 4.0;
    p.cluster_shadow_sigma = 4.0;
    p.los_probability = {22.0, 100.0, 2.0};
    p.pathloss_exponent_los = 2.0;
    p.pathloss_exponent_nlos = 3.2;
    p.shadow_sigma_los = 4.0;
    p.shadow_sigma_nlos = 7.0;
    p.xpr_mean = 13.0;
    p.xpr_sigma = 3.0;
    p.rician_k_los = 15.0;
    return p;
}

ChannelProfile ChannelProfile::by_name(const std::string &name) {
    if (name == "many-weak-clusters")
        return many_weak_clusters();
    if (name == "few-strong-lobes")
        return few_strong_lobes();
    throw ConfigError("unknown channel profile '" + name + "' (expected many-weak-clusters or few-strong-lobes)");
}

double ChannelRealization::path_loss_db() const { return 10.0 * std::log10(path_loss_linear); }

double los_probability(double distance_m, const LosProbabilityModel &model) {
    if (!(distance_m > 0.0))
        throw DomainError("los_probability: distance must be positive");
    const double decay = std::exp(-distance_m / model.d2);
    const double base = std::min(model.d1 / distance_m, 1.0) * (1.0 - decay) + decay;
    return std::clamp(std::pow(base, model.exponent), 0.0, 1.0);
}

double los_probability(double distance_m, const ChannelProfile &profile) {
    return los_probability(distance_m, profile.los_probability);
}

double free_space_path_loss_db(double distance_m, double carrier_ghz) {
    return 20.0 * std::log10(4.0 * std::numbers::pi * distance_m * carrier_ghz * 1e9 / kSpeedOfLight);
}

double path_loss_db(double distance_m, bool los, double carrier_ghz, const ChannelProfile &profile, Rng &rng) {
    if (!(distance_m >= 1.0))
        throw DomainError("path_loss_db: close-in model requires distance >= 1 m");
    const double n = los ? profile.pathloss_exponent_los : profile.pathloss_exponent_nlos;
    const double sigma = los ? profile.shadow_sigma_los : profile.shadow_sigma_nlos;
    double shadow = 0.0;
    if (sigma > 0.0)
        shadow = std::normal_distribution<double>(0.0, sigma)(rng);
    return free_space_path_loss_db(1.0, carrier_ghz) + 10.0 * n * std::log10(distance_m) + shadow;
}

ComplexMatrix assemble_channel(const UraConfig &tp, const UraConfig &ue, const std::vector<Ray> &rays) {
    const std::size_t nr = ue.element_count();
    const std::size_t nt = tp.element_count();
    const std::size_t rx_pols = ue.polarizations;
    const std::size_t tx_pols = tp.polarizations;
    const double scale = std::sqrt(static_cast<double>(nr * nt));

    ComplexMatrix h(nr, nt);
    std::vector<cdouble> conj_tx(nt);
    for (const Ray &ray : rays) {
        const double amp = db_to_amplitude(element_gain_db(tp, ray.aod_azimuth, ray.aod_elevation) +
                                           element_gain_db(ue, ray.aoa_azimuth, ray.aoa_elevation));
        const ComplexMatrix a_t = ura_response(tp, ray.aod_azimuth, ray.aod_elevation);
        const ComplexMatrix a_r = ura_response(ue, ray.aoa_azimuth, ray.aoa_elevation);
        for (std::size_t t = 0; t < nt; ++t)
            conj_tx[t] = std::conj(a_t(t, 0));
        const cdouble common = scale * amp * ray.gain;
        for (std::size_t r = 0; r < nr; ++r) {
            const cdouble u = common * a_r(r, 0);
            const std::size_t pr = r % rx_pols;
            std::array<cdouble, 2> coef{u * ray.polarization[2 * pr], u * ray.polarization[2 * pr + 1]};
            auto row = h.row_span(r);
            if (tx_pols == 2) {
                for (std::size_t t = 0; t < nt; t += 2) {
                    row[t] += coef[0] * conj_tx[t];
                    row[t + 1] += coef[1] * conj_tx[t + 1];
                }
            } else {
                for (std::size_t t = 0; t < nt; ++t)
                    row[t] += coef[0] * conj_tx[t];
            }
        }
    }
    return h;
}

ChannelRealization generate_channel(const UraConfig &tp, const UraConfig &ue, const LinkGeometry &geometry,
                                    const ChannelProfile &profile, double carrier_ghz, Rng &rng) {
    std::uniform_real_distribution<double> unit(0.0, 1.0);
    std::uniform_real_distribution<double> phase(-std::numbers::pi, std::numbers::pi);
    std::normal_distribution<double> normal(0.0, 1.0);

    ChannelRealization out;
    out.los = unit(rng) < los_probability(geometry.distance_2d, profile);

    const double pl_db = std::max(path_loss_db(std::max(geometry.distance_3d, 1.0), out.los, carrier_ghz, profile, rng),
                                  free_space_path_loss_db(std::max(geometry.distance_3d, 1.0), carrier_ghz));
    out.path_loss_linear = std::pow(10.0, pl_db / 10.0);

    std::discrete_distribution<std::size_t> cluster_count(profile.cluster_count_weights.begin(),
                                                          profile.cluster_count_weights.end());
    const std::size_t clusters = cluster_count(rng) + 1;

    std::vector<double> delays(clusters);
    for (auto &tau : delays)
        tau = -profile.delay_scaling * std::log(1.0 - unit(rng));
    std::sort(delays.begin(), delays.end());
    const double first = delays.front();
    std::vector<double> powers(clusters);
    double total = 0.0;
    for (std::size_t n = 0; n < clusters; ++n) {
        delays[n] -= first;
        powers[n] = std::exp(-profile.power_decay * delays[n]) *
                    std::pow(10.0, -profile.cluster_shadow_sigma * normal(rng) / 10.0);
        total += powers[n];
    }

    const double k_factor = out.los ? std::pow(10.0, profile.rician_k_los / 10.0) : 0.0;
    const double nlos_share = 1.0 / (1.0 + k_factor);

    if (out.los) {
        Ray los_ray;
        los_ray.aod_azimuth = geometry.aod_azimuth;
        los_ray.aod_elevation = geometry.aod_elevation;
        los_ray.aoa_azimuth = geometry.aoa_azimuth;
        los_ray.aoa_elevation = geometry.aoa_elevation;
        los_ray.gain = std::polar(std::sqrt(k_factor * nlos_share), phase(rng));
        los_ray.polarization = draw_coupling(profile, rng);
        out.rays.push_back(los_ray);
    }

    for (std::size_t n = 0; n < clusters; ++n) {
        // Under LOS the earliest cluster is anchored on the direct path.
        const bool anchored = out.los && n == 0;
        const double aod_az = geometry.aod_azimuth + (anchored ? 0.0 : profile.global_spread_aod_azimuth * normal(rng));
        const double aod_el =
            geometry.aod_elevation + (anchored ? 0.0 : profile.global_spread_aod_elevation * normal(rng));
        const double aoa_az = geometry.aoa_azimuth + (anchored ? 0.0 : profile.global_spread_aoa_azimuth * normal(rng));
        const double aoa_el =
            geometry.aoa_elevation + (anchored ? 0.0 : profile.global_spread_aoa_elevation * normal(rng));
        const double ray_power = nlos_share * powers[n] / total / static_cast<double>(profile.rays_per_cluster);
        for (std::size_t m = 0; m < profile.rays_per_cluster; ++m) {
            Ray ray;
            ray.aod_azimuth = wrap_degrees(aod_az + profile.cluster_spread_aod_azimuth * normal(rng));
            ray.aod_elevation = clamp_elevation(aod_el + profile.cluster_spread_aod_elevation * normal(rng));
            ray.aoa_azimuth = wrap_degrees(aoa_az + profile.cluster_spread_aoa_azimuth * normal(rng));
            ray.aoa_elevation = clamp_elevation(aoa_el + profile.cluster_spread_aoa_elevation * normal(rng));
            ray.gain = std::polar(std::sqrt(ray_power), phase(rng));
            ray.polarization = draw_coupling(profile, rng);
            ray.delay = delays[n];
            out.rays.push_back(ray);
        }
    }

    // Fold the polarization coupling power into the gains so that
    // E ||H||_F^2 = N_R N_T with unit element gains.
    double coupled = 0.0;
    for (const Ray &ray : out.rays)
        coupled += std::norm(ray.gain) * coupling_power(ray, ue.polarizations, tp.polarizations);
    const double renorm = 1.0 / std::sqrt(coupled);
    for (Ray &ray : out.rays)
        ray.gain *= renorm;

    out.h = assemble_channel(tp, ue, out.rays);
    return out;
}

void write_channel_dump_header(std::ostream &out) {
    out << "# realization,user,user_cell,tp,rows,cols,path_loss_db,los,then rows*cols (re,im) pairs row-major\n";
}

void write_channel_dump(std::ostream &out, std::size_t realization, const SystemChannels &channels) {
    fmt::memory_buffer buf;
    for (std::size_t u = 0; u < channels.user_count(); ++u) {
        for (std::size_t tp = 0; tp < channels.cells; ++tp) {
            const auto &link = channels.at(u, tp);
            buf.clear();
            fmt::format_to(std::back_inserter(buf), "{},{},{},{},{},{},{:.17g},{}", realization, u,
                           channels.serving_tp(u), tp, link.h.rows(), link.h.cols(), link.path_loss_db(),
                           link.los ? 1 : 0);
            for (const auto &x : link.h.entries())
                fmt::format_to(std::back_inserter(buf), ",{:.17g},{:.17g}", x.real(), x.imag());
            buf.push_back('\n');
            out.write(buf.data(), static_cast<std::streamsize>(buf.size()));
        }
    }
}

} // namespace mmhbf
