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

#include "mmhbf/array_geometry.hpp"

#include "mmhbf/errors.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

namespace mmhbf {

namespace {

constexpr double kDegToRad = std::numbers::pi / 180.0;

} // namespace

void UraConfig::validate() const {
    if (rows == 0 || cols == 0)
        throw ConfigError("URA must have at least one row and one column");
    if (polarizations != 1 && polarizations != 2)
        throw ConfigError("URA polarizations must be 1 or 2");
    if (!(spacing_azimuth > 0.0) || !(spacing_elevation > 0.0))
        throw ConfigError("URA element spacings must be strictly positive");
}

UraConfig UraConfig::transmission_point() { return {}; }

UraConfig UraConfig::user_equipment() {
    UraConfig cfg;
    cfg.rows = 2;
    cfg.cols = 2;
    cfg.element_gain_max = 0.0;
    cfg.role = ArrayRole::UserEquipment;
    return cfg;
}

double wrap_degrees(double deg) {
    double w = std::fmod(deg, 360.0);
    if (w <= -180.0)
        w += 360.0;
    else if (w > 180.0)
        w -= 360.0;
    return w;
}

ComplexMatrix ura_response(const UraConfig &cfg, double azimuth_deg, double elevation_deg) {
    const double az = wrap_degrees(azimuth_deg - cfg.boresight_azimuth) * kDegToRad;
    const double el = elevation_deg * kDegToRad;
    const double horizontal = 2.0 * std::numbers::pi * cfg.spacing_azimuth * std::sin(az) * std::cos(el);
    const double vertical = 2.0 * std::numbers::pi * cfg.spacing_elevation * std::sin(el);
    const double amplitude = 1.0 / std::sqrt(static_cast<double>(cfg.element_count()));

    ComplexMatrix a(cfg.element_count(), 1);
    std::size_t idx = 0;
    for (std::size_t r = 0; r < cfg.rows; ++r) {
        for (std::size_t c = 0; c < cfg.cols; ++c) {
            const double phase = static_cast<double>(c) * horizontal + static_cast<double>(r) * vertical;
            const cdouble value = std::polar(amplitude, phase);
            for (std::size_t p = 0; p < cfg.polarizations; ++p)
                a(idx++, 0) = value;
        }
    }
    return a;
}

double element_gain_db(double azimuth_off_boresight_deg, double elevation_deg, ArrayRole role, double gain_max_dbi) {
    if (role == ArrayRole::UserEquipment)
        return 0.0;
    const double phi = wrap_degrees(azimuth_off_boresight_deg) / kHalfPowerBeamwidthDeg;
    const double theta = elevation_deg / kHalfPowerBeamwidthDeg;
    const double horizontal = std::min(12.0 * phi * phi, kFrontBackRatioDb);
    const double vertical = std::min(12.0 * theta * theta, kSideLobeLimitDb);
    return gain_max_dbi - std::min(horizontal + vertical, kFrontBackRatioDb);
}

double element_gain_db(const UraConfig &cfg, double azimuth_deg, double elevation_deg) {
    return element_gain_db(azimuth_deg - cfg.boresight_azimuth, elevation_deg, cfg.role, cfg.element_gain_max);
}

void SectorLayout::validate() const {
    if (!(min_distance > 0.0) || !(min_distance < cell_radius))
        throw ConfigError("sector layout requires 0 < min_distance < cell_radius");
    for (std::size_t i = 0; i < sector_boresights.size(); ++i) {
        const double next = sector_boresights[(i + 1) % sector_boresights.size()];
        if (std::abs(std::abs(wrap_degrees(next - sector_boresights[i])) - 120.0) > 1e-9)
            throw ConfigError("sector boresights must be 120 degrees apart");
    }
}

UserDrop drop_users(const SectorLayout &layout, std::size_t users_per_cell, Rng &rng) {
    if (users_per_cell == 0)
        throw ConfigError("users_per_cell must be at least 1");
    std::uniform_real_distribution<double> unit(0.0, 1.0);
    const double r0sq = layout.min_distance * layout.min_distance;
    const double r1sq = layout.cell_radius * layout.cell_radius;

    UserDrop drop;
    drop.positions.reserve(layout.cell_count() * users_per_cell);
    drop.distances.reserve(layout.cell_count() * users_per_cell);
    for (std::size_t cell = 0; cell < layout.cell_count(); ++cell) {
        for (std::size_t k = 0; k < users_per_cell; ++k) {
            // Inverse-CDF of the area-uniform radius on the annulus.
            const double radius =
                std::clamp(std::sqrt(r0sq + unit(rng) * (r1sq - r0sq)), layout.min_distance, layout.cell_radius);
            const double azimuth = layout.sector_boresights[cell] - 60.0 + 120.0 * unit(rng);
            const double orientation = 360.0 * unit(rng);
            UserPosition pos;
            pos.cell = cell;
            pos.position = {layout.site.x + radius * std::cos(azimuth * kDegToRad),
                            layout.site.y + radius * std::sin(azimuth * kDegToRad)};
            pos.orientation = orientation;
            drop.positions.push_back(pos);
            drop.distances.push_back(radius);
        }
    }
    return drop;
}

LinkGeometry link_geometry(const SectorLayout &layout, const UserPosition &user) {
    const double dx = user.position.x - layout.site.x;
    const double dy = user.position.y - layout.site.y;
    const double dz = layout.ue_height - layout.tp_height;
    LinkGeometry g;
    g.distance_2d = std::hypot(dx, dy);
    g.distance_3d = std::hypot(g.distance_2d, dz);
    g.aod_azimuth = std::atan2(dy, dx) / kDegToRad;
    g.aod_elevation = std::atan2(dz, g.distance_2d) / kDegToRad;
    g.aoa_azimuth = wrap_degrees(g.aod_azimuth + 180.0);
    g.aoa_elevation = -g.aod_elevation;
    return g;
}

} // namespace mmhbf
