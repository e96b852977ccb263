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

#ifndef MMHBF_ARRAY_GEOMETRY_HPP
#define MMHBF_ARRAY_GEOMETRY_HPP

#include "mmhbf/linalg.hpp"
#include "mmhbf/rng.hpp"

#include <array>
#include <cstddef>
#include <vector>

namespace mmhbf {

enum class ArrayRole { TransmissionPoint, UserEquipment };

// Sectoral element pattern parameters for the transmission point.
inline constexpr double kTpElementGainMaxDbi = 8.0;
inline constexpr double kHalfPowerBeamwidthDeg = 65.0;
inline constexpr double kFrontBackRatioDb = 30.0;
inline constexpr double kSideLobeLimitDb = 30.0;

/// Uniform rectangular array in the plane normal to its boresight.
///
/// Elements are indexed as ((row * cols) + col) * polarizations + pol, so the
/// two slant polarizations of one physical position sit next to each other.
/// Spacings are in carrier wavelengths.
struct UraConfig {
    std::size_t rows = 8;
    std::size_t cols = 16;
    std::size_t polarizations = 2;
    double spacing_azimuth = 0.5;
    double spacing_elevation = 1.0;
    double boresight_azimuth = 0.0; // degrees, global frame
    double element_gain_max = kTpElementGainMaxDbi;
    ArrayRole role = ArrayRole::TransmissionPoint;

    std::size_t element_count() const noexcept { return rows * cols * polarizations; }
    void validate() const;

    static UraConfig transmission_point();
    static UraConfig user_equipment();
};

// Maps an angle in degrees into (-180, 180].
double wrap_degrees(double deg);

/// Unit-norm steering vector (N x 1) for a plane wave arriving from / leaving
/// towards (azimuth, elevation) in the global frame. Every entry has
/// magnitude 1/sqrt(N); polarization does not enter the phase.
ComplexMatrix ura_response(const UraConfig &cfg, double azimuth_deg, double elevation_deg);

/// Element gain in dBi. azimuth is measured from boresight.
/// TP: 3-D sectoral pattern with 65 deg beamwidths and 30 dB floor.
/// UE: omnidirectional, 0 dBi.
double element_gain_db(double azimuth_off_boresight_deg, double elevation_deg, ArrayRole role,
                       double gain_max_dbi = kTpElementGainMaxDbi);

// Element gain for a config, with the azimuth given in the global frame.
double element_gain_db(const UraConfig &cfg, double azimuth_deg, double elevation_deg);

struct Vec2 {
    double x = 0.0;
    double y = 0.0;
};

// Three 120-degree sectors served from one site.
struct SectorLayout {
    Vec2 site{};
    std::array<double, 3> sector_boresights{30.0, 150.0, 270.0};
    double cell_radius = 50.0;
    double min_distance = 10.0;
    double tp_height = 10.0;
    double ue_height = 1.5;

    std::size_t cell_count() const noexcept { return sector_boresights.size(); }
    void validate() const;
};

struct UserPosition {
    std::size_t cell = 0;
    Vec2 position{};
    double orientation = 0.0; // UE array boresight, degrees
};

// Users are ordered cell-major: index = cell * users_per_cell + k.
struct UserDrop {
    std::vector<UserPosition> positions;
    std::vector<double> distances; // horizontal distance to the site
};

/// Drops users_per_cell users per sector, uniform in area over the annular
/// wedge [min_distance, cell_radius] x [boresight - 60, boresight + 60).
UserDrop drop_users(const SectorLayout &layout, std::size_t users_per_cell, Rng &rng);

// Line-of-sight geometry between a site TP and a user (global angles, degrees).
struct LinkGeometry {
    double distance_2d = 0.0;
    double distance_3d = 0.0;
    double aod_azimuth = 0.0;
    double aod_elevation = 0.0;
    double aoa_azimuth = 0.0;
    double aoa_elevation = 0.0;
};

LinkGeometry link_geometry(const SectorLayout &layout, const UserPosition &user);

} // namespace mmhbf

#endif
