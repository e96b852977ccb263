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

#include <gtest/gtest.h>

#include <cmath>
#include <numbers>

using namespace mmhbf;

namespace {

UraConfig line_array(std::size_t cols, double spacing) {
    UraConfig c;
    c.rows = 1;
    c.cols = cols;
    c.polarizations = 1;
    c.spacing_azimuth = spacing;
    return c;
}

double phase_step(const ComplexMatrix &a, std::size_t i, std::size_t j) { return std::arg(a(j, 0) / a(i, 0)); }

} // namespace

TEST(ArrayGeometry, WrapDegrees) {
    EXPECT_DOUBLE_EQ(wrap_degrees(190.0), -170.0);
    EXPECT_DOUBLE_EQ(wrap_degrees(-180.0), 180.0);
    EXPECT_DOUBLE_EQ(wrap_degrees(180.0), 180.0);
    EXPECT_DOUBLE_EQ(wrap_degrees(720.5), 0.5);
}

TEST(ArrayGeometry, ResponseIsUnitNormWithEqualMagnitudes) {
    const UraConfig tp = UraConfig::transmission_point();
    const ComplexMatrix a = ura_response(tp, 17.0, -8.0);
    ASSERT_EQ(a.rows(), 256u);
    EXPECT_NEAR(frob_norm(a), 1.0, 1e-14);
    for (const auto &x : a.entries())
        EXPECT_NEAR(std::abs(x), 1.0 / 16.0, 1e-15);
}

TEST(ArrayGeometry, BroadsideIsInPhase) {
    const ComplexMatrix a = ura_response(line_array(4, 0.5), 0.0, 0.0);
    for (std::size_t i = 1; i < 4; ++i)
        EXPECT_NEAR(phase_step(a, 0, i), 0.0, 1e-14);
}

TEST(ArrayGeometry, EndfireHalfWavelengthStepIsPi) {
    const ComplexMatrix a = ura_response(line_array(2, 0.5), 90.0, 0.0);
    EXPECT_NEAR(std::abs(phase_step(a, 0, 1)), std::numbers::pi, 1e-12);
}

TEST(ArrayGeometry, PhaseStepFollowsSineLaw) {
    const double az = 23.0;
    const ComplexMatrix a = ura_response(line_array(3, 0.5), az, 0.0);
    const double expected = std::numbers::pi * std::sin(az * std::numbers::pi / 180.0);
    EXPECT_NEAR(std::abs(phase_step(a, 0, 1)), expected, 1e-12);
}

TEST(ArrayGeometry, ResponseFollowsBoresight) {
    UraConfig c = line_array(4, 0.5);
    c.boresight_azimuth = 150.0;
    const ComplexMatrix a = ura_response(c, 150.0, 0.0);
    EXPECT_NEAR(phase_step(a, 0, 3), 0.0, 1e-14);
}

TEST(ArrayGeometry, PolarizationPairsShareThePhase) {
    const UraConfig ue = UraConfig::user_equipment();
    const ComplexMatrix a = ura_response(ue, 40.0, 10.0);
    ASSERT_EQ(a.rows(), 8u);
    for (std::size_t e = 0; e < 8; e += 2)
        EXPECT_EQ(a(e, 0), a(e + 1, 0));
}

TEST(ArrayGeometry, TpElementPattern) {
    EXPECT_DOUBLE_EQ(element_gain_db(0.0, 0.0, ArrayRole::TransmissionPoint), 8.0);
    // 12 dB down at the half-power beamwidth
    EXPECT_NEAR(element_gain_db(65.0, 0.0, ArrayRole::TransmissionPoint), -4.0, 1e-12);
    EXPECT_NEAR(element_gain_db(-65.0, 0.0, ArrayRole::TransmissionPoint), -4.0, 1e-12);
    EXPECT_NEAR(element_gain_db(0.0, 65.0, ArrayRole::TransmissionPoint), -4.0, 1e-12);
    EXPECT_NEAR(element_gain_db(180.0, 0.0, ArrayRole::TransmissionPoint), 8.0 - 30.0, 1e-12);
    EXPECT_NEAR(element_gain_db(120.0, 60.0, ArrayRole::TransmissionPoint), -22.0, 1e-12);
}

TEST(ArrayGeometry, UePatternIsFlat) {
    for (const double az : {0.0, 90.0, 180.0})
        EXPECT_EQ(element_gain_db(az, 30.0, ArrayRole::UserEquipment), 0.0);
}

TEST(ArrayGeometry, ConfigValidation) {
    UraConfig c;
    c.polarizations = 3;
    EXPECT_THROW(c.validate(), ConfigError);
    c = UraConfig{};
    c.spacing_azimuth = 0.0;
    EXPECT_THROW(c.validate(), ConfigError);
    EXPECT_NO_THROW(UraConfig::user_equipment().validate());

    SectorLayout l;
    l.min_distance = 60.0;
    EXPECT_THROW(l.validate(), ConfigError);
}

TEST(ArrayGeometry, DropStaysInsideEachWedge) {
    SectorLayout layout;
    Rng rng(11);
    const UserDrop d = drop_users(layout, 50, rng);
    ASSERT_EQ(d.positions.size(), 150u);
    for (std::size_t u = 0; u < d.positions.size(); ++u) {
        const auto &p = d.positions[u];
        EXPECT_EQ(p.cell, u / 50);
        const double r = std::hypot(p.position.x, p.position.y);
        EXPECT_NEAR(r, d.distances[u], 1e-9);
        EXPECT_GE(r, 10.0 - 1e-9);
        EXPECT_LE(r, 50.0 + 1e-9);
        const double az = std::atan2(p.position.y, p.position.x) * 180.0 / std::numbers::pi;
        EXPECT_LE(std::abs(wrap_degrees(az - layout.sector_boresights[p.cell])), 60.0 + 1e-9);
        EXPECT_GE(p.orientation, 0.0);
        EXPECT_LT(p.orientation, 360.0);
    }
}

TEST(ArrayGeometry, DropIsUniformInArea) {
    // E[r] over an annulus [a, b] with density proportional to r:
    // (2/3) (b^3 - a^3) / (b^2 - a^2)
    SectorLayout layout;
    Rng rng(12);
    const UserDrop d = drop_users(layout, 2000, rng);
    double mean = 0.0;
    for (const double r : d.distances)
        mean += r;
    mean /= static_cast<double>(d.distances.size());
    const double expected = (2.0 / 3.0) * (50.0 * 50.0 * 50.0 - 1000.0) / (2500.0 - 100.0);
    EXPECT_NEAR(mean, expected, 0.4);
}

TEST(ArrayGeometry, DropRejectsZeroUsers) {
    Rng rng(1);
    EXPECT_THROW(drop_users(SectorLayout{}, 0, rng), ConfigError);
}

TEST(ArrayGeometry, LinkGeometryReciprocalAngles) {
    SectorLayout layout;
    UserPosition u;
    u.position = {30.0, 40.0};
    const LinkGeometry g = link_geometry(layout, u);
    EXPECT_NEAR(g.distance_2d, 50.0, 1e-12);
    EXPECT_NEAR(g.distance_3d, std::hypot(50.0, 8.5), 1e-12);
    EXPECT_NEAR(g.aod_azimuth, std::atan2(40.0, 30.0) * 180.0 / std::numbers::pi, 1e-12);
    EXPECT_NEAR(wrap_degrees(g.aoa_azimuth - g.aod_azimuth), 180.0, 1e-12);
    EXPECT_NEAR(g.aod_elevation, -std::atan2(8.5, 50.0) * 180.0 / std::numbers::pi, 1e-12);
    EXPECT_DOUBLE_EQ(g.aoa_elevation, -g.aod_elevation);
}
