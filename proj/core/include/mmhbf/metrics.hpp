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

#ifndef MMHBF_METRICS_HPP
#define MMHBF_METRICS_HPP

#include "mmhbf/beamforming.hpp"
#include "mmhbf/channel.hpp"
#include "mmhbf/linalg.hpp"

#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

namespace mmhbf {

double dbm_to_watts(double dbm);
double watts_to_dbm(double watts);

struct LinkBudget {
    double tx_power_dbm = 35.2;
    double noise_figure_db = 10.0;
    double bandwidth_hz = 100e6;
    double carrier_ghz = 28.0;

    // -174 dBm/Hz thermal floor + 10 log10(B) + NF
    double noise_power_dbm() const;
    double noise_power_w() const { return dbm_to_watts(noise_power_dbm()); }
    double tx_power_w() const { return dbm_to_watts(tx_power_dbm); }
};

/// Interference covariance seen by one user (N_R x N_R).
///
/// Sums P_t / (eta_m PL(user, tp_m)) * H(user, tp_m) F_m F_m^H H(user, tp_m)^H
/// over every other user m, where tp_m serves m and F_m = F_RF F_BB. Entries
/// are accumulated with compensated summation and the result is symmetrized.
ComplexMatrix interference_covariance(const SystemChannels &channels, std::span<const HybridWeights> weights,
                                      std::size_t user, double tx_power_w);

struct SpectralEfficiency {
    double value = 0.0;       // bit/s/Hz
    bool regularized = false; // whitening matrix needed a ridge
};

/// log2 det(I + Q^-1 S S^H), evaluated through the Cholesky factor of Q.
/// signal is S (N_S x N_S), whitening is Q (N_S x N_S, Hermitian).
SpectralEfficiency spectral_efficiency(const ComplexMatrix &signal, const ComplexMatrix &whitening);

/// Per-user rate with the combined receiver W = W_RF W_BB:
/// S = sqrt(P_t / (eta PL)) W^H H F_RF F_BB and Q = W^H (N_0 I + D) W.
SpectralEfficiency spectral_efficiency(const SystemChannels &channels, std::span<const HybridWeights> weights,
                                       std::size_t user, const ComplexMatrix &interference, double tx_power_w,
                                       double noise_power_w);

struct PowerDecomposition {
    double signal_w = 0.0;
    double interference_w = 0.0;
};

PowerDecomposition power_decomposition(const SystemChannels &channels, std::span<const HybridWeights> weights,
                                       std::size_t user, const ComplexMatrix &interference, double tx_power_w);

// Leading top_n eigenvalues of H H^H, descending.
std::vector<double> eigenvalue_profile(const ComplexMatrix &h, std::size_t top_n);

// Number of eigenvalues of H H^H within threshold_db of the largest.
std::size_t eigen_rank_within(const ComplexMatrix &h, double threshold_db);

struct UserResult {
    std::size_t drop = 0;
    Scheme scheme = Scheme::Baseline;
    std::uint64_t seed = 0;
    std::size_t cell = 0;
    std::size_t user = 0; // global index, cell-major
    double spectral_efficiency = 0.0;
    double signal_power_w = 0.0;
    double interference_power_w = 0.0;
    bool regularized = false;
};

// Full evaluation of every user of one drop for one scheme's weights.
std::vector<UserResult> evaluate_users(const SystemChannels &channels, std::span<const HybridWeights> weights,
                                       Scheme scheme, std::size_t drop, std::uint64_t seed, double tx_power_w,
                                       double noise_power_w);

} // namespace mmhbf

#endif
