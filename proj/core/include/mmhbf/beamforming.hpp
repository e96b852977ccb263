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

#ifndef MMHBF_BEAMFORMING_HPP
#define MMHBF_BEAMFORMING_HPP

#include "mmhbf/array_geometry.hpp"
#include "mmhbf/channel.hpp"
#include "mmhbf/errors.hpp"
#include "mmhbf/linalg.hpp"

#include <cstddef>
#include <functional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace mmhbf {

enum class Scheme { Baseline, Lsp, Slnr, Gmr };

std::string_view to_string(Scheme scheme);
Scheme parse_scheme(std::string_view id);
// Comma-separated identifiers; duplicates rejected.
std::vector<Scheme> parse_scheme_list(std::string_view ids);

// Steering vectors at the desired user's ray angles.
struct Codebooks {
    ComplexMatrix tx; // N_T x rays
    ComplexMatrix rx; // N_R x rays
};

Codebooks build_codebooks(const ChannelRealization &desired, const UraConfig &tp, const UraConfig &ue);

struct ChainCounts {
    std::size_t tx = 4; // M_T^RF
    std::size_t rx = 4; // N_R^RF
};

struct RfSelection {
    ComplexMatrix f_rf;
    ComplexMatrix w_rf;
    std::vector<std::size_t> tx_columns;
    std::vector<std::size_t> rx_columns;
    double objective = 0.0; // ||W_RF^H H F_RF||_F^2
    std::size_t reused_columns = 0;
};

/// Greedy joint selection of (tx, rx) codebook pairs maximizing
/// ||W_RF^H H F_RF||_F^2. Each step adds the pair with the largest objective
/// increase given the columns already fixed; a column is reused only once
/// every column of its codebook has been taken.
RfSelection rf_select_max(const ComplexMatrix &h, const Codebooks &cb, std::size_t n_tx_chains,
                          std::size_t n_rx_chains);

struct BasebandPair {
    ComplexMatrix f_bb;
    ComplexMatrix w_bb;
};

/// Eigenmode transmission on the effective channel: F_BB holds the top
/// right singular vectors of H_eff and W_BB the top left singular vectors
/// of H_eff F_BB.
BasebandPair baseline_scheme(const ComplexMatrix &effective, std::size_t n_streams);

struct HybridWeights {
    ComplexMatrix f_rf; // N_T x M_T^RF
    ComplexMatrix f_bb; // M_T^RF x N_S
    ComplexMatrix w_rf; // N_R x N_R^RF
    ComplexMatrix w_bb; // N_R^RF x N_S
    double eta = 1.0;   // ||F_RF F_BB||_F^2
    std::size_t reused_columns = 0;
    bool unconverged = false; // SLNR fixed point hit its cap; last iterate kept
};

HybridWeights make_weights(ComplexMatrix f_rf, ComplexMatrix f_bb, ComplexMatrix w_rf, ComplexMatrix w_bb);

// Another user's link seen from the desired user's TP.
struct LeakageLink {
    std::reference_wrapper<const ComplexMatrix> h;
    double path_loss_linear = 1.0;
};

/// Leakage-suppressing, signal-maximizing precoding.
///
/// The first RF column minimizes the leakage power through the stacked
/// path-loss-scaled channels of every other user; the rest maximize the
/// desired channel power. The combiner approximates the optimal digital one
/// by greedy codebook pursuit with least-squares baseband refits.
HybridWeights lsp_scheme(const ChannelRealization &desired, std::span<const LeakageLink> leakage, const Codebooks &cb,
                         std::size_t n_streams, ChainCounts chains);

/// Greedy pursuit of an N_R x N_S target combiner over codebook columns.
/// Returns the chosen RF columns and their least-squares baseband weights.
struct CombinerDecomposition {
    ComplexMatrix w_rf;
    ComplexMatrix w_bb;
    std::vector<std::size_t> columns;
    std::size_t reused_columns = 0;
};
CombinerDecomposition decompose_combiner(const ComplexMatrix &target, const ComplexMatrix &codebook,
                                         std::size_t n_chains);

struct SlnrSolverState {
    double gamma = 0.0;
    std::vector<double> eta_iterates;
    bool converged = false;
    bool regularized = false; // leakage-plus-noise matrix needed a ridge
};

struct SlnrResult {
    ComplexMatrix f_bb;
    ComplexMatrix w_bb;
    SlnrSolverState state;
};

// Carries the last iterate (weights and solver state).
class SlnrConvergenceError : public ConvergenceError {
  public:
    SlnrConvergenceError(const std::string &what, SlnrResult last) : ConvergenceError(what), last_(std::move(last)) {}
    const SlnrSolverState &state() const noexcept { return last_.state; }
    const SlnrResult &last() const noexcept { return last_; }

  private:
    SlnrResult last_;
};

inline constexpr int kSlnrMaxIterations = 50;
inline constexpr double kSlnrTolerance = 1e-6;

/// SLNR-maximizing baseband precoder.
///
/// desired: path-loss-scaled effective channel of the served user
/// (N_R^RF x M_T^RF). leakage: the stacked effective channels of every other
/// user through this user's RF precoder ((KL-1) N_R^RF x M_T^RF).
/// gamma and eta = ||F_RF F_BB||_F^2 are coupled; they are resolved by
/// fixed-point iteration from eta = N_S with unit-norm F_BB columns.
SlnrResult slnr_scheme(const ComplexMatrix &desired, const ComplexMatrix &leakage, const ComplexMatrix &f_rf,
                       const ComplexMatrix &w_rf, double tx_power_w, double noise_power_w, std::size_t n_streams);

// tr(F^H A F) / tr(F^H (L^H L + gamma I) F) with A = H^H H.
double slnr_value(const ComplexMatrix &desired, const ComplexMatrix &leakage, double gamma, const ComplexMatrix &f_bb);

// W_BB = H_eff F_BB / ||H_eff F_BB||_F
ComplexMatrix matched_filter_combiner(const ComplexMatrix &desired, const ComplexMatrix &f_bb);

/// Generalized maximum-ratio precoder F_BB = H_eff^H. Requires the effective
/// channel's row count (N_R^RF) to equal n_streams; DimensionError otherwise.
ComplexMatrix gmr_scheme(const ComplexMatrix &desired, std::size_t n_streams);

struct ZfRankReport {
    std::size_t rank = 0;
    std::size_t max_rank = 0; // min(rows, cols) of the stacked channel
    bool invertible = false;  // rank == rows, i.e. H H^H is invertible
};

inline constexpr double kRankTolerance = 1e-10;

// Numerical rank of H H^H for the stacked KL N_R^RF x M_T^RF effective channel.
ZfRankReport zf_rank_check(const ComplexMatrix &stacked);

/// Inputs to compute every user's weights in one drop.
struct SchemeContext {
    const SystemChannels &channels;
    std::span<const Codebooks> codebooks; // per user, from the serving link
    ChainCounts chains;
    std::size_t n_streams = 2;
    double tx_power_w = 1.0;
    double noise_power_w = 1.0;
};

// RF stage shared by baseline, SLNR and GMR.
std::vector<RfSelection> select_rf_all(const SchemeContext &ctx);

// Effective channel W_RF(victim)^H H(victim, tp) F_RF / sqrt(PL).
ComplexMatrix scaled_effective(const ComplexMatrix &w_rf_victim, const ChannelRealization &link,
                               const ComplexMatrix &f_rf);

// Stacked effective channels of all users through one user's RF precoder.
// include_self keeps the desired user's own block at its index position.
ComplexMatrix stacked_effective(const SystemChannels &channels, std::span<const RfSelection> rf, std::size_t user,
                                bool include_self);

/// Weights of every user for one scheme. An SLNR user whose fixed point does
/// not converge keeps the last iterate and is marked `unconverged`.
std::vector<HybridWeights> design_weights(Scheme scheme, const SchemeContext &ctx);

} // namespace mmhbf

#endif
