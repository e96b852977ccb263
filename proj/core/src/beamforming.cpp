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

#include "mmhbf/beamforming.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace mmhbf {

namespace {

void require_streams(std::size_t n_streams, std::size_t limit, const char *where) {
    if (n_streams == 0 || n_streams > limit)
        throw DimensionError(std::string(where) + ": stream count " + std::to_string(n_streams) +
                             " outside [1, " + std::to_string(limit) + "]");
}

// Normalize each column to unit Euclidean norm (zero columns left alone).
ComplexMatrix unit_columns(ComplexMatrix m) {
    for (std::size_t c = 0; c < m.cols(); ++c) {
        double n = 0.0;
        for (std::size_t r = 0; r < m.rows(); ++r)
            n += std::norm(m(r, c));
        if (n == 0.0)
            continue;
        const double inv = 1.0 / std::sqrt(n);
        for (std::size_t r = 0; r < m.rows(); ++r)
            m(r, c) *= inv;
    }
    return m;
}

ComplexMatrix gather_columns(const ComplexMatrix &cb, std::span<const std::size_t> cols) {
    ComplexMatrix out(cb.rows(), cols.size());
    for (std::size_t j = 0; j < cols.size(); ++j)
        for (std::size_t r = 0; r < cb.rows(); ++r)
            out(r, j) = cb(r, cols[j]);
    return out;
}

// Index of the best score; unused entries are preferred while any remain.
// Returns (index, reused).
std::pair<std::size_t, bool> pick_best(std::span<const double> score, const std::vector<bool> &used,
                                       bool prefer_max) {
    const bool any_unused = std::find(used.begin(), used.end(), false) != used.end();
    std::size_t best = score.size();
    for (std::size_t i = 0; i < score.size(); ++i) {
        if (any_unused && used[i])
            continue;
        if (best == score.size() || (prefer_max ? score[i] > score[best] : score[i] < score[best]))
            best = i;
    }
    return {best, !any_unused};
}

} // namespace

std::string_view to_string(Scheme scheme) {
    switch (scheme) {
    case Scheme::Baseline:
        return "baseline";
    case Scheme::Lsp:
        return "lsp";
    case Scheme::Slnr:
        return "slnr";
    case Scheme::Gmr:
        return "gmr";
    }
    return "unknown";
}

Scheme parse_scheme(std::string_view id) {
    for (const Scheme s : {Scheme::Baseline, Scheme::Lsp, Scheme::Slnr, Scheme::Gmr})
        if (to_string(s) == id)
            return s;
    throw ConfigError("unknown scheme '" + std::string(id) + "' (expected baseline, lsp, slnr or gmr)");
}

std::vector<Scheme> parse_scheme_list(std::string_view ids) {
    std::vector<Scheme> out;
    while (!ids.empty()) {
        const auto comma = ids.find(',');
        const auto token = ids.substr(0, comma);
        if (!token.empty()) {
            const Scheme s = parse_scheme(token);
            if (std::find(out.begin(), out.end(), s) != out.end())
                throw ConfigError("scheme '" + std::string(token) + "' listed twice");
            out.push_back(s);
        }
        if (comma == std::string_view::npos)
            break;
        ids.remove_prefix(comma + 1);
    }
    if (out.empty())
        throw ConfigError("scheme list is empty");
    return out;
}

Codebooks build_codebooks(const ChannelRealization &desired, const UraConfig &tp, const UraConfig &ue) {
    if (desired.rays.empty())
        throw DimensionError("build_codebooks: channel has no rays");
    Codebooks cb{ComplexMatrix(tp.element_count(), desired.rays.size()),
                 ComplexMatrix(ue.element_count(), desired.rays.size())};
    for (std::size_t j = 0; j < desired.rays.size(); ++j) {
        const Ray &ray = desired.rays[j];
        cb.tx.set_col(j, ura_response(tp, ray.aod_azimuth, ray.aod_elevation));
        cb.rx.set_col(j, ura_response(ue, ray.aoa_azimuth, ray.aoa_elevation));
    }
    return cb;
}

RfSelection rf_select_max(const ComplexMatrix &h, const Codebooks &cb, std::size_t n_tx_chains,
                          std::size_t n_rx_chains) {
    if (cb.tx.cols() == 0 || cb.rx.cols() == 0)
        throw DimensionError("rf_select_max: empty codebook");
    if (n_tx_chains == 0 || n_rx_chains == 0)
        throw DimensionError("rf_select_max: chain counts must be >= 1");

    const ComplexMatrix gain = adjoint_times(cb.rx, h * cb.tx);
    const std::size_t nr = gain.rows();
    const std::size_t nt = gain.cols();
    std::vector<double> power(nr * nt);
    for (std::size_t i = 0; i < power.size(); ++i)
        power[i] = std::norm(gain.entries()[i]);

    RfSelection sel;
    std::vector<bool> used_t(nt, false), used_r(nr, false);
    std::vector<double> col_sum(nt, 0.0); // sum over selected rx rows
    std::vector<double> row_sum(nr, 0.0); // sum over selected tx columns

    auto take_t = [&](std::size_t t) {
        if (used_t[t])
            ++sel.reused_columns;
        used_t[t] = true;
        sel.tx_columns.push_back(t);
        for (std::size_t r = 0; r < nr; ++r)
            row_sum[r] += power[r * nt + t];
    };
    auto take_r = [&](std::size_t r) {
        if (used_r[r])
            ++sel.reused_columns;
        used_r[r] = true;
        sel.rx_columns.push_back(r);
        for (std::size_t t = 0; t < nt; ++t)
            col_sum[t] += power[r * nt + t];
    };

    while (sel.tx_columns.size() < n_tx_chains || sel.rx_columns.size() < n_rx_chains) {
        const bool need_t = sel.tx_columns.size() < n_tx_chains;
        const bool need_r = sel.rx_columns.size() < n_rx_chains;
        const bool fresh_t = std::find(used_t.begin(), used_t.end(), false) != used_t.end();
        const bool fresh_r = std::find(used_r.begin(), used_r.end(), false) != used_r.end();
        if (need_t && need_r) {
            double best = -1.0;
            std::size_t bt = 0, br = 0;
            for (std::size_t r = 0; r < nr; ++r) {
                if (fresh_r && used_r[r])
                    continue;
                for (std::size_t t = 0; t < nt; ++t) {
                    if (fresh_t && used_t[t])
                        continue;
                    const double inc = col_sum[t] + row_sum[r] + power[r * nt + t];
                    if (inc > best) {
                        best = inc;
                        bt = t;
                        br = r;
                    }
                }
            }
            // row_sum/col_sum updates must not see each other's new column.
            take_t(bt);
            take_r(br);
        } else if (need_t) {
            take_t(pick_best(col_sum, used_t, true).first);
        } else {
            take_r(pick_best(row_sum, used_r, true).first);
        }
    }

    sel.f_rf = gather_columns(cb.tx, sel.tx_columns);
    sel.w_rf = gather_columns(cb.rx, sel.rx_columns);
    sel.objective = frob_norm_sq(adjoint_times(sel.w_rf, h * sel.f_rf));
    return sel;
}

BasebandPair baseline_scheme(const ComplexMatrix &effective, std::size_t n_streams) {
    require_streams(n_streams, std::min(effective.rows(), effective.cols()), "baseline_scheme");
    BasebandPair out;
    out.f_bb = svd(effective).v.cols_range(0, n_streams);
    out.w_bb = svd(effective * out.f_bb).u.cols_range(0, n_streams);
    return out;
}

HybridWeights make_weights(ComplexMatrix f_rf, ComplexMatrix f_bb, ComplexMatrix w_rf, ComplexMatrix w_bb) {
    HybridWeights w{std::move(f_rf), std::move(f_bb), std::move(w_rf), std::move(w_bb), 1.0, 0};
    w.eta = frob_norm_sq(w.f_rf * w.f_bb);
    return w;
}

CombinerDecomposition decompose_combiner(const ComplexMatrix &target, const ComplexMatrix &codebook,
                                         std::size_t n_chains) {
    if (codebook.cols() == 0)
        throw DimensionError("decompose_combiner: empty codebook");
    if (codebook.rows() != target.rows())
        throw DimensionError("decompose_combiner: codebook and target row counts differ");

    CombinerDecomposition out;
    std::vector<bool> used(codebook.cols(), false);
    ComplexMatrix residual = target;
    std::vector<double> score(codebook.cols());
    for (std::size_t i = 0; i < n_chains; ++i) {
        const ComplexMatrix psi = adjoint_times(codebook, residual);
        for (std::size_t c = 0; c < psi.rows(); ++c) {
            double acc = 0.0;
            for (const auto &x : psi.row_span(c))
                acc += std::norm(x);
            score[c] = acc;
        }
        const auto [best, reused] = pick_best(score, used, true);
        if (reused)
            ++out.reused_columns;
        used[best] = true;
        out.columns.push_back(best);
        out.w_rf = gather_columns(codebook, out.columns);
        out.w_bb = pinv(out.w_rf) * target;
        residual = target - out.w_rf * out.w_bb;
        const double n = frob_norm(residual);
        if (n > 0.0)
            residual *= 1.0 / n;
    }
    return out;
}

HybridWeights lsp_scheme(const ChannelRealization &desired, std::span<const LeakageLink> leakage, const Codebooks &cb,
                         std::size_t n_streams, ChainCounts chains) {
    if (cb.tx.cols() == 0 || cb.rx.cols() == 0)
        throw DimensionError("lsp_scheme: empty codebook");
    require_streams(n_streams, std::min(chains.tx, chains.rx), "lsp_scheme");

    const std::size_t n_cols = cb.tx.cols();
    const ComplexMatrix through = desired.h * cb.tx;
    std::vector<double> signal(n_cols, 0.0);
    for (std::size_t r = 0; r < through.rows(); ++r)
        for (std::size_t t = 0; t < n_cols; ++t)
            signal[t] += std::norm(through(r, t));

    std::vector<std::size_t> chosen;
    std::vector<bool> used(n_cols, false);
    std::size_t reused = 0;
    auto take = [&](std::pair<std::size_t, bool> pick) {
        if (pick.second)
            ++reused;
        used[pick.first] = true;
        chosen.push_back(pick.first);
    };

    if (!leakage.empty()) {
        std::vector<double> leak(n_cols, 0.0);
        for (const LeakageLink &link : leakage) {
            const ComplexMatrix lt = link.h.get() * cb.tx;
            const double inv_pl = 1.0 / link.path_loss_linear;
            for (std::size_t r = 0; r < lt.rows(); ++r)
                for (std::size_t t = 0; t < n_cols; ++t)
                    leak[t] += std::norm(lt(r, t)) * inv_pl;
        }
        take(pick_best(leak, used, false));
    }
    while (chosen.size() < chains.tx)
        take(pick_best(signal, used, true));

    ComplexMatrix f_rf = gather_columns(cb.tx, chosen);
    const ComplexMatrix hf = desired.h * f_rf;
    ComplexMatrix f_bb = svd(hf).v.cols_range(0, n_streams);
    const ComplexMatrix w_opt = svd(hf * f_bb).u.cols_range(0, n_streams);
    CombinerDecomposition comb = decompose_combiner(w_opt, cb.rx, chains.rx);

    HybridWeights w = make_weights(std::move(f_rf), std::move(f_bb), std::move(comb.w_rf), std::move(comb.w_bb));
    w.reused_columns = reused + comb.reused_columns;
    return w;
}

double slnr_value(const ComplexMatrix &desired, const ComplexMatrix &leakage, double gamma, const ComplexMatrix &f_bb) {
    const ComplexMatrix hf = desired * f_bb;
    double denom = gamma * frob_norm_sq(f_bb);
    if (leakage.rows() > 0)
        denom += frob_norm_sq(leakage * f_bb);
    return frob_norm_sq(hf) / denom;
}

ComplexMatrix matched_filter_combiner(const ComplexMatrix &desired, const ComplexMatrix &f_bb) {
    ComplexMatrix w = desired * f_bb;
    const double n = frob_norm(w);
    if (n > 0.0)
        w *= 1.0 / n;
    return w;
}

SlnrResult slnr_scheme(const ComplexMatrix &desired, const ComplexMatrix &leakage, const ComplexMatrix &f_rf,
                       const ComplexMatrix &w_rf, double tx_power_w, double noise_power_w, std::size_t n_streams) {
    const std::size_t m = desired.cols();
    if (f_rf.cols() != m || (leakage.rows() > 0 && leakage.cols() != m) || desired.rows() != w_rf.cols())
        throw DimensionError("slnr_scheme: effective channel dimensions do not match the RF weights");
    require_streams(n_streams, std::min(desired.rows(), m), "slnr_scheme");
    if (!(tx_power_w > 0.0) || !(noise_power_w >= 0.0))
        throw DomainError("slnr_scheme: transmit power must be positive and noise power nonnegative");

    const ComplexMatrix signal = hermitian_part(adjoint_times(desired, desired));
    const ComplexMatrix leak = leakage.rows() > 0 ? hermitian_part(adjoint_times(leakage, leakage)) : ComplexMatrix(m, m);
    const double noise_term = noise_power_w * frob_norm_sq(w_rf) / tx_power_w;

    SlnrSolverState state;
    ComplexMatrix f_bb;
    // One pass of the gamma -> F_BB -> eta map.
    auto step = [&](double eta) {
        const double gamma = eta * noise_term / static_cast<double>(n_streams);
        ComplexMatrix b = leak;
        for (std::size_t i = 0; i < m; ++i)
            b(i, i) += gamma;
        EigResult ge;
        try {
            ge = herm_gen_eig(signal, b);
        } catch (const DefinitenessError &) {
            double ridge = trace(b).real() / static_cast<double>(m);
            if (!(ridge > 0.0))
                ridge = trace(signal).real() / static_cast<double>(m);
            if (!(ridge > 0.0))
                ridge = 1.0;
            ridge *= 1e-12;
            for (std::size_t i = 0; i < m; ++i)
                b(i, i) += ridge;
            state.regularized = true;
            ge = herm_gen_eig(signal, b);
        }
        f_bb = unit_columns(ge.vectors.cols_range(0, n_streams));
        state.gamma = gamma;
        return frob_norm_sq(f_rf * f_bb);
    };

    // Plain iteration with an Aitken extrapolation after every two steps;
    // the map contracts slowly when leakage dominates the noise term.
    double eta = static_cast<double>(n_streams);
    std::vector<double> run{eta};
    for (int it = 0; it < kSlnrMaxIterations; ++it) {
        const double next = step(eta);
        state.eta_iterates.push_back(next);
        if (std::abs(next - eta) <= kSlnrTolerance * eta) {
            state.converged = true;
            break;
        }
        run.push_back(next);
        eta = next;
        if (run.size() == 3) {
            const double d1 = run[1] - run[0];
            const double d2 = run[2] - run[1];
            const double denom = d2 - d1;
            if (denom != 0.0) {
                const double accel = run[2] - d2 * d2 / denom;
                if (std::isfinite(accel) && accel > 0.0)
                    eta = accel;
            }
            run.assign(1, eta);
        }
    }
    if (!state.converged)
        throw SlnrConvergenceError("slnr_scheme: gamma/eta fixed point did not converge in " +
                                       std::to_string(kSlnrMaxIterations) + " iterations",
                                   SlnrResult{f_bb, matched_filter_combiner(desired, f_bb), std::move(state)});

    return {f_bb, matched_filter_combiner(desired, f_bb), std::move(state)};
}

ComplexMatrix gmr_scheme(const ComplexMatrix &desired, std::size_t n_streams) {
    if (desired.rows() != n_streams)
        throw DimensionError("gmr_scheme: requires N_R^RF == N_S (got N_R^RF = " + std::to_string(desired.rows()) +
                             ", N_S = " + std::to_string(n_streams) + ")");
    return desired.adjoint();
}

ZfRankReport zf_rank_check(const ComplexMatrix &stacked) {
    ZfRankReport rep;
    rep.max_rank = std::min(stacked.rows(), stacked.cols());
    if (stacked.empty())
        return rep;
    // Singular values of H H^H are the squares of those of H.
    std::vector<double> s = singular_values(stacked);
    for (double &x : s)
        x *= x;
    rep.rank = numerical_rank(s, kRankTolerance);
    rep.invertible = rep.rank == stacked.rows();
    return rep;
}

std::vector<RfSelection> select_rf_all(const SchemeContext &ctx) {
    const std::size_t users = ctx.channels.user_count();
    if (ctx.codebooks.size() != users)
        throw DimensionError("select_rf_all: one codebook pair per user required");
    std::vector<RfSelection> out;
    out.reserve(users);
    for (std::size_t u = 0; u < users; ++u)
        out.push_back(rf_select_max(ctx.channels.at(u, ctx.channels.serving_tp(u)).h, ctx.codebooks[u],
                                    ctx.chains.tx, ctx.chains.rx));
    return out;
}

ComplexMatrix scaled_effective(const ComplexMatrix &w_rf_victim, const ChannelRealization &link,
                               const ComplexMatrix &f_rf) {
    ComplexMatrix eff = adjoint_times(w_rf_victim, link.h * f_rf);
    eff *= 1.0 / std::sqrt(link.path_loss_linear);
    return eff;
}

ComplexMatrix stacked_effective(const SystemChannels &channels, std::span<const RfSelection> rf, std::size_t user,
                                bool include_self) {
    const std::size_t tp = channels.serving_tp(user);
    std::vector<ComplexMatrix> blocks;
    blocks.reserve(channels.user_count());
    for (std::size_t m = 0; m < channels.user_count(); ++m) {
        if (m == user && !include_self)
            continue;
        blocks.push_back(scaled_effective(rf[m].w_rf, channels.at(m, tp), rf[user].f_rf));
    }
    if (blocks.empty())
        return ComplexMatrix(0, rf[user].f_rf.cols());
    return vstack(blocks);
}

std::vector<HybridWeights> design_weights(Scheme scheme, const SchemeContext &ctx) {
    const std::size_t users = ctx.channels.user_count();
    std::vector<HybridWeights> out;
    out.reserve(users);

    if (scheme == Scheme::Lsp) {
        if (ctx.codebooks.size() != users)
            throw DimensionError("design_weights: one codebook pair per user required");
        std::vector<LeakageLink> leakage;
        for (std::size_t u = 0; u < users; ++u) {
            const std::size_t tp = ctx.channels.serving_tp(u);
            leakage.clear();
            for (std::size_t m = 0; m < users; ++m)
                if (m != u)
                    leakage.push_back({std::cref(ctx.channels.at(m, tp).h), ctx.channels.at(m, tp).path_loss_linear});
            out.push_back(lsp_scheme(ctx.channels.at(u, tp), leakage, ctx.codebooks[u], ctx.n_streams, ctx.chains));
        }
        return out;
    }

    const std::vector<RfSelection> rf = select_rf_all(ctx);
    for (std::size_t u = 0; u < users; ++u) {
        const std::size_t tp = ctx.channels.serving_tp(u);
        const ComplexMatrix desired = scaled_effective(rf[u].w_rf, ctx.channels.at(u, tp), rf[u].f_rf);
        ComplexMatrix f_bb, w_bb;
        bool unconverged = false;
        switch (scheme) {
        case Scheme::Baseline: {
            BasebandPair bb = baseline_scheme(desired, ctx.n_streams);
            f_bb = std::move(bb.f_bb);
            w_bb = std::move(bb.w_bb);
            break;
        }
        case Scheme::Slnr: {
            const ComplexMatrix leakage = stacked_effective(ctx.channels, rf, u, false);
            SlnrResult res;
            try {
                res = slnr_scheme(desired, leakage, rf[u].f_rf, rf[u].w_rf, ctx.tx_power_w, ctx.noise_power_w,
                                  ctx.n_streams);
            } catch (const SlnrConvergenceError &e) {
                res = e.last();
                unconverged = true;
            }
            f_bb = std::move(res.f_bb);
            w_bb = std::move(res.w_bb);
            break;
        }
        case Scheme::Gmr:
            f_bb = gmr_scheme(desired, ctx.n_streams);
            w_bb = matched_filter_combiner(desired, f_bb);
            break;
        case Scheme::Lsp:
            break;
        }
        HybridWeights w = make_weights(rf[u].f_rf, std::move(f_bb), rf[u].w_rf, std::move(w_bb));
        w.reused_columns = rf[u].reused_columns;
        w.unconverged = unconverged;
        out.push_back(std::move(w));
    }
    return out;
}

} // namespace mmhbf
