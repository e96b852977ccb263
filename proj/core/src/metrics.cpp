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

#include "mmhbf/metrics.hpp"

#include "mmhbf/errors.hpp"

#include <algorithm>
#include <cmath>

namespace mmhbf {

namespace {

// Neumaier summation of one real component.
struct Compensated {
    double sum = 0.0;
    double carry = 0.0;

    void add(double x) {
        const double t = sum + x;
        if (std::abs(sum) >= std::abs(x))
            carry += (sum - t) + x;
        else
            carry += (x - t) + sum;
        sum = t;
    }
    double value() const { return sum + carry; }
};

ComplexMatrix combined_receiver(const HybridWeights &w) { return w.w_rf * w.w_bb; }

void check_weights(const SystemChannels &channels, std::span<const HybridWeights> weights, std::size_t user) {
    if (weights.size() != channels.user_count())
        throw DimensionError("metrics: one set of weights per user required");
    if (user >= channels.user_count())
        throw DimensionError("metrics: user index out of range");
}

double ridge_for(const ComplexMatrix &q, const ComplexMatrix &fallback) {
    double r = trace(q).real();
    if (!(r > 0.0))
        r = trace(fallback).real();
    if (!(r > 0.0))
        r = 1.0;
    return 1e-12 * r;
}

} // namespace

double dbm_to_watts(double dbm) { return std::pow(10.0, (dbm - 30.0) / 10.0); }
double watts_to_dbm(double watts) { return 10.0 * std::log10(watts) + 30.0; }

double LinkBudget::noise_power_dbm() const { return -174.0 + 10.0 * std::log10(bandwidth_hz) + noise_figure_db; }

ComplexMatrix interference_covariance(const SystemChannels &channels, std::span<const HybridWeights> weights,
                                      std::size_t user, double tx_power_w) {
    check_weights(channels, weights, user);
    const std::size_t nr = channels.at(user, 0).h.rows();
    std::vector<Compensated> re(nr * nr), im(nr * nr);
    for (std::size_t m = 0; m < channels.user_count(); ++m) {
        if (m == user)
            continue;
        const ChannelRealization &link = channels.at(user, channels.serving_tp(m));
        const HybridWeights &w = weights[m];
        const ComplexMatrix g = link.h * (w.f_rf * w.f_bb);
        const double scale = tx_power_w / (w.eta * link.path_loss_linear);
        for (std::size_t i = 0; i < nr; ++i) {
            for (std::size_t j = 0; j < nr; ++j) {
                cdouble acc = 0.0;
                for (std::size_t s = 0; s < g.cols(); ++s)
                    acc += g(i, s) * std::conj(g(j, s));
                re[i * nr + j].add(scale * acc.real());
                im[i * nr + j].add(scale * acc.imag());
            }
        }
    }
    ComplexMatrix d(nr, nr);
    for (std::size_t k = 0; k < nr * nr; ++k)
        d.entries()[k] = {re[k].value(), im[k].value()};
    return hermitian_part(d);
}

SpectralEfficiency spectral_efficiency(const ComplexMatrix &signal, const ComplexMatrix &whitening) {
    if (whitening.rows() != whitening.cols() || signal.rows() != whitening.rows())
        throw DimensionError("spectral_efficiency: signal and whitening dimensions differ");
    const ComplexMatrix q = hermitian_part(whitening);

    SpectralEfficiency out;
    ComplexMatrix l;
    try {
        l = cholesky(q);
    } catch (const DefinitenessError &) {
        ComplexMatrix qr = q;
        const double ridge = ridge_for(q, signal * signal.adjoint());
        for (std::size_t i = 0; i < qr.rows(); ++i)
            qr(i, i) += ridge;
        l = cholesky(qr);
        out.regularized = true;
    }
    // det(I + Q^-1 S S^H) = det(I + M M^H) with M = L^-1 S, Q = L L^H.
    const ComplexMatrix m = solve_lower(l, signal);
    ComplexMatrix g = hermitian_part(m * m.adjoint());
    for (std::size_t i = 0; i < g.rows(); ++i)
        g(i, i) += 1.0;
    out.value = std::max(0.0, log2_det_hpd(g));
    return out;
}

SpectralEfficiency spectral_efficiency(const SystemChannels &channels, std::span<const HybridWeights> weights,
                                       std::size_t user, const ComplexMatrix &interference, double tx_power_w,
                                       double noise_power_w) {
    check_weights(channels, weights, user);
    const HybridWeights &w = weights[user];
    const ChannelRealization &link = channels.at(user, channels.serving_tp(user));
    const ComplexMatrix wt = combined_receiver(w);

    ComplexMatrix signal = adjoint_times(wt, link.h * (w.f_rf * w.f_bb));
    signal *= std::sqrt(tx_power_w / (w.eta * link.path_loss_linear));

    ComplexMatrix cov = interference;
    for (std::size_t i = 0; i < cov.rows(); ++i)
        cov(i, i) += noise_power_w;
    return spectral_efficiency(signal, adjoint_times(wt, cov * wt));
}

PowerDecomposition power_decomposition(const SystemChannels &channels, std::span<const HybridWeights> weights,
                                       std::size_t user, const ComplexMatrix &interference, double tx_power_w) {
    check_weights(channels, weights, user);
    const HybridWeights &w = weights[user];
    const ChannelRealization &link = channels.at(user, channels.serving_tp(user));
    const ComplexMatrix wt = combined_receiver(w);

    PowerDecomposition p;
    p.signal_w = tx_power_w / (w.eta * link.path_loss_linear) * frob_norm_sq(adjoint_times(wt, link.h * (w.f_rf * w.f_bb)));
    p.interference_w = std::max(0.0, trace(adjoint_times(wt, interference * wt)).real());
    return p;
}

std::vector<double> eigenvalue_profile(const ComplexMatrix &h, std::size_t top_n) {
    if (top_n > h.rows())
        throw DimensionError("eigenvalue_profile: top_n exceeds the receive dimension");
    std::vector<double> s = singular_values(h);
    s.resize(h.rows(), 0.0);
    std::vector<double> out(top_n);
    for (std::size_t i = 0; i < top_n; ++i)
        out[i] = s[i] * s[i];
    return out;
}

std::size_t eigen_rank_within(const ComplexMatrix &h, double threshold_db) {
    const std::vector<double> ev = eigenvalue_profile(h, std::min(h.rows(), h.cols()));
    if (ev.empty() || !(ev.front() > 0.0))
        return 0;
    const double floor = ev.front() * std::pow(10.0, -threshold_db / 10.0);
    return static_cast<std::size_t>(std::count_if(ev.begin(), ev.end(), [&](double x) { return x >= floor; }));
}

std::vector<UserResult> evaluate_users(const SystemChannels &channels, std::span<const HybridWeights> weights,
                                       Scheme scheme, std::size_t drop, std::uint64_t seed, double tx_power_w,
                                       double noise_power_w) {
    std::vector<UserResult> out;
    out.reserve(channels.user_count());
    for (std::size_t u = 0; u < channels.user_count(); ++u) {
        const ComplexMatrix d = interference_covariance(channels, weights, u, tx_power_w);
        const SpectralEfficiency se = spectral_efficiency(channels, weights, u, d, tx_power_w, noise_power_w);
        const PowerDecomposition p = power_decomposition(channels, weights, u, d, tx_power_w);
        UserResult r;
        r.drop = drop;
        r.scheme = scheme;
        r.seed = seed;
        r.cell = channels.serving_tp(u);
        r.user = u;
        r.spectral_efficiency = se.value;
        r.signal_power_w = p.signal_w;
        r.interference_power_w = p.interference_w;
        r.regularized = se.regularized;
        out.push_back(r);
    }
    return out;
}

} // namespace mmhbf
