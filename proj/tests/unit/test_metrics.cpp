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
#include "mmhbf/errors.hpp"
#include "mmhbf/metrics.hpp"

#include "test_support.hpp"

#include <gtest/gtest.h>

#include <cmath>

using namespace mmhbf;
using mmhbf::test::naive_adjoint;
using mmhbf::test::naive_frob_sq;
using mmhbf::test::naive_product;
using mmhbf::test::random_gaussian;

namespace {

// K users per cell, 3 cells, random small links (nr x nt).
SystemChannels toy_system(std::size_t k, std::size_t nr, std::size_t nt, Rng &rng) {
    SystemChannels ch;
    ch.users_per_cell = k;
    ch.cells = 3;
    std::uniform_real_distribution<double> pl(1.0, 4.0);
    for (std::size_t i = 0; i < 3 * k * 3; ++i) {
        ChannelRealization l;
        l.h = random_gaussian(nr, nt, rng);
        l.path_loss_linear = pl(rng);
        ch.links.push_back(l);
    }
    return ch;
}

std::vector<HybridWeights> toy_weights(std::size_t users, std::size_t nr, std::size_t nt, std::size_t ns, Rng &rng) {
    std::vector<HybridWeights> w;
    for (std::size_t u = 0; u < users; ++u)
        w.push_back(make_weights(random_gaussian(nt, 3, rng), random_gaussian(3, ns, rng), random_gaussian(nr, 3, rng),
                                 random_gaussian(3, ns, rng)));
    return w;
}

} // namespace

TEST(Metrics, PowerUnits) {
    EXPECT_DOUBLE_EQ(dbm_to_watts(30.0), 1.0);
    EXPECT_NEAR(watts_to_dbm(dbm_to_watts(35.2)), 35.2, 1e-12);
    LinkBudget b;
    EXPECT_NEAR(b.noise_power_dbm(), -84.0, 1e-12);
    EXPECT_NEAR(b.tx_power_w(), std::pow(10.0, 0.52), 1e-12);
}

TEST(Metrics, ScalarSpectralEfficiency) {
    const ComplexMatrix s{{cdouble(3.0, 4.0)}};
    const ComplexMatrix q{{2.0}};
    const SpectralEfficiency se = spectral_efficiency(s, q);
    EXPECT_NEAR(se.value, std::log2(1.0 + 25.0 / 2.0), 1e-14);
    EXPECT_FALSE(se.regularized);
}

TEST(Metrics, DiagonalSpectralEfficiency) {
    const std::vector<double> s{2.0, 0.5};
    const std::vector<double> q{0.5, 0.25};
    const double expected = std::log2(1.0 + 4.0 / 0.5) + std::log2(1.0 + 0.25 / 0.25);
    EXPECT_NEAR(spectral_efficiency(ComplexMatrix::diagonal(s), ComplexMatrix::diagonal(q)).value, expected, 1e-13);
}

TEST(Metrics, DenseSpectralEfficiencyMatchesInverseForm) {
    // det(I + Q^-1 S S^H) for 2x2 via the explicit inverse.
    Rng rng(1);
    const ComplexMatrix s = random_gaussian(2, 2, rng);
    const ComplexMatrix q = test::random_hpd(2, rng);
    const cdouble det_q = q(0, 0) * q(1, 1) - q(0, 1) * q(1, 0);
    ComplexMatrix qi{{q(1, 1), -q(0, 1)}, {-q(1, 0), q(0, 0)}};
    qi *= 1.0 / det_q;
    ComplexMatrix m = naive_product(qi, naive_product(s, naive_adjoint(s)));
    m(0, 0) += 1.0;
    m(1, 1) += 1.0;
    const double expected = std::log2(std::abs(m(0, 0) * m(1, 1) - m(0, 1) * m(1, 0)));
    EXPECT_NEAR(spectral_efficiency(s, q).value, expected, 1e-12);
}

TEST(Metrics, SingularWhiteningIsRegularized) {
    const ComplexMatrix s{{1.0, 0.0}, {0.0, 0.0}};
    const ComplexMatrix q{{1.0, 0.0}, {0.0, 0.0}};
    const SpectralEfficiency se = spectral_efficiency(s, q);
    EXPECT_TRUE(se.regularized);
    EXPECT_NEAR(se.value, 1.0, 1e-9);
    EXPECT_THROW(spectral_efficiency(s, ComplexMatrix(3, 3)), DimensionError);
}

TEST(Metrics, SingleUserCollapsesToLog2OnePlusSnr) {
    // One 1x1 link, unit weights: R = log2(1 + P_t / N_0).
    SystemChannels ch;
    ch.users_per_cell = 1;
    ch.cells = 1;
    ChannelRealization l;
    l.h = ComplexMatrix{{1.0}};
    ch.links.push_back(l);
    const ComplexMatrix one{{1.0}};
    const std::vector<HybridWeights> w{make_weights(one, one, one, one)};
    const double pt = dbm_to_watts(35.2), n0 = dbm_to_watts(-84.0);
    const ComplexMatrix d = interference_covariance(ch, w, 0, pt);
    EXPECT_EQ(d(0, 0), cdouble(0.0));
    EXPECT_NEAR(spectral_efficiency(ch, w, 0, d, pt, n0).value, std::log2(1.0 + pt / n0), 1e-12);
}

TEST(Metrics, InterferenceCovarianceMatchesTermwiseSum) {
    Rng rng(2);
    const SystemChannels ch = toy_system(2, 3, 5, rng);
    const auto w = toy_weights(6, 3, 5, 2, rng);
    const double pt = 1.7;
    for (std::size_t u = 0; u < 6; ++u) {
        ComplexMatrix expected(3, 3);
        for (std::size_t m = 0; m < 6; ++m) {
            if (m == u)
                continue;
            const ChannelRealization &link = ch.at(u, m / 2);
            const ComplexMatrix f = naive_product(w[m].f_rf, w[m].f_bb);
            const double eta = naive_frob_sq(f);
            ComplexMatrix term = naive_product(naive_product(link.h, f), naive_adjoint(naive_product(link.h, f)));
            term *= pt / (eta * link.path_loss_linear);
            expected += term;
        }
        const ComplexMatrix d = interference_covariance(ch, w, u, pt);
        EXPECT_LT(max_abs_diff(d, expected), 1e-12 * frob_norm(expected));
        EXPECT_LT(max_abs_diff(d, naive_adjoint(d)), 1e-300);
    }
}

TEST(Metrics, PowerDecompositionDefinitions) {
    Rng rng(3);
    const SystemChannels ch = toy_system(1, 3, 5, rng);
    const auto w = toy_weights(3, 3, 5, 2, rng);
    const double pt = 2.0;
    const ComplexMatrix d = interference_covariance(ch, w, 1, pt);
    const PowerDecomposition p = power_decomposition(ch, w, 1, d, pt);

    const ComplexMatrix wt = naive_product(w[1].w_rf, w[1].w_bb);
    const ChannelRealization &link = ch.at(1, 1);
    const ComplexMatrix f = naive_product(w[1].f_rf, w[1].f_bb);
    const double sig = pt / (naive_frob_sq(f) * link.path_loss_linear) *
                       naive_frob_sq(naive_product(naive_adjoint(wt), naive_product(link.h, f)));
    EXPECT_NEAR(p.signal_w, sig, 1e-12 * sig);
    const ComplexMatrix wdw = naive_product(naive_adjoint(wt), naive_product(d, wt));
    EXPECT_NEAR(p.interference_w, (wdw(0, 0) + wdw(1, 1)).real(), 1e-12 * p.interference_w);
}

TEST(Metrics, BaselineEigenmodeRateWithoutInterference) {
    // Equal power on the top two modes: sum_j log2(1 + P_t s_j^2 / (2 PL N_0)).
    Rng rng(4);
    SystemChannels ch;
    ch.users_per_cell = 1;
    ch.cells = 1;
    ChannelRealization l;
    l.h = random_gaussian(4, 4, rng);
    l.path_loss_linear = 3.0;
    ch.links.push_back(l);
    const ComplexMatrix id = ComplexMatrix::identity(4);
    ComplexMatrix eff = l.h;
    eff *= 1.0 / std::sqrt(l.path_loss_linear);
    const BasebandPair bb = baseline_scheme(eff, 2);
    const std::vector<HybridWeights> w{make_weights(id, bb.f_bb, id, bb.w_bb)};
    const double pt = 1.0, n0 = 0.05;
    const ComplexMatrix d = interference_covariance(ch, w, 0, pt);
    const double got = spectral_efficiency(ch, w, 0, d, pt, n0).value;

    const std::vector<double> s = singular_values(l.h);
    const double expected = std::log2(1.0 + pt * s[0] * s[0] / (2.0 * 3.0 * n0)) +
                            std::log2(1.0 + pt * s[1] * s[1] / (2.0 * 3.0 * n0));
    EXPECT_NEAR(got, expected, 1e-10);
}

TEST(Metrics, EigenvalueProfileAndRank) {
    const std::vector<double> d{10.0, 2.0, 0.05};
    const ComplexMatrix h = ComplexMatrix::diagonal(d);
    const std::vector<double> ev = eigenvalue_profile(h, 3);
    EXPECT_NEAR(ev[0], 100.0, 1e-12);
    EXPECT_NEAR(ev[1], 4.0, 1e-12);
    EXPECT_NEAR(ev[2], 0.0025, 1e-14);
    EXPECT_EQ(eigen_rank_within(h, 20.0), 2u);
    EXPECT_EQ(eigen_rank_within(h, 50.0), 3u);
    EXPECT_THROW(eigenvalue_profile(h, 4), DimensionError);

    // Wide matrix: more eigenvalues requested than columns pads with zeros.
    const ComplexMatrix row{{3.0, cdouble(0.0, 4.0)}};
    EXPECT_NEAR(eigenvalue_profile(row.adjoint(), 2)[1], 0.0, 1e-300);
    EXPECT_NEAR(eigenvalue_profile(row, 1)[0], 25.0, 1e-12);
}

TEST(Metrics, EvaluateUsersFillsRecords) {
    Rng rng(5);
    const SystemChannels ch = toy_system(2, 3, 5, rng);
    const auto w = toy_weights(6, 3, 5, 2, rng);
    const auto rec = evaluate_users(ch, w, Scheme::Lsp, 7, 99, 1.0, 0.1);
    ASSERT_EQ(rec.size(), 6u);
    for (std::size_t u = 0; u < 6; ++u) {
        EXPECT_EQ(rec[u].user, u);
        EXPECT_EQ(rec[u].cell, u / 2);
        EXPECT_EQ(rec[u].drop, 7u);
        EXPECT_EQ(rec[u].seed, 99u);
        EXPECT_EQ(rec[u].scheme, Scheme::Lsp);
        EXPECT_GT(rec[u].spectral_efficiency, 0.0);
        EXPECT_GT(rec[u].interference_power_w, 0.0);
    }
    EXPECT_THROW(evaluate_users(ch, std::span(w).first(5), Scheme::Lsp, 0, 0, 1.0, 0.1), DimensionError);
}
