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

#include "mmhbf/errors.hpp"
#include "mmhbf/linalg.hpp"

#include "test_support.hpp"

#include <gtest/gtest.h>

#include <algorithm>
#include <cmath>

using namespace mmhbf;
using mmhbf::test::naive_adjoint;
using mmhbf::test::naive_frob_sq;
using mmhbf::test::naive_product;
using mmhbf::test::random_gaussian;
using mmhbf::test::random_hpd;

namespace {

// Closed-form eigenvalues of a 2x2 Hermitian matrix, descending.
std::array<double, 2> eig2(const ComplexMatrix &a) {
    const double p = 0.5 * (a(0, 0).real() + a(1, 1).real());
    const double q = 0.5 * (a(0, 0).real() - a(1, 1).real());
    const double r = std::sqrt(q * q + std::norm(a(0, 1)));
    return {p + r, p - r};
}

ComplexMatrix diag_of(std::span<const double> s) { return ComplexMatrix::diagonal(s); }

} // namespace

TEST(Linalg, ProductMatchesNaiveLoop) {
    Rng rng(1);
    const ComplexMatrix a = random_gaussian(5, 3, rng);
    const ComplexMatrix b = random_gaussian(3, 4, rng);
    EXPECT_LT(max_abs_diff(a * b, naive_product(a, b)), 1e-14);
    EXPECT_LT(max_abs_diff(adjoint_times(a, a * b), naive_product(naive_adjoint(a), naive_product(a, b))), 1e-13);
    EXPECT_NEAR(frob_norm_sq(a), naive_frob_sq(a), 1e-13);
}

TEST(Linalg, StackingAndColumns) {
    const ComplexMatrix a{{1.0, 2.0}, {3.0, 4.0}};
    const ComplexMatrix b{{5.0}, {6.0}};
    const ComplexMatrix blocks[] = {a, b};
    const ComplexMatrix h = hstack(blocks);
    ASSERT_EQ(h.cols(), 3u);
    EXPECT_EQ(h(1, 2), cdouble(6.0));
    const ComplexMatrix rows[] = {a, a};
    const ComplexMatrix v = vstack(rows);
    ASSERT_EQ(v.rows(), 4u);
    EXPECT_EQ(v(3, 1), cdouble(4.0));
    EXPECT_EQ(h.cols_range(1, 2).col(1), b);
}

TEST(Linalg, RowVectorNorm) {
    const ComplexMatrix a{{3.0, cdouble(0.0, 4.0)}};
    const std::vector<double> s = singular_values(a);
    ASSERT_EQ(s.size(), 1u);
    EXPECT_NEAR(s[0], 5.0, 1e-14);
    EXPECT_NEAR(frob_norm(a), 5.0, 1e-14);
}

TEST(Linalg, SvdReconstructsAndIsOrthonormal) {
    Rng rng(2);
    for (const auto [r, c] : {std::pair{7, 4}, std::pair{4, 7}, std::pair{6, 6}, std::pair{1, 5}}) {
        const ComplexMatrix a = random_gaussian(r, c, rng);
        const SvdResult d = svd(a);
        const std::size_t k = std::min(r, c);
        ASSERT_EQ(d.s.size(), k);
        EXPECT_TRUE(std::is_sorted(d.s.rbegin(), d.s.rend()));
        const ComplexMatrix rec = naive_product(naive_product(d.u, diag_of(d.s)), naive_adjoint(d.v));
        EXPECT_LT(max_abs_diff(rec, a), 1e-12);
        EXPECT_LT(max_abs_diff(naive_product(naive_adjoint(d.u), d.u), ComplexMatrix::identity(k)), 1e-12);
        EXPECT_LT(max_abs_diff(naive_product(naive_adjoint(d.v), d.v), ComplexMatrix::identity(k)), 1e-12);
    }
}

TEST(Linalg, SingularValuesMatchClosedFormGram) {
    // Squared singular values of a 3x2 matrix are the eigenvalues of its 2x2 Gram.
    Rng rng(3);
    for (int trial = 0; trial < 20; ++trial) {
        const ComplexMatrix a = random_gaussian(3, 2, rng);
        const auto ev = eig2(naive_product(naive_adjoint(a), a));
        const std::vector<double> s = singular_values(a);
        EXPECT_NEAR(s[0] * s[0], ev[0], 1e-12 * ev[0]);
        EXPECT_NEAR(s[1] * s[1], ev[1], 1e-11 * ev[0]);
    }
}

TEST(Linalg, SvdOfRankDeficientMatrix) {
    Rng rng(4);
    const ComplexMatrix x = random_gaussian(6, 1, rng);
    const ComplexMatrix y = random_gaussian(1, 4, rng);
    const std::vector<double> s = singular_values(naive_product(x, y));
    EXPECT_NEAR(s[0], std::sqrt(naive_frob_sq(x) * naive_frob_sq(y)), 1e-12);
    EXPECT_EQ(numerical_rank(s, 1e-10), 1u);
}

TEST(Linalg, HermitianEigMatchesClosedForm) {
    const ComplexMatrix a{{2.0, cdouble(1.0, 1.0)}, {cdouble(1.0, -1.0), -1.0}};
    const auto ev = eig2(a);
    const EigResult e = hermitian_eig(a);
    EXPECT_NEAR(e.values[0], ev[0], 1e-14);
    EXPECT_NEAR(e.values[1], ev[1], 1e-14);
}

TEST(Linalg, HermitianEigResidual) {
    Rng rng(5);
    const ComplexMatrix g = random_gaussian(6, 6, rng);
    const ComplexMatrix a = hermitian_part(g);
    const EigResult e = hermitian_eig(a);
    double tr = 0.0;
    for (std::size_t j = 0; j < 6; ++j) {
        const ComplexMatrix v = e.vectors.col(j);
        ComplexMatrix lv = v;
        lv *= e.values[j];
        EXPECT_LT(max_abs_diff(naive_product(a, v), lv), 1e-12);
        tr += e.values[j];
    }
    EXPECT_NEAR(tr, trace(a).real(), 1e-12);
}

TEST(Linalg, CholeskyFactorsAndRejectsIndefinite) {
    Rng rng(6);
    const ComplexMatrix b = random_hpd(5, rng);
    const ComplexMatrix l = cholesky(b);
    for (std::size_t i = 0; i < 5; ++i)
        for (std::size_t j = i + 1; j < 5; ++j)
            EXPECT_EQ(l(i, j), cdouble(0.0));
    EXPECT_LT(max_abs_diff(naive_product(l, naive_adjoint(l)), b), 1e-12);

    const ComplexMatrix indefinite{{1.0, 2.0}, {2.0, 1.0}};
    EXPECT_THROW(cholesky(indefinite), DefinitenessError);
}

TEST(Linalg, TriangularSolves) {
    Rng rng(7);
    const ComplexMatrix l = cholesky(random_hpd(4, rng));
    const ComplexMatrix rhs = random_gaussian(4, 2, rng);
    EXPECT_LT(max_abs_diff(naive_product(l, solve_lower(l, rhs)), rhs), 1e-12);
    EXPECT_LT(max_abs_diff(naive_product(naive_adjoint(l), solve_lower_adjoint(l, rhs)), rhs), 1e-12);
}

TEST(Linalg, GeneralizedEigenvaluesAreDeterminantRoots) {
    // det(A - lambda B) = det(B) l^2 - (a11 b22 + a22 b11 - 2 Re(a12 conj b12)) l + det(A)
    Rng rng(8);
    for (int trial = 0; trial < 20; ++trial) {
        const ComplexMatrix a = hermitian_part(random_gaussian(2, 2, rng));
        const ComplexMatrix b = random_hpd(2, rng);
        const double det_a = a(0, 0).real() * a(1, 1).real() - std::norm(a(0, 1));
        const double det_b = b(0, 0).real() * b(1, 1).real() - std::norm(b(0, 1));
        const double mid = a(0, 0).real() * b(1, 1).real() + a(1, 1).real() * b(0, 0).real() -
                           2.0 * (a(0, 1) * std::conj(b(0, 1))).real();
        const double disc = std::sqrt(mid * mid - 4.0 * det_a * det_b);
        const double hi = (mid + disc) / (2.0 * det_b);
        const double lo = (mid - disc) / (2.0 * det_b);

        const EigResult e = herm_gen_eig(a, b);
        EXPECT_NEAR(e.values[0], hi, 1e-10 * (1.0 + std::abs(hi)));
        EXPECT_NEAR(e.values[1], lo, 1e-10 * (1.0 + std::abs(hi)));
        const ComplexMatrix gram = naive_product(naive_product(naive_adjoint(e.vectors), b), e.vectors);
        EXPECT_LT(max_abs_diff(gram, ComplexMatrix::identity(2)), 1e-12);
    }
}

TEST(Linalg, GeneralizedEigenvectorsSatisfyPencil) {
    Rng rng(9);
    const ComplexMatrix h = random_gaussian(4, 4, rng);
    const ComplexMatrix a = hermitian_part(adjoint_times(h, h));
    const ComplexMatrix b = random_hpd(4, rng);
    const EigResult e = herm_gen_eig(a, b);
    for (std::size_t j = 0; j < 4; ++j) {
        const ComplexMatrix t = e.vectors.col(j);
        ComplexMatrix rhs = naive_product(b, t);
        rhs *= e.values[j];
        EXPECT_LT(max_abs_diff(naive_product(a, t), rhs), 1e-10 * e.values[0]);
    }
}

TEST(Linalg, LogDetOfDiagonal) {
    const std::vector<double> d{2.0, 8.0, 0.5};
    EXPECT_NEAR(log2_det_hpd(ComplexMatrix::diagonal(d)), 3.0, 1e-14);
}

TEST(Linalg, PseudoInverseIdentities) {
    Rng rng(10);
    const ComplexMatrix a = naive_product(random_gaussian(5, 2, rng), random_gaussian(2, 4, rng));
    const ComplexMatrix p = pinv(a);
    EXPECT_LT(max_abs_diff(naive_product(naive_product(a, p), a), a), 1e-11);
    EXPECT_LT(max_abs_diff(naive_product(naive_product(p, a), p), p), 1e-11);
}

TEST(Linalg, NumericalRankThreshold) {
    const std::vector<double> s{1.0, 1e-9, 1e-11};
    EXPECT_EQ(numerical_rank(s, 1e-10), 2u);
    EXPECT_EQ(numerical_rank(std::vector<double>{}, 1e-10), 0u);
}
