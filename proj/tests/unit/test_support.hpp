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

#ifndef MMHBF_TEST_SUPPORT_HPP
#define MMHBF_TEST_SUPPORT_HPP

#include "mmhbf/linalg.hpp"
#include "mmhbf/rng.hpp"

#include <random>

namespace mmhbf::test {

// i.i.d. CN(0, 1) entries
inline ComplexMatrix random_gaussian(std::size_t rows, std::size_t cols, Rng &rng) {
    std::normal_distribution<double> n(0.0, std::sqrt(0.5));
    ComplexMatrix m(rows, cols);
    for (auto &x : m.entries())
        x = {n(rng), n(rng)};
    return m;
}

inline ComplexMatrix random_hpd(std::size_t n, Rng &rng) {
    const ComplexMatrix g = random_gaussian(n, n, rng);
    ComplexMatrix b = adjoint_times(g, g);
    b += ComplexMatrix::identity(n);
    return hermitian_part(b);
}

// Straight triple loop, kept independent of the library product.
inline ComplexMatrix naive_product(const ComplexMatrix &a, const ComplexMatrix &b) {
    ComplexMatrix c(a.rows(), b.cols());
    for (std::size_t i = 0; i < a.rows(); ++i)
        for (std::size_t j = 0; j < b.cols(); ++j) {
            cdouble acc{};
            for (std::size_t k = 0; k < a.cols(); ++k)
                acc += a(i, k) * b(k, j);
            c(i, j) = acc;
        }
    return c;
}

inline ComplexMatrix naive_adjoint(const ComplexMatrix &a) {
    ComplexMatrix c(a.cols(), a.rows());
    for (std::size_t i = 0; i < a.rows(); ++i)
        for (std::size_t j = 0; j < a.cols(); ++j)
            c(j, i) = std::conj(a(i, j));
    return c;
}

inline double naive_frob_sq(const ComplexMatrix &a) {
    double s = 0.0;
    for (std::size_t i = 0; i < a.rows(); ++i)
        for (std::size_t j = 0; j < a.cols(); ++j)
            s += std::norm(a(i, j));
    return s;
}

} // namespace mmhbf::test

#endif
