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

#ifndef MMHBF_LINALG_HPP
#define MMHBF_LINALG_HPP

#include <complex>
#include <cstddef>
#include <initializer_list>
#include <span>
#include <vector>

namespace mmhbf {

using cdouble = std::complex<double>;

// Dense complex matrix, row-major storage.
class ComplexMatrix {
  public:
    ComplexMatrix() = default;
    ComplexMatrix(std::size_t rows, std::size_t cols);
    ComplexMatrix(std::size_t rows, std::size_t cols, std::vector<cdouble> entries);
    ComplexMatrix(std::initializer_list<std::initializer_list<cdouble>> rows);

    static ComplexMatrix zeros(std::size_t rows, std::size_t cols) { return {rows, cols}; }
    static ComplexMatrix identity(std::size_t n);
    static ComplexMatrix diagonal(std::span<const double> d);
    static ComplexMatrix column(std::span<const cdouble> v);

    std::size_t rows() const noexcept { return rows_; }
    std::size_t cols() const noexcept { return cols_; }
    std::size_t size() const noexcept { return data_.size(); }
    bool empty() const noexcept { return data_.empty(); }

    cdouble &operator()(std::size_t r, std::size_t c) noexcept { return data_[r * cols_ + c]; }
    const cdouble &operator()(std::size_t r, std::size_t c) const noexcept { return data_[r * cols_ + c]; }

    std::span<cdouble> entries() noexcept { return data_; }
    std::span<const cdouble> entries() const noexcept { return data_; }
    std::span<cdouble> row_span(std::size_t r) noexcept { return {data_.data() + r * cols_, cols_}; }
    std::span<const cdouble> row_span(std::size_t r) const noexcept { return {data_.data() + r * cols_, cols_}; }

    ComplexMatrix col(std::size_t c) const;
    // Columns [first, first + count).
    ComplexMatrix cols_range(std::size_t first, std::size_t count) const;
    void set_col(std::size_t c, const ComplexMatrix &v);

    ComplexMatrix adjoint() const;
    ComplexMatrix transpose() const;

    ComplexMatrix &operator+=(const ComplexMatrix &o);
    ComplexMatrix &operator-=(const ComplexMatrix &o);
    ComplexMatrix &operator*=(cdouble s);

    friend bool operator==(const ComplexMatrix &a, const ComplexMatrix &b) = default;

  private:
    std::size_t rows_ = 0;
    std::size_t cols_ = 0;
    std::vector<cdouble> data_;
};

ComplexMatrix operator+(ComplexMatrix a, const ComplexMatrix &b);
ComplexMatrix operator-(ComplexMatrix a, const ComplexMatrix &b);
ComplexMatrix operator*(const ComplexMatrix &a, const ComplexMatrix &b);
ComplexMatrix operator*(cdouble s, ComplexMatrix a);

// a^H * b without materializing the adjoint.
ComplexMatrix adjoint_times(const ComplexMatrix &a, const ComplexMatrix &b);

ComplexMatrix hstack(std::span<const ComplexMatrix> blocks);
ComplexMatrix vstack(std::span<const ComplexMatrix> blocks);

double frob_norm(const ComplexMatrix &a);
double frob_norm_sq(const ComplexMatrix &a);
cdouble trace(const ComplexMatrix &a);
double max_abs_diff(const ComplexMatrix &a, const ComplexMatrix &b);

// (A + A^H) / 2
ComplexMatrix hermitian_part(const ComplexMatrix &a);

struct SvdResult {
    ComplexMatrix u;       // rows x k, orthonormal columns
    std::vector<double> s; // k = min(rows, cols), descending
    ComplexMatrix v;       // cols x k, orthonormal columns
};

/// Thin SVD by one-sided Jacobi rotations. A = U diag(s) V^H.
/// Throws ConvergenceError if the sweep cap is reached.
SvdResult svd(const ComplexMatrix &a);

std::vector<double> singular_values(const ComplexMatrix &a);

// Count of singular values above rel_tol * largest.
std::size_t numerical_rank(std::span<const double> singular_values, double rel_tol);

struct EigResult {
    std::vector<double> values; // descending
    ComplexMatrix vectors;      // column j pairs with values[j]
};

/// Eigendecomposition of a Hermitian matrix by cyclic Jacobi rotations.
EigResult hermitian_eig(const ComplexMatrix &a);

/// Lower-triangular L with L L^H = B. Throws DefinitenessError when B is not
/// numerically positive definite.
ComplexMatrix cholesky(const ComplexMatrix &b);

// Solves L X = B for lower-triangular L.
ComplexMatrix solve_lower(const ComplexMatrix &l, const ComplexMatrix &b);
// Solves L^H X = B for lower-triangular L.
ComplexMatrix solve_lower_adjoint(const ComplexMatrix &l, const ComplexMatrix &b);

/// Generalized Hermitian-definite eigenproblem A t = lambda B t.
///
/// Reduces through B = L L^H to the standard problem on L^-1 A L^-H.
/// Eigenvalues come back descending and the eigenvector columns are
/// B-orthonormal (T^H B T = I).
EigResult herm_gen_eig(const ComplexMatrix &a, const ComplexMatrix &b);

// log2 det of a Hermitian positive-definite matrix.
double log2_det_hpd(const ComplexMatrix &a);

// Moore-Penrose pseudo-inverse, singular values below rcond * max dropped.
ComplexMatrix pinv(const ComplexMatrix &a, double rcond = 1e-12);

} // namespace mmhbf

#endif
