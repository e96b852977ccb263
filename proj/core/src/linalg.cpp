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

#include "mmhbf/linalg.hpp"

#include "mmhbf/errors.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <string>

namespace mmhbf {

namespace {

constexpr double kEps = std::numeric_limits<double>::epsilon();
constexpr int kMaxJacobiSweeps = 80;

void require_same_shape(const ComplexMatrix &a, const ComplexMatrix &b, const char *op) {
    if (a.rows() != b.rows() || a.cols() != b.cols())
        throw DimensionError(std::string(op) + ": shape mismatch " + std::to_string(a.rows()) + "x" +
                             std::to_string(a.cols()) + " vs " + std::to_string(b.rows()) + "x" +
                             std::to_string(b.cols()));
}

std::vector<std::size_t> descending_order(const std::vector<double> &v) {
    std::vector<std::size_t> idx(v.size());
    std::iota(idx.begin(), idx.end(), 0);
    std::stable_sort(idx.begin(), idx.end(), [&](std::size_t a, std::size_t b) { return v[a] > v[b]; });
    return idx;
}

// One-sided Jacobi on the columns of a tall (m >= n) matrix held column-wise.
SvdResult svd_tall(const ComplexMatrix &a) {
    const std::size_t m = a.rows();
    const std::size_t n = a.cols();

    std::vector<std::vector<cdouble>> w(n, std::vector<cdouble>(m));
    for (std::size_t i = 0; i < m; ++i)
        for (std::size_t j = 0; j < n; ++j)
            w[j][i] = a(i, j);
    std::vector<std::vector<cdouble>> v(n, std::vector<cdouble>(n, 0.0));
    for (std::size_t j = 0; j < n; ++j)
        v[j][j] = 1.0;

    bool converged = n < 2;
    for (int sweep = 0; sweep < kMaxJacobiSweeps && !converged; ++sweep) {
        bool rotated = false;
        for (std::size_t p = 0; p + 1 < n; ++p) {
            for (std::size_t q = p + 1; q < n; ++q) {
                double alpha = 0.0, beta = 0.0;
                cdouble gamma = 0.0;
                const auto &wp = w[p];
                const auto &wq = w[q];
                for (std::size_t i = 0; i < m; ++i) {
                    alpha += std::norm(wp[i]);
                    beta += std::norm(wq[i]);
                    gamma += std::conj(wp[i]) * wq[i];
                }
                const double g = std::abs(gamma);
                if (alpha == 0.0 || beta == 0.0 || g <= 4.0 * kEps * std::sqrt(alpha * beta))
                    continue;
                rotated = true;
                const cdouble phase = gamma / g;
                const double zeta = (beta - alpha) / (2.0 * g);
                const double t = (zeta >= 0.0 ? 1.0 : -1.0) / (std::abs(zeta) + std::sqrt(1.0 + zeta * zeta));
                const double c = 1.0 / std::sqrt(1.0 + t * t);
                const double s = c * t;
                // [p', q'] = [c p - s e^{-i phi} q, s e^{i phi} p + c q]
                const cdouble sq = s * std::conj(phase);
                const cdouble sp = s * phase;
                auto rotate = [&](std::vector<cdouble> &xp, std::vector<cdouble> &xq) {
                    for (std::size_t i = 0; i < xp.size(); ++i) {
                        const cdouble a_p = xp[i];
                        const cdouble a_q = xq[i];
                        xp[i] = c * a_p - sq * a_q;
                        xq[i] = sp * a_p + c * a_q;
                    }
                };
                rotate(w[p], w[q]);
                rotate(v[p], v[q]);
            }
        }
        converged = !rotated;
    }
    if (!converged)
        throw ConvergenceError("svd: one-sided Jacobi did not converge in " + std::to_string(kMaxJacobiSweeps) +
                               " sweeps");

    std::vector<double> norms(n);
    for (std::size_t j = 0; j < n; ++j) {
        double acc = 0.0;
        for (const auto &x : w[j])
            acc += std::norm(x);
        norms[j] = std::sqrt(acc);
    }
    const auto order = descending_order(norms);

    SvdResult out{ComplexMatrix(m, n), std::vector<double>(n), ComplexMatrix(n, n)};
    std::vector<std::size_t> deficient;
    for (std::size_t k = 0; k < n; ++k) {
        const std::size_t j = order[k];
        out.s[k] = norms[j];
        for (std::size_t i = 0; i < n; ++i)
            out.v(i, k) = v[j][i];
        if (norms[j] > std::numeric_limits<double>::min()) {
            for (std::size_t i = 0; i < m; ++i)
                out.u(i, k) = w[j][i] / norms[j];
        } else {
            out.s[k] = 0.0;
            deficient.push_back(k);
        }
    }

    // Complete U with an orthonormal basis of the remaining subspace.
    std::size_t basis = 0;
    for (const std::size_t k : deficient) {
        while (basis < m) {
            std::vector<cdouble> cand(m, 0.0);
            cand[basis++] = 1.0;
            for (int pass = 0; pass < 2; ++pass) {
                for (std::size_t c = 0; c < n; ++c) {
                    if (c == k || (std::find(deficient.begin(), deficient.end(), c) != deficient.end() && c > k))
                        continue;
                    cdouble proj = 0.0;
                    for (std::size_t i = 0; i < m; ++i)
                        proj += std::conj(out.u(i, c)) * cand[i];
                    for (std::size_t i = 0; i < m; ++i)
                        cand[i] -= proj * out.u(i, c);
                }
            }
            double nrm = 0.0;
            for (const auto &x : cand)
                nrm += std::norm(x);
            nrm = std::sqrt(nrm);
            if (nrm > 0.5) {
                for (std::size_t i = 0; i < m; ++i)
                    out.u(i, k) = cand[i] / nrm;
                break;
            }
        }
    }
    return out;
}

} // namespace

ComplexMatrix::ComplexMatrix(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols), data_(rows * cols) {}

ComplexMatrix::ComplexMatrix(std::size_t rows, std::size_t cols, std::vector<cdouble> entries)
    : rows_(rows), cols_(cols), data_(std::move(entries)) {
    if (data_.size() != rows_ * cols_)
        throw DimensionError("ComplexMatrix: entry count " + std::to_string(data_.size()) + " != " +
                             std::to_string(rows_) + "x" + std::to_string(cols_));
}

ComplexMatrix::ComplexMatrix(std::initializer_list<std::initializer_list<cdouble>> rows) {
    rows_ = rows.size();
    cols_ = rows_ == 0 ? 0 : rows.begin()->size();
    data_.reserve(rows_ * cols_);
    for (const auto &r : rows) {
        if (r.size() != cols_)
            throw DimensionError("ComplexMatrix: ragged initializer");
        data_.insert(data_.end(), r.begin(), r.end());
    }
}

ComplexMatrix ComplexMatrix::identity(std::size_t n) {
    ComplexMatrix m(n, n);
    for (std::size_t i = 0; i < n; ++i)
        m(i, i) = 1.0;
    return m;
}

ComplexMatrix ComplexMatrix::diagonal(std::span<const double> d) {
    ComplexMatrix m(d.size(), d.size());
    for (std::size_t i = 0; i < d.size(); ++i)
        m(i, i) = d[i];
    return m;
}

ComplexMatrix ComplexMatrix::column(std::span<const cdouble> v) {
    return {v.size(), 1, std::vector<cdouble>(v.begin(), v.end())};
}

ComplexMatrix ComplexMatrix::col(std::size_t c) const { return cols_range(c, 1); }

ComplexMatrix ComplexMatrix::cols_range(std::size_t first, std::size_t count) const {
    if (first + count > cols_)
        throw DimensionError("cols_range: column range out of bounds");
    ComplexMatrix out(rows_, count);
    for (std::size_t r = 0; r < rows_; ++r)
        for (std::size_t c = 0; c < count; ++c)
            out(r, c) = (*this)(r, first + c);
    return out;
}

void ComplexMatrix::set_col(std::size_t c, const ComplexMatrix &v) {
    if (c >= cols_ || v.rows() != rows_ || v.cols() != 1)
        throw DimensionError("set_col: shape mismatch");
    for (std::size_t r = 0; r < rows_; ++r)
        (*this)(r, c) = v(r, 0);
}

ComplexMatrix ComplexMatrix::adjoint() const {
    ComplexMatrix out(cols_, rows_);
    for (std::size_t r = 0; r < rows_; ++r)
        for (std::size_t c = 0; c < cols_; ++c)
            out(c, r) = std::conj((*this)(r, c));
    return out;
}

ComplexMatrix ComplexMatrix::transpose() const {
    ComplexMatrix out(cols_, rows_);
    for (std::size_t r = 0; r < rows_; ++r)
        for (std::size_t c = 0; c < cols_; ++c)
            out(c, r) = (*this)(r, c);
    return out;
}

ComplexMatrix &ComplexMatrix::operator+=(const ComplexMatrix &o) {
    require_same_shape(*this, o, "operator+=");
    for (std::size_t i = 0; i < data_.size(); ++i)
        data_[i] += o.data_[i];
    return *this;
}

ComplexMatrix &ComplexMatrix::operator-=(const ComplexMatrix &o) {
    require_same_shape(*this, o, "operator-=");
    for (std::size_t i = 0; i < data_.size(); ++i)
        data_[i] -= o.data_[i];
    return *this;
}

ComplexMatrix &ComplexMatrix::operator*=(cdouble s) {
    for (auto &x : data_)
        x *= s;
    return *this;
}

ComplexMatrix operator+(ComplexMatrix a, const ComplexMatrix &b) { return a += b; }
ComplexMatrix operator-(ComplexMatrix a, const ComplexMatrix &b) { return a -= b; }
ComplexMatrix operator*(cdouble s, ComplexMatrix a) { return a *= s; }

ComplexMatrix operator*(const ComplexMatrix &a, const ComplexMatrix &b) {
    if (a.cols() != b.rows())
        throw DimensionError("operator*: inner dimensions " + std::to_string(a.cols()) + " vs " +
                             std::to_string(b.rows()));
    ComplexMatrix out(a.rows(), b.cols());
    for (std::size_t i = 0; i < a.rows(); ++i) {
        auto orow = out.row_span(i);
        for (std::size_t k = 0; k < a.cols(); ++k) {
            const cdouble aik = a(i, k);
            if (aik == 0.0)
                continue;
            const auto brow = b.row_span(k);
            for (std::size_t j = 0; j < brow.size(); ++j)
                orow[j] += aik * brow[j];
        }
    }
    return out;
}

ComplexMatrix adjoint_times(const ComplexMatrix &a, const ComplexMatrix &b) {
    if (a.rows() != b.rows())
        throw DimensionError("adjoint_times: row counts differ");
    ComplexMatrix out(a.cols(), b.cols());
    for (std::size_t k = 0; k < a.rows(); ++k) {
        const auto arow = a.row_span(k);
        const auto brow = b.row_span(k);
        for (std::size_t i = 0; i < arow.size(); ++i) {
            const cdouble aki = std::conj(arow[i]);
            if (aki == 0.0)
                continue;
            auto orow = out.row_span(i);
            for (std::size_t j = 0; j < brow.size(); ++j)
                orow[j] += aki * brow[j];
        }
    }
    return out;
}

ComplexMatrix hstack(std::span<const ComplexMatrix> blocks) {
    if (blocks.empty())
        return {};
    const std::size_t rows = blocks.front().rows();
    std::size_t cols = 0;
    for (const auto &b : blocks) {
        if (b.rows() != rows)
            throw DimensionError("hstack: row counts differ");
        cols += b.cols();
    }
    ComplexMatrix out(rows, cols);
    std::size_t offset = 0;
    for (const auto &b : blocks) {
        for (std::size_t r = 0; r < rows; ++r)
            for (std::size_t c = 0; c < b.cols(); ++c)
                out(r, offset + c) = b(r, c);
        offset += b.cols();
    }
    return out;
}

ComplexMatrix vstack(std::span<const ComplexMatrix> blocks) {
    if (blocks.empty())
        return {};
    const std::size_t cols = blocks.front().cols();
    std::vector<cdouble> data;
    std::size_t rows = 0;
    for (const auto &b : blocks) {
        if (b.cols() != cols)
            throw DimensionError("vstack: column counts differ");
        data.insert(data.end(), b.entries().begin(), b.entries().end());
        rows += b.rows();
    }
    return {rows, cols, std::move(data)};
}

double frob_norm_sq(const ComplexMatrix &a) {
    double acc = 0.0;
    for (const auto &x : a.entries())
        acc += std::norm(x);
    return acc;
}

double frob_norm(const ComplexMatrix &a) { return std::sqrt(frob_norm_sq(a)); }

cdouble trace(const ComplexMatrix &a) {
    cdouble acc = 0.0;
    for (std::size_t i = 0; i < std::min(a.rows(), a.cols()); ++i)
        acc += a(i, i);
    return acc;
}

double max_abs_diff(const ComplexMatrix &a, const ComplexMatrix &b) {
    require_same_shape(a, b, "max_abs_diff");
    double m = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i)
        m = std::max(m, std::abs(a.entries()[i] - b.entries()[i]));
    return m;
}

ComplexMatrix hermitian_part(const ComplexMatrix &a) {
    if (a.rows() != a.cols())
        throw DimensionError("hermitian_part: matrix not square");
    ComplexMatrix out(a.rows(), a.cols());
    for (std::size_t i = 0; i < a.rows(); ++i) {
        out(i, i) = a(i, i).real();
        for (std::size_t j = i + 1; j < a.cols(); ++j) {
            const cdouble x = 0.5 * (a(i, j) + std::conj(a(j, i)));
            out(i, j) = x;
            out(j, i) = std::conj(x);
        }
    }
    return out;
}

SvdResult svd(const ComplexMatrix &a) {
    if (a.empty())
        throw DimensionError("svd: empty matrix");
    if (a.rows() >= a.cols())
        return svd_tall(a);
    auto t = svd_tall(a.adjoint());
    return {std::move(t.v), std::move(t.s), std::move(t.u)};
}

std::vector<double> singular_values(const ComplexMatrix &a) { return svd(a).s; }

std::size_t numerical_rank(std::span<const double> sv, double rel_tol) {
    if (sv.empty())
        return 0;
    const double top = *std::max_element(sv.begin(), sv.end());
    if (top <= 0.0)
        return 0;
    return static_cast<std::size_t>(std::count_if(sv.begin(), sv.end(), [&](double s) { return s > rel_tol * top; }));
}

EigResult hermitian_eig(const ComplexMatrix &input) {
    if (input.rows() != input.cols())
        throw DimensionError("hermitian_eig: matrix not square");
    const std::size_t n = input.rows();
    ComplexMatrix a = hermitian_part(input);
    ComplexMatrix v = ComplexMatrix::identity(n);

    const double total = frob_norm_sq(a);
    auto off_norm = [&] {
        double acc = 0.0;
        for (std::size_t p = 0; p < n; ++p)
            for (std::size_t q = p + 1; q < n; ++q)
                acc += std::norm(a(p, q));
        return 2.0 * acc;
    };

    int sweep = 0;
    while (off_norm() > 1e-30 * total) {
        if (++sweep > kMaxJacobiSweeps)
            throw ConvergenceError("hermitian_eig: Jacobi did not converge in " + std::to_string(kMaxJacobiSweeps) +
                                   " sweeps");
        for (std::size_t p = 0; p + 1 < n; ++p) {
            for (std::size_t q = p + 1; q < n; ++q) {
                const double g = std::abs(a(p, q));
                if (g == 0.0)
                    continue;
                const cdouble phase = a(p, q) / g;
                const double app = a(p, p).real();
                const double aqq = a(q, q).real();
                const double tau = (aqq - app) / (2.0 * g);
                const double t = (tau >= 0.0 ? 1.0 : -1.0) / (std::abs(tau) + std::sqrt(1.0 + tau * tau));
                const double c = 1.0 / std::sqrt(1.0 + t * t);
                const double s = c * t;
                // R = diag(1, conj(phase)) * [[c, s], [-s, c]] on the (p, q) plane.
                const cdouble rqp = -s * std::conj(phase);
                const cdouble rqq = c * std::conj(phase);
                for (std::size_t k = 0; k < n; ++k) {
                    const cdouble akp = a(k, p);
                    const cdouble akq = a(k, q);
                    a(k, p) = c * akp + rqp * akq;
                    a(k, q) = s * akp + rqq * akq;
                }
                for (std::size_t k = 0; k < n; ++k) {
                    const cdouble apk = a(p, k);
                    const cdouble aqk = a(q, k);
                    a(p, k) = c * apk + std::conj(rqp) * aqk;
                    a(q, k) = s * apk + std::conj(rqq) * aqk;
                }
                a(p, q) = 0.0;
                a(q, p) = 0.0;
                a(p, p) = a(p, p).real();
                a(q, q) = a(q, q).real();
                for (std::size_t k = 0; k < n; ++k) {
                    const cdouble vkp = v(k, p);
                    const cdouble vkq = v(k, q);
                    v(k, p) = c * vkp + rqp * vkq;
                    v(k, q) = s * vkp + rqq * vkq;
                }
            }
        }
    }

    std::vector<double> diag(n);
    for (std::size_t i = 0; i < n; ++i)
        diag[i] = a(i, i).real();
    const auto order = descending_order(diag);
    EigResult out{std::vector<double>(n), ComplexMatrix(n, n)};
    for (std::size_t k = 0; k < n; ++k) {
        out.values[k] = diag[order[k]];
        for (std::size_t i = 0; i < n; ++i)
            out.vectors(i, k) = v(i, order[k]);
    }
    return out;
}

ComplexMatrix cholesky(const ComplexMatrix &b) {
    if (b.rows() != b.cols())
        throw DimensionError("cholesky: matrix not square");
    const std::size_t n = b.rows();
    double max_diag = 0.0;
    for (std::size_t i = 0; i < n; ++i)
        max_diag = std::max(max_diag, std::abs(b(i, i).real()));
    const double floor = 64.0 * kEps * max_diag;

    ComplexMatrix l(n, n);
    for (std::size_t j = 0; j < n; ++j) {
        double d = b(j, j).real();
        for (std::size_t k = 0; k < j; ++k)
            d -= std::norm(l(j, k));
        if (!(d > floor) || !std::isfinite(d))
            throw DefinitenessError("cholesky: matrix is not positive definite (pivot " + std::to_string(j) + ")");
        const double ljj = std::sqrt(d);
        l(j, j) = ljj;
        for (std::size_t i = j + 1; i < n; ++i) {
            cdouble acc = b(i, j);
            for (std::size_t k = 0; k < j; ++k)
                acc -= l(i, k) * std::conj(l(j, k));
            l(i, j) = acc / ljj;
        }
    }
    return l;
}

ComplexMatrix solve_lower(const ComplexMatrix &l, const ComplexMatrix &b) {
    if (l.rows() != l.cols() || l.rows() != b.rows())
        throw DimensionError("solve_lower: shape mismatch");
    const std::size_t n = l.rows();
    ComplexMatrix x = b;
    for (std::size_t c = 0; c < b.cols(); ++c) {
        for (std::size_t i = 0; i < n; ++i) {
            cdouble acc = x(i, c);
            for (std::size_t k = 0; k < i; ++k)
                acc -= l(i, k) * x(k, c);
            x(i, c) = acc / l(i, i);
        }
    }
    return x;
}

ComplexMatrix solve_lower_adjoint(const ComplexMatrix &l, const ComplexMatrix &b) {
    if (l.rows() != l.cols() || l.rows() != b.rows())
        throw DimensionError("solve_lower_adjoint: shape mismatch");
    const std::size_t n = l.rows();
    ComplexMatrix x = b;
    for (std::size_t c = 0; c < b.cols(); ++c) {
        for (std::size_t ii = n; ii-- > 0;) {
            cdouble acc = x(ii, c);
            for (std::size_t k = ii + 1; k < n; ++k)
                acc -= std::conj(l(k, ii)) * x(k, c);
            x(ii, c) = acc / std::conj(l(ii, ii));
        }
    }
    return x;
}

EigResult herm_gen_eig(const ComplexMatrix &a, const ComplexMatrix &b) {
    if (a.rows() != a.cols() || b.rows() != b.cols() || a.rows() != b.rows())
        throw DimensionError("herm_gen_eig: A and B must be square and of equal size");
    const double scale = frob_norm(a);
    if (max_abs_diff(a, a.adjoint()) > 1e-12 * scale)
        throw DomainError("herm_gen_eig: A is not Hermitian");

    const ComplexMatrix l = cholesky(hermitian_part(b));
    const ComplexMatrix x = solve_lower(l, hermitian_part(a));
    const ComplexMatrix c = hermitian_part(solve_lower(l, x.adjoint()));
    EigResult std_eig = hermitian_eig(c);
    return {std::move(std_eig.values), solve_lower_adjoint(l, std_eig.vectors)};
}

double log2_det_hpd(const ComplexMatrix &a) {
    const ComplexMatrix l = cholesky(a);
    double acc = 0.0;
    for (std::size_t i = 0; i < l.rows(); ++i)
        acc += std::log2(l(i, i).real());
    return 2.0 * acc;
}

ComplexMatrix pinv(const ComplexMatrix &a, double rcond) {
    const SvdResult d = svd(a);
    const double cutoff = d.s.empty() ? 0.0 : rcond * d.s.front();
    ComplexMatrix out(a.cols(), a.rows());
    for (std::size_t k = 0; k < d.s.size(); ++k) {
        if (d.s[k] <= cutoff || d.s[k] == 0.0)
            continue;
        const double inv = 1.0 / d.s[k];
        for (std::size_t i = 0; i < a.cols(); ++i) {
            const cdouble vik = d.v(i, k) * inv;
            for (std::size_t j = 0; j < a.rows(); ++j)
                out(i, j) += vik * std::conj(d.u(j, k));
        }
    }
    return out;
}

} // namespace mmhbf
