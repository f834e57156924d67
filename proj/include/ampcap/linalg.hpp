// SPDX-License-Identifier: Apache-2.0
//
// ampcap: capacity bounds for amplitude-constrained vector Gaussian channels
// Copyright (C) 2026 The ampcap authors
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

#pragma once

#include <Eigen/Dense>

#include <cstddef>
#include <vector>

namespace ampcap::linalg
{

using RealMatrix = Eigen::MatrixXd;
using ComplexMatrix = Eigen::MatrixXcd;
using RealVector = Eigen::VectorXd;

// Matrices with a ratio of extreme singular values above this are treated as rank deficient.
inline constexpr double condition_limit = 1e12;

// Relative tolerance for matching consecutive singular values of a realified matrix.
inline constexpr double pair_tolerance = 1e-8;

// Sizes N_1 ... N_K of the diagonal blocks of an N x N matrix. Blocks are indexed from 0.
class Partition
{
public:
    Partition() = default;
    explicit Partition(std::vector<std::size_t> sizes);

    std::size_t blocks() const { return sizes_.size(); }
    std::size_t size(std::size_t i) const;
    std::size_t offset(std::size_t i) const;
    std::size_t dimension() const { return dimension_; }
    const std::vector<std::size_t> &sizes() const { return sizes_; }

    bool operator==(const Partition &) const = default;

private:
    std::vector<std::size_t> sizes_;
    std::vector<std::size_t> offsets_;
    std::size_t dimension_ = 0;
};

struct Svd
{
    RealVector singular_values; // descending
    RealMatrix u;
    RealMatrix v;
};

bool all_finite(const RealMatrix &m);
bool all_finite(const ComplexMatrix &m);

/// Real representation of a complex matrix: entry a+bi becomes the 2x2 block [[a, -b], [b, a]],
/// i.e. Re{Hc} (x) I_2 + Im{Hc} (x) [[0, -1], [1, 0]].
RealMatrix realify(const ComplexMatrix &hc);

/// Full SVD of a square matrix, M = U diag(s) V^T with s sorted descending.
/// Throws NumericError if the factorization does not yield finite factors.
Svd svd(const RealMatrix &m);

RealVector singular_values(const RealMatrix &m);

// Ratio of largest to smallest singular value; +inf for exactly singular input.
double condition_number(const RealMatrix &m);

// Throws RankDeficientError if condition_number(m) exceeds condition_limit.
void require_full_rank(const RealMatrix &m, const char *what);

/// Lower-triangular L with L L^T = S. Throws InvalidCovarianceError if S is not
/// symmetric positive-definite.
RealMatrix cholesky_lower(const RealMatrix &s);

/// Diagonal block i (0-based) of an N x N matrix, rows/cols offset(i) ... offset(i)+size(i)-1.
RealMatrix principal_block(const RealMatrix &m, const Partition &partition, std::size_t i);

/// log|det M| in nats, from the LU factors. Throws RankDeficientError for ill-conditioned input.
double log_det(const RealMatrix &m);

// log det S in nats for symmetric positive-definite S, from its Cholesky factor. No condition
// check, so it stays usable for noise covariances whose conditioning is the square of the channel's.
double log_det_spd(const RealMatrix &s);

// True when singular values (descending) come in equal consecutive pairs within the relative tolerance.
bool singular_values_paired(const RealVector &s, double rel_tol = pair_tolerance);

} // namespace ampcap::linalg
