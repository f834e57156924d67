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

#include "ampcap/channel.hpp"
#include "ampcap/linalg.hpp"

#include <functional>
#include <optional>
#include <span>
#include <string_view>
#include <vector>

namespace ampcap
{

inline constexpr double nats_to_bits(double nats)
{
    return nats / 0.69314718055994530942;
}

// Whitened noise covariance D = sigma_z^2 H^{-1} H^{-T} and its per-sub-space pieces.
struct NoiseCovariance
{
    linalg::RealMatrix d;
    linalg::Partition partition;
    std::vector<linalg::RealMatrix> blocks;    // D_i, principal blocks of D
    std::vector<linalg::RealMatrix> whiteners; // M_i with D_i = sigma_z^2 M_i^{-1} M_i^{-T}
    linalg::RealVector eigenvalues;            // lambda_i(D), descending
    double sigma_z2 = 0.0;
};

enum class BoundKind
{
    epi_lb,
    ub_theorem1,
    ub_theorem2,
    ub_pa_mckellips,
    compound_ub,
    oracle_achievable
};

std::string_view to_string(BoundKind kind);

struct BoundDetail
{
    std::vector<double> subspace_bits; // per-sub-space terms, bits
    double correction_bits = 0.0;      // log-det correction, bits
};

struct BoundResult
{
    BoundKind kind;
    double value_bits; // floored at 0
    double snr_db;
    std::optional<BoundDetail> detail;
};

struct WaterfillAllocation
{
    std::vector<double> powers;
    double water_level = 0.0;
    double budget = 0.0;
};

NoiseCovariance noise_covariance(const ChannelModel &model);

/// 1/2 (sum_i log det D_i - log det D) in nats. Non-negative by Fischer's inequality.
double log_det_correction(const NoiseCovariance &nc);
double log_det_correction(const linalg::RealMatrix &d, const linalg::Partition &partition);

/// (N/2) log(1 + Vol(H X)^{2/N} / (2 pi e sigma_z^2)) with Vol(H X) = |det H| Vol(X).
BoundResult epi_lower_bound(const ChannelModel &model);

/// Optimal split of `budget` over parallel Gaussian channels: P_i = max(mu - lambda_i, 0), sum P_i = budget.
WaterfillAllocation waterfill(std::span<const double> noise_vars, double budget);

/// Gaussian upper bound under the relaxed average-power constraint E[X^T X] <= R^2 K, water-filled
/// over lambda_i(D).
BoundResult ub_theorem2(const ChannelModel &model);

/// McKellips-type bound for a 2-D ball channel, nats:
/// log(1 + sqrt(pi/2) lambda R / sigma + (lambda R)^2 / (2 e sigma^2)).
double mckellips_ci(double lambda_mi, double radius, double sigma_z);

// What a per-sub-space bounder sees for sub-region i of a normalized model.
struct SubspaceContext
{
    std::size_t index;
    const SubRegion &region;
    const linalg::RealMatrix &block;    // D_i
    const linalg::RealMatrix &whitener; // M_i
    double sigma_z;
};

// Returns an upper bound, in nats, on the capacity of X_i + Z_{D,i} with X_i in the sub-region.
// Throws UnsupportedConfiguration when it cannot handle the sub-region.
using SubspaceBounder = std::function<double(const SubspaceContext &)>;

// Average-power Gaussian bound on the sub-space: budget R^2, water-filled over lambda(D_i). Any shape.
double gaussian_subspace_bound(const SubspaceContext &ctx);

// McKellips-type closed form; needs a 2-D ball and a whitener with paired singular values.
double mckellips_subspace_bound(const SubspaceContext &ctx);

// McKellips where it applies, the Gaussian sub-space bound otherwise.
double default_subspace_bound(const SubspaceContext &ctx);

/// sum_i C_i + log-det correction, each C_i bounded by `bounder`.
BoundResult ub_theorem1(const ChannelModel &model, const SubspaceBounder &bounder = default_subspace_bound);

/// Theorem 1 specialized to per-antenna regions with McKellips-type sub-space bounds.
BoundResult ub_per_antenna_mckellips(const ChannelModel &model);

// Smallest of the upper bounds that apply to the model.
BoundResult compound_upper(const ChannelModel &model);

// Every bound for one model, evaluated once. Inapplicable bounds are empty.
struct BoundSet
{
    double snr_db;
    BoundResult epi_lb;
    BoundResult ub_t1;
    BoundResult ub_t2;
    std::optional<BoundResult> ub_pa1;
    BoundResult compound_ub;
    double correction_bits;
    double gap_bits; // compound_ub - epi_lb
};

BoundSet evaluate_bounds(const ChannelModel &model);

} // namespace ampcap
