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

#include "ampcap/bounds.hpp"
#include "ampcap/errors.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <numeric>

namespace ampcap
{

using linalg::RealMatrix;
using linalg::RealVector;

std::string_view to_string(BoundKind kind)
{
    switch (kind)
    {
    case BoundKind::epi_lb:
        return "epi_lb";
    case BoundKind::ub_theorem1:
        return "ub_t1";
    case BoundKind::ub_theorem2:
        return "ub_t2";
    case BoundKind::ub_pa_mckellips:
        return "ub_pa1";
    case BoundKind::compound_ub:
        return "compound_ub";
    case BoundKind::oracle_achievable:
        return "oracle_achievable";
    }
    return "unknown";
}

namespace
{

BoundResult make_result(BoundKind kind, double nats, double snr_db, std::optional<BoundDetail> detail = {})
{
    const double bits = nats_to_bits(nats);
    if (!std::isfinite(bits))
        throw NumericError(std::string("bound ") + std::string(to_string(kind)) + " is not finite");
    return {kind, std::max(0.0, bits), snr_db, std::move(detail)};
}

// log(1 + e^a) without overflow.
double softplus(double a)
{
    return a > 0.0 ? a + std::log1p(std::exp(-a)) : std::log1p(std::exp(a));
}

double gaussian_parallel_bound(const RealVector &noise_vars, double budget)
{
    std::vector<double> lambdas(noise_vars.data(), noise_vars.data() + noise_vars.size());
    const WaterfillAllocation alloc = waterfill(lambdas, budget);
    double acc = 0.0;
    for (std::size_t i = 0; i < lambdas.size(); ++i)
        acc += 0.5 * std::log1p(alloc.powers[i] / lambdas[i]);
    return acc;
}

double common_radius(const ChannelModel &normalized)
{
    return normalized.region().subregions().front().radius();
}

} // namespace

// ---- noise covariance -------------------------------------------------------------------

NoiseCovariance noise_covariance(const ChannelModel &model)
{
    const RealMatrix &h = model.h();
    linalg::require_full_rank(h, "noise_covariance");

    NoiseCovariance nc;
    nc.sigma_z2 = model.sigma_z2();
    nc.partition = model.region().partition();

    const RealMatrix h_inv = h.partialPivLu().inverse();
    RealMatrix d = model.sigma_z2() * (h_inv * h_inv.transpose());
    nc.d = 0.5 * (d + d.transpose());

    const double sigma_z = model.sigma_z();
    for (std::size_t i = 0; i < nc.partition.blocks(); ++i)
    {
        RealMatrix block = linalg::principal_block(nc.d, nc.partition, i);
        const RealMatrix l = linalg::cholesky_lower(block);
        const auto n = l.rows();
        RealMatrix m = sigma_z * l.triangularView<Eigen::Lower>().solve(RealMatrix::Identity(n, n));
        nc.blocks.push_back(std::move(block));
        nc.whiteners.push_back(std::move(m));
    }
    nc.eigenvalues = linalg::singular_values(nc.d);
    return nc;
}

double log_det_correction(const RealMatrix &d, const linalg::Partition &partition)
{
    double blocks = 0.0;
    for (std::size_t i = 0; i < partition.blocks(); ++i)
        blocks += linalg::log_det_spd(linalg::principal_block(d, partition, i));
    return 0.5 * (blocks - linalg::log_det_spd(d));
}

double log_det_correction(const NoiseCovariance &nc)
{
    return log_det_correction(nc.d, nc.partition);
}

// ---- EPI lower bound --------------------------------------------------------------------

BoundResult epi_lower_bound(const ChannelModel &model)
{
    const double n = static_cast<double>(model.dimension());
    const double log_vol_hx = linalg::log_det(model.h()) + model.region().log_volume();
    const double a = (2.0 / n) * log_vol_hx - std::log(2.0 * std::numbers::pi * std::numbers::e * model.sigma_z2());
    return make_result(BoundKind::epi_lb, 0.5 * n * softplus(a), snr_of(normalize_radii(model)).snr_db);
}

// ---- water-filling ----------------------------------------------------------------------

WaterfillAllocation waterfill(std::span<const double> noise_vars, double budget)
{
    if (noise_vars.empty())
        throw InputError("waterfill: at least one channel is required");
    if (!(budget > 0.0) || !std::isfinite(budget))
        throw InputError("waterfill: budget must be positive and finite");
    for (double v : noise_vars)
        if (!(v > 0.0) || !std::isfinite(v))
            throw InputError("waterfill: noise variances must be positive and finite");

    std::vector<double> sorted(noise_vars.begin(), noise_vars.end());
    std::sort(sorted.begin(), sorted.end());

    // The k cheapest channels are active when their common level exceeds the k-th noise variance.
    double prefix = 0.0;
    double level = 0.0;
    for (std::size_t k = 0; k < sorted.size(); ++k)
    {
        prefix += sorted[k];
        const double mu = (budget + prefix) / static_cast<double>(k + 1);
        if (mu <= sorted[k])
            break;
        level = mu;
    }

    WaterfillAllocation out;
    out.budget = budget;
    out.water_level = level;
    out.powers.reserve(noise_vars.size());
    for (double v : noise_vars)
        out.powers.push_back(std::max(level - v, 0.0));
    return out;
}

// ---- low-SNR bound ----------------------------------------------------------------------

BoundResult ub_theorem2(const ChannelModel &model)
{
    const ChannelModel m = normalize_radii(model);
    const double r = common_radius(m);
    const double budget = r * r * static_cast<double>(m.region().blocks());
    const NoiseCovariance nc = noise_covariance(m);
    // sum 1/2 log(P_i + lambda_i) - 1/2 log det D, with det D = prod lambda_i.
    return make_result(BoundKind::ub_theorem2, gaussian_parallel_bound(nc.eigenvalues, budget), snr_of(m).snr_db);
}

// ---- high-SNR bound ---------------------------------------------------------------------

double mckellips_ci(double lambda_mi, double radius, double sigma_z)
{
    if (!(lambda_mi > 0.0) || !(radius > 0.0) || !(sigma_z > 0.0))
        throw InputError("mckellips_ci: arguments must be positive");
    const double t = lambda_mi * radius / sigma_z;
    return std::log1p(std::sqrt(std::numbers::pi / 2.0) * t + t * t / (2.0 * std::numbers::e));
}

double gaussian_subspace_bound(const SubspaceContext &ctx)
{
    const double r = ctx.region.radius();
    return gaussian_parallel_bound(linalg::singular_values(ctx.block), r * r);
}

double mckellips_subspace_bound(const SubspaceContext &ctx)
{
    if (ctx.region.shape() != Shape::ball || ctx.region.dimension() != 2)
        throw UnsupportedConfiguration("McKellips-type bound needs a 2-dimensional ball sub-region (sub-region " +
                                       std::to_string(ctx.index) + ")");
    const RealVector s = linalg::singular_values(ctx.whitener);
    if (!linalg::singular_values_paired(s))
        throw UnsupportedConfiguration("McKellips-type bound needs paired whitener singular values (sub-region " +
                                       std::to_string(ctx.index) + ")");
    return mckellips_ci(0.5 * (s(0) + s(1)), ctx.region.radius(), ctx.sigma_z);
}

double default_subspace_bound(const SubspaceContext &ctx)
{
    if (ctx.region.shape() == Shape::ball && ctx.region.dimension() == 2 &&
        linalg::singular_values_paired(linalg::singular_values(ctx.whitener)))
        return mckellips_subspace_bound(ctx);
    return gaussian_subspace_bound(ctx);
}

namespace
{

BoundResult theorem1(const ChannelModel &model, const SubspaceBounder &bounder, BoundKind kind)
{
    const ChannelModel m = normalize_radii(model);
    const NoiseCovariance nc = noise_covariance(m);
    const double sigma_z = m.sigma_z();

    BoundDetail detail;
    double total = 0.0;
    for (std::size_t i = 0; i < m.region().blocks(); ++i)
    {
        const SubspaceContext ctx{i, m.region().subregions()[i], nc.blocks[i], nc.whiteners[i], sigma_z};
        const double ci = bounder(ctx);
        total += ci;
        detail.subspace_bits.push_back(nats_to_bits(ci));
    }
    const double correction = log_det_correction(nc);
    detail.correction_bits = nats_to_bits(correction);
    return make_result(kind, total + correction, snr_of(m).snr_db, std::move(detail));
}

} // namespace

BoundResult ub_theorem1(const ChannelModel &model, const SubspaceBounder &bounder)
{
    return theorem1(model, bounder, BoundKind::ub_theorem1);
}

BoundResult ub_per_antenna_mckellips(const ChannelModel &model)
{
    if (!model.region().is_per_antenna())
        throw UnsupportedConfiguration("per-antenna bound needs every sub-region to be a 2-dimensional ball");
    return theorem1(model, mckellips_subspace_bound, BoundKind::ub_pa_mckellips);
}

// ---- compound ---------------------------------------------------------------------------

namespace
{

std::optional<BoundResult> try_per_antenna(const ChannelModel &model)
{
    try
    {
        return ub_per_antenna_mckellips(model);
    }
    catch (const UnsupportedConfiguration &)
    {
        return std::nullopt;
    }
}

BoundResult min_of(const BoundResult &t1, const BoundResult &t2, const std::optional<BoundResult> &pa1)
{
    double v = std::min(t1.value_bits, t2.value_bits);
    if (pa1)
        v = std::min(v, pa1->value_bits);
    return {BoundKind::compound_ub, v, t2.snr_db, std::nullopt};
}

} // namespace

BoundResult compound_upper(const ChannelModel &model)
{
    return min_of(ub_theorem1(model), ub_theorem2(model), try_per_antenna(model));
}

BoundSet evaluate_bounds(const ChannelModel &model)
{
    const ChannelModel m = normalize_radii(model);
    BoundResult epi = epi_lower_bound(m);
    BoundResult t1 = ub_theorem1(m);
    BoundResult t2 = ub_theorem2(m);
    std::optional<BoundResult> pa1 = try_per_antenna(m);
    BoundResult compound = min_of(t1, t2, pa1);
    const double correction = t1.detail->correction_bits;
    const double gap = compound.value_bits - epi.value_bits;
    return {epi.snr_db, std::move(epi), std::move(t1), std::move(t2), std::move(pa1), std::move(compound), correction,
            gap};
}

} // namespace ampcap
