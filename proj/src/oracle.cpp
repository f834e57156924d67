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

#include "ampcap/oracle.hpp"
#include "ampcap/errors.hpp"

#include <algorithm>
#include <cmath>
#include <future>
#include <limits>
#include <numbers>
#include <random>
#include <thread>

namespace ampcap
{

using linalg::RealMatrix;

// ---- Constellation ----------------------------------------------------------------------

Constellation::Constellation(RealMatrix points, std::vector<double> probabilities)
    : points_(std::move(points)), probabilities_(std::move(probabilities))
{
    if (points_.cols() == 0 || points_.rows() == 0)
        throw InputError("Constellation: at least one point is required");
    if (static_cast<std::size_t>(points_.cols()) != probabilities_.size())
        throw InputError("Constellation: one probability per point is required");
    if (!linalg::all_finite(points_))
        throw InputError("Constellation: non-finite point");
    double total = 0.0;
    for (double p : probabilities_)
    {
        if (!(p >= 0.0))
            throw InputError("Constellation: probabilities must be non-negative");
        total += p;
    }
    if (std::abs(total - 1.0) > 1e-12)
        throw InputError("Constellation: probabilities must sum to 1");
}

Constellation::Constellation(RealMatrix points)
    : Constellation(points, std::vector<double>(static_cast<std::size_t>(points.cols()),
                                                1.0 / static_cast<double>(std::max<Eigen::Index>(points.cols(), 1))))
{
}

bool Constellation::inside(const ConstraintRegion &region) const
{
    if (dimension() != region.dimension())
        return false;
    for (Eigen::Index j = 0; j < points_.cols(); ++j)
        if (!region.contains(points_.col(j)))
            return false;
    return true;
}

Constellation per_antenna_constellation(const ChannelModel &model, std::size_t rings, std::size_t phases)
{
    const auto &region = model.region();
    if (!region.is_per_antenna())
        throw UnsupportedConfiguration("per_antenna_constellation: region is not per-antenna");
    if (rings < 1)
        throw InputError("per_antenna_constellation: at least one ring is required");
    if (phases < 2)
        throw InputError("per_antenna_constellation: at least two phases are required");

    const std::size_t per_antenna = rings * phases;
    const std::size_t antennas = region.blocks();
    std::size_t total = 1;
    for (std::size_t a = 0; a < antennas; ++a)
    {
        if (total > max_constellation_size / per_antenna)
            throw InputError("per_antenna_constellation: more than " + std::to_string(max_constellation_size) +
                             " points");
        total *= per_antenna;
    }

    RealMatrix points(static_cast<Eigen::Index>(2 * antennas), static_cast<Eigen::Index>(total));
    for (std::size_t idx = 0; idx < total; ++idx)
    {
        std::size_t rest = idx;
        for (std::size_t a = 0; a < antennas; ++a)
        {
            const std::size_t local = rest % per_antenna;
            rest /= per_antenna;
            const std::size_t ring = local / phases + 1;
            const std::size_t phase = local % phases;
            const double radius =
                region.subregions()[a].radius() * static_cast<double>(ring) / static_cast<double>(rings);
            const double angle = 2.0 * std::numbers::pi * static_cast<double>(phase) / static_cast<double>(phases);
            points(static_cast<Eigen::Index>(2 * a), static_cast<Eigen::Index>(idx)) = radius * std::cos(angle);
            points(static_cast<Eigen::Index>(2 * a + 1), static_cast<Eigen::Index>(idx)) = radius * std::sin(angle);
        }
    }
    return Constellation(std::move(points));
}

Constellation default_constellation(const ChannelModel &model)
{
    const double r = model.region().subregions().front().radius();
    const double ratio = std::floor(r / (2.0 * model.sigma_z()));
    const auto rings = static_cast<std::size_t>(std::clamp(ratio, 1.0, 4.0));
    return per_antenna_constellation(model, rings, 8);
}

// ---- Monte Carlo mutual information -----------------------------------------------------

namespace
{

struct BatchSums
{
    double sum = 0.0;
    double sum_sq = 0.0;
};

BatchSums run_batch(const RealMatrix &signals, const std::vector<double> &log_probs,
                    const std::discrete_distribution<std::size_t>::param_type &index_param, double sigma_z,
                    std::uint64_t seed, std::size_t batch_index, std::size_t count)
{
    std::seed_seq seq{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32),
                      static_cast<std::uint32_t>(batch_index), static_cast<std::uint32_t>(batch_index >> 32)};
    std::mt19937_64 rng(seq);
    std::normal_distribution<double> gauss(0.0, 1.0);
    std::discrete_distribution<std::size_t> pick(index_param);

    const Eigen::Index n = signals.rows();
    const Eigen::Index m = signals.cols();
    const double inv_two_var = 1.0 / (2.0 * sigma_z * sigma_z);

    Eigen::VectorXd y(n);
    std::vector<double> exponents(static_cast<std::size_t>(m));
    BatchSums out;
    for (std::size_t s = 0; s < count; ++s)
    {
        const auto k = static_cast<Eigen::Index>(pick(rng));
        double noise_sq = 0.0;
        for (Eigen::Index r = 0; r < n; ++r)
        {
            const double w = sigma_z * gauss(rng);
            noise_sq += w * w;
            y(r) = signals(r, k) + w;
        }

        // log p(y|x_j) - log p(y|x_k) = -(|y - s_j|^2 - |w|^2) / (2 sigma^2)
        double top = -std::numeric_limits<double>::infinity();
        for (Eigen::Index j = 0; j < m; ++j)
        {
            const double *col = signals.data() + j * n;
            double dist = 0.0;
            for (Eigen::Index r = 0; r < n; ++r)
            {
                const double diff = y(r) - col[r];
                dist += diff * diff;
            }
            const double e = log_probs[static_cast<std::size_t>(j)] - (dist - noise_sq) * inv_two_var;
            exponents[static_cast<std::size_t>(j)] = e;
            top = std::max(top, e);
        }
        double acc = 0.0;
        for (double e : exponents)
            acc += std::exp(e - top);
        const double log_ratio = -(top + std::log(acc));
        out.sum += log_ratio;
        out.sum_sq += log_ratio * log_ratio;
    }
    return out;
}

} // namespace

MiEstimate mc_mutual_information(const ChannelModel &model, const Constellation &c, std::size_t samples,
                                 std::uint64_t seed, std::size_t batch)
{
    if (samples < min_mc_samples)
        throw InputError("mc_mutual_information: at least " + std::to_string(min_mc_samples) + " samples required");
    if (batch == 0)
        throw InputError("mc_mutual_information: batch size must be positive");
    if (!c.inside(model.region()))
        throw InputError("mc_mutual_information: constellation does not lie inside the constraint region");

    std::size_t support = 0;
    for (double p : c.probabilities())
        support += p > 0.0 ? 1 : 0;
    if (support <= 1)
        return {0.0, 0.0, samples, seed};

    const RealMatrix signals = model.h() * c.points();
    std::vector<double> log_probs;
    log_probs.reserve(c.size());
    for (double p : c.probabilities())
        log_probs.push_back(p > 0.0 ? std::log(p) : -std::numeric_limits<double>::infinity());
    const std::discrete_distribution<std::size_t>::param_type index_param(c.probabilities().begin(),
                                                                         c.probabilities().end());
    const double sigma_z = model.sigma_z();

    const std::size_t batches = (samples + batch - 1) / batch;
    std::vector<BatchSums> partial(batches);
    const std::size_t workers =
        std::clamp<std::size_t>(std::thread::hardware_concurrency(), 1, batches);

    auto work = [&](std::size_t first) {
        for (std::size_t b = first; b < batches; b += workers)
        {
            const std::size_t count = std::min(batch, samples - b * batch);
            partial[b] = run_batch(signals, log_probs, index_param, sigma_z, seed, b, count);
        }
    };
    std::vector<std::future<void>> jobs;
    for (std::size_t w = 1; w < workers; ++w)
        jobs.push_back(std::async(std::launch::async, work, w));
    work(0);
    for (auto &j : jobs)
        j.get();

    // Combined in batch order so the result does not depend on scheduling.
    double sum = 0.0;
    double sum_sq = 0.0;
    for (const auto &p : partial)
    {
        sum += p.sum;
        sum_sq += p.sum_sq;
    }
    const double n = static_cast<double>(samples);
    const double mean = sum / n;
    const double var = std::max(0.0, (sum_sq - n * mean * mean) / (n - 1.0));
    return {nats_to_bits(mean), nats_to_bits(std::sqrt(var / n)), samples, seed};
}

// ---- bisection water-filling ------------------------------------------------------------

WaterfillAllocation waterfill_bisection_oracle(std::span<const double> noise_vars, double budget)
{
    if (noise_vars.empty())
        throw InputError("waterfill_bisection_oracle: at least one channel is required");
    if (!(budget > 0.0))
        throw InputError("waterfill_bisection_oracle: budget must be positive");

    const auto [min_it, max_it] = std::minmax_element(noise_vars.begin(), noise_vars.end());
    double lo = *min_it;
    double hi = *max_it + budget;
    auto filled = [&](double mu) {
        double acc = 0.0;
        for (double v : noise_vars)
            acc += std::max(mu - v, 0.0);
        return acc;
    };
    for (int it = 0; it < 200; ++it)
    {
        const double mid = 0.5 * (lo + hi);
        if (filled(mid) > budget)
            hi = mid;
        else
            lo = mid;
    }

    WaterfillAllocation out;
    out.budget = budget;
    out.water_level = 0.5 * (lo + hi);
    for (double v : noise_vars)
        out.powers.push_back(std::max(out.water_level - v, 0.0));
    return out;
}

} // namespace ampcap
