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

#include "ampcap/bounds.hpp"
#include "ampcap/channel.hpp"
#include "ampcap/linalg.hpp"

#include <cstdint>
#include <span>
#include <vector>

namespace ampcap
{

// Finite input distribution: one point per column of `points`.
class Constellation
{
public:
    Constellation(linalg::RealMatrix points, std::vector<double> probabilities);

    // Uniform weights.
    explicit Constellation(linalg::RealMatrix points);

    const linalg::RealMatrix &points() const { return points_; }
    const std::vector<double> &probabilities() const { return probabilities_; }
    std::size_t size() const { return probabilities_.size(); }
    std::size_t dimension() const { return static_cast<std::size_t>(points_.rows()); }

    bool inside(const ConstraintRegion &region) const;

private:
    linalg::RealMatrix points_;
    std::vector<double> probabilities_;
};

inline constexpr std::size_t max_constellation_size = 1'000'000;

/// Product over antennas of ring/phase grids: `rings` equally spaced radii up to the antenna's R_i,
/// `phases` equally spaced angles per ring. Uniform probabilities.
Constellation per_antenna_constellation(const ChannelModel &model, std::size_t rings, std::size_t phases);

// rings = clamp(floor(R / (2 sigma_z)), 1, 4), 8 phases.
Constellation default_constellation(const ChannelModel &model);

struct MiEstimate
{
    double value_bits;
    double std_error_bits;
    std::size_t samples;
    std::uint64_t seed;
};

inline constexpr std::size_t min_mc_samples = 1000;
inline constexpr std::size_t default_mc_batch = 4096;

/// Monte Carlo estimate of I(X; H X + sigma_z Z) for X drawn from `c`, via the mixture
/// log-likelihood ratio log p(y|x) / sum_j p_j p(y|x_j). Samples are split into fixed-size batches,
/// each with its own seeded generator, so the result depends only on (seed, samples, batch).
MiEstimate mc_mutual_information(const ChannelModel &model, const Constellation &c, std::size_t samples,
                                 std::uint64_t seed, std::size_t batch = default_mc_batch);

/// Water level by bisection over [min lambda, max lambda + budget], 200 iterations.
WaterfillAllocation waterfill_bisection_oracle(std::span<const double> noise_vars, double budget);

} // namespace ampcap
