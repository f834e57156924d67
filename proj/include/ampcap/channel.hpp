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

#include "ampcap/linalg.hpp"

#include <cstdint>
#include <filesystem>
#include <string>
#include <string_view>
#include <vector>

namespace ampcap
{

enum class Shape
{
    ball,
    box
};

std::string_view to_string(Shape shape);
Shape parse_shape(std::string_view text);

// One factor X_i of the constraint region. The radius is always the circumscribed radius
// sup ||x|| over the sub-region, for boxes as well as balls.
class SubRegion
{
public:
    SubRegion(std::size_t dimension, Shape shape, double radius);

    std::size_t dimension() const { return dimension_; }
    Shape shape() const { return shape_; }
    double radius() const { return radius_; }

    // Side length of a box sub-region, s = 2 R / sqrt(n).
    double side() const;
    double log_volume() const;
    double volume() const;
    bool contains(const linalg::RealVector &x, double tol = 1e-12) const;

    SubRegion with_radius(double radius) const { return {dimension_, shape_, radius}; }

    bool operator==(const SubRegion &) const = default;

private:
    std::size_t dimension_;
    Shape shape_;
    double radius_;
};

// Cartesian product X_1 x ... x X_K, in input-coordinate order.
class ConstraintRegion
{
public:
    explicit ConstraintRegion(std::vector<SubRegion> subregions);

    const std::vector<SubRegion> &subregions() const { return subregions_; }
    std::size_t blocks() const { return subregions_.size(); }
    std::size_t dimension() const { return partition_.dimension(); }
    const linalg::Partition &partition() const { return partition_; }

    bool is_normalized() const;
    // All sub-regions are 2-dimensional balls (one complex amplitude limit per antenna).
    bool is_per_antenna() const;
    // sup ||x|| over the whole region.
    double sup_norm() const;
    double log_volume() const;

    bool contains(const linalg::RealVector &x, double tol = 1e-12) const;

    bool operator==(const ConstraintRegion &) const = default;

private:
    std::vector<SubRegion> subregions_;
    linalg::Partition partition_;
};

double volume(const ConstraintRegion &region);

ConstraintRegion per_antenna_region(std::size_t n_complex, double radius);

// Y = H X + sigma_z Z with Z standard normal and X in the constraint region.
class ChannelModel
{
public:
    ChannelModel(linalg::RealMatrix h, double sigma_z2, ConstraintRegion region);

    const linalg::RealMatrix &h() const { return h_; }
    double sigma_z2() const { return sigma_z2_; }
    double sigma_z() const;
    const ConstraintRegion &region() const { return region_; }
    std::size_t dimension() const { return region_.dimension(); }

    ChannelModel with_sigma_z2(double sigma_z2) const { return {h_, sigma_z2, region_}; }

    bool operator==(const ChannelModel &) const = default;

private:
    linalg::RealMatrix h_;
    double sigma_z2_;
    ConstraintRegion region_;
};

struct SnrPoint
{
    double snr_linear;
    double snr_db;

    static SnrPoint from_db(double db);
    static SnrPoint from_linear(double linear);
};

double db_to_linear(double db);
double linear_to_db(double linear);

/// Rescales every sub-region to the common radius `target` and scales the matching column block
/// of H by R_i / target, so that H X ranges over the same set.
ChannelModel normalize_radii(const ChannelModel &model, double target);

// Common radius is R_1.
ChannelModel normalize_radii(const ChannelModel &model);

/// Noise variance R^2 / (N * snr) for a normalized region.
double sigma_for_snr(const ConstraintRegion &region, double snr_db);

// SNR R_1^2 / (N sigma_z^2); R_1 is the radius every sub-region takes after normalization.
SnrPoint snr_of(const ChannelModel &model);

// Same channel and region with sigma_z^2 set for the requested SNR.
ChannelModel at_snr(const ChannelModel &model, double snr_db);

// Upper limit on attempts to draw a well-conditioned random channel.
inline constexpr int random_channel_attempts = 100;

/// n x n matrix with i.i.d. CN(0, 1) entries, deterministic for a given seed. Draws with a
/// realified condition number above the rank limit are discarded and redrawn.
linalg::ComplexMatrix random_channel(std::size_t n_complex, std::uint64_t seed);

/// 2x2 complex channel whose per-antenna sub-space whiteners have the requested singular values.
/// Built from H^{-1} with row norms 1/lambda_i, so [H^{-1} H^{-H}]_ii = 1/lambda_i^2.
linalg::ComplexMatrix reference_channel(double lambda1 = 0.52, double lambda2 = 0.37);

// Per-antenna model (2-balls of radius 1) on reference_channel() at the given SNR.
ChannelModel reference_model(double snr_db);

// ---- channel files ----------------------------------------------------------------------

std::string serialize_model(const ChannelModel &model);
std::string serialize_complex_channel(const linalg::ComplexMatrix &hc, double sigma_z2, const ConstraintRegion &region);
ChannelModel parse_model(std::string_view text);

void save_model(const ChannelModel &model, const std::filesystem::path &path);
void save_complex_channel(const linalg::ComplexMatrix &hc, double sigma_z2, const ConstraintRegion &region,
                          const std::filesystem::path &path);
ChannelModel load_model(const std::filesystem::path &path);

} // namespace ampcap
