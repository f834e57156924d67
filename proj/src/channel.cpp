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

#include "ampcap/channel.hpp"
#include "ampcap/errors.hpp"
#include "ampcap/format.hpp"

#include <json.hpp>

#include <cmath>
#include <fstream>
#include <numbers>
#include <random>
#include <sstream>

namespace ampcap
{

using linalg::ComplexMatrix;
using linalg::RealMatrix;
using linalg::RealVector;

std::string_view to_string(Shape shape)
{
    return shape == Shape::ball ? "ball" : "box";
}

Shape parse_shape(std::string_view text)
{
    if (text == "ball")
        return Shape::ball;
    if (text == "box")
        return Shape::box;
    throw InputError("unknown sub-region shape '" + std::string(text) + "'");
}

// ---- SubRegion --------------------------------------------------------------------------

SubRegion::SubRegion(std::size_t dimension, Shape shape, double radius)
    : dimension_(dimension), shape_(shape), radius_(radius)
{
    if (dimension == 0)
        throw InputError("SubRegion: dimension must be positive");
    if (!(radius > 0.0) || !std::isfinite(radius))
        throw InputError("SubRegion: radius must be positive and finite");
}

double SubRegion::side() const
{
    return 2.0 * radius_ / std::sqrt(static_cast<double>(dimension_));
}

double SubRegion::log_volume() const
{
    const double n = static_cast<double>(dimension_);
    if (shape_ == Shape::box)
        return n * std::log(side());
    // pi^{n/2} R^n / Gamma(n/2 + 1)
    return 0.5 * n * std::log(std::numbers::pi) + n * std::log(radius_) - std::lgamma(0.5 * n + 1.0);
}

double SubRegion::volume() const
{
    return std::exp(log_volume());
}

bool SubRegion::contains(const RealVector &x, double tol) const
{
    if (static_cast<std::size_t>(x.size()) != dimension_)
        return false;
    if (shape_ == Shape::ball)
        return x.norm() <= radius_ * (1.0 + tol);
    return x.cwiseAbs().maxCoeff() <= 0.5 * side() * (1.0 + tol);
}

// ---- ConstraintRegion -------------------------------------------------------------------

namespace
{
linalg::Partition partition_of(const std::vector<SubRegion> &subregions)
{
    std::vector<std::size_t> sizes;
    sizes.reserve(subregions.size());
    for (const auto &s : subregions)
        sizes.push_back(s.dimension());
    return linalg::Partition(std::move(sizes));
}
} // namespace

ConstraintRegion::ConstraintRegion(std::vector<SubRegion> subregions)
    : subregions_(std::move(subregions)), partition_(partition_of(subregions_))
{
}

bool ConstraintRegion::is_normalized() const
{
    for (const auto &s : subregions_)
        if (s.radius() != subregions_.front().radius())
            return false;
    return true;
}

bool ConstraintRegion::is_per_antenna() const
{
    for (const auto &s : subregions_)
        if (s.shape() != Shape::ball || s.dimension() != 2)
            return false;
    return true;
}

double ConstraintRegion::sup_norm() const
{
    double acc = 0.0;
    for (const auto &s : subregions_)
        acc += s.radius() * s.radius();
    return std::sqrt(acc);
}

double ConstraintRegion::log_volume() const
{
    double acc = 0.0;
    for (const auto &s : subregions_)
        acc += s.log_volume();
    return acc;
}

bool ConstraintRegion::contains(const RealVector &x, double tol) const
{
    if (static_cast<std::size_t>(x.size()) != dimension())
        return false;
    for (std::size_t i = 0; i < blocks(); ++i)
    {
        const auto off = static_cast<Eigen::Index>(partition_.offset(i));
        const auto len = static_cast<Eigen::Index>(partition_.size(i));
        if (!subregions_[i].contains(x.segment(off, len), tol))
            return false;
    }
    return true;
}

double volume(const ConstraintRegion &region)
{
    double acc = 1.0;
    for (const auto &s : region.subregions())
        acc *= s.volume();
    return acc;
}

ConstraintRegion per_antenna_region(std::size_t n_complex, double radius)
{
    if (n_complex == 0)
        throw InputError("per_antenna_region: at least one antenna is required");
    return ConstraintRegion(std::vector<SubRegion>(n_complex, SubRegion(2, Shape::ball, radius)));
}

// ---- ChannelModel -----------------------------------------------------------------------

ChannelModel::ChannelModel(RealMatrix h, double sigma_z2, ConstraintRegion region)
    : h_(std::move(h)), sigma_z2_(sigma_z2), region_(std::move(region))
{
    if (h_.rows() != h_.cols())
        throw InputError("ChannelModel: channel matrix must be square");
    if (static_cast<std::size_t>(h_.rows()) != region_.dimension())
        throw InputError("ChannelModel: dimension mismatch between channel matrix (" + std::to_string(h_.rows()) +
                         ") and constraint region (" + std::to_string(region_.dimension()) + ")");
    if (!linalg::all_finite(h_))
        throw InputError("ChannelModel: non-finite channel entry");
    if (!(sigma_z2_ > 0.0) || !std::isfinite(sigma_z2_))
        throw InputError("ChannelModel: noise variance must be positive and finite");
    linalg::require_full_rank(h_, "ChannelModel");
}

double ChannelModel::sigma_z() const
{
    return std::sqrt(sigma_z2_);
}

// ---- SNR --------------------------------------------------------------------------------

double db_to_linear(double db)
{
    return std::pow(10.0, db / 10.0);
}

double linear_to_db(double linear)
{
    return 10.0 * std::log10(linear);
}

SnrPoint SnrPoint::from_db(double db)
{
    return {db_to_linear(db), db};
}

SnrPoint SnrPoint::from_linear(double linear)
{
    if (!(linear > 0.0))
        throw InputError("SnrPoint: SNR must be positive");
    return {linear, linear_to_db(linear)};
}

namespace
{
double sigma2_for(double radius, std::size_t n, double snr_db)
{
    return radius * radius / (static_cast<double>(n) * db_to_linear(snr_db));
}
} // namespace

double sigma_for_snr(const ConstraintRegion &region, double snr_db)
{
    if (!region.is_normalized())
        throw InputError("sigma_for_snr: region radii are not normalized");
    return sigma2_for(region.subregions().front().radius(), region.dimension(), snr_db);
}

SnrPoint snr_of(const ChannelModel &model)
{
    const double r = model.region().subregions().front().radius();
    return SnrPoint::from_linear(r * r / (static_cast<double>(model.dimension()) * model.sigma_z2()));
}

ChannelModel at_snr(const ChannelModel &model, double snr_db)
{
    const auto &region = model.region();
    return model.with_sigma_z2(sigma2_for(region.subregions().front().radius(), region.dimension(), snr_db));
}

ChannelModel normalize_radii(const ChannelModel &model, double target)
{
    if (!(target > 0.0) || !std::isfinite(target))
        throw InputError("normalize_radii: target radius must be positive");

    const auto &region = model.region();
    const auto &part = region.partition();
    RealMatrix h = model.h();
    std::vector<SubRegion> scaled;
    scaled.reserve(region.blocks());
    for (std::size_t i = 0; i < region.blocks(); ++i)
    {
        const auto &sub = region.subregions()[i];
        if (sub.radius() != target)
            h.middleCols(static_cast<Eigen::Index>(part.offset(i)), static_cast<Eigen::Index>(part.size(i))) *=
                sub.radius() / target;
        scaled.push_back(sub.with_radius(target));
    }
    return ChannelModel(std::move(h), model.sigma_z2(), ConstraintRegion(std::move(scaled)));
}

ChannelModel normalize_radii(const ChannelModel &model)
{
    if (model.region().is_normalized())
        return model;
    return normalize_radii(model, model.region().subregions().front().radius());
}

// ---- random ensembles -------------------------------------------------------------------

ComplexMatrix random_channel(std::size_t n_complex, std::uint64_t seed)
{
    if (n_complex == 0)
        throw InputError("random_channel: n_complex must be at least 1");

    std::seed_seq seq{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32)};
    std::mt19937_64 rng(seq);
    // CN(0,1): real and imaginary parts each N(0, 1/2).
    std::normal_distribution<double> gauss(0.0, std::sqrt(0.5));

    const auto n = static_cast<Eigen::Index>(n_complex);
    for (int attempt = 0; attempt < random_channel_attempts; ++attempt)
    {
        ComplexMatrix hc(n, n);
        for (Eigen::Index r = 0; r < n; ++r)
            for (Eigen::Index c = 0; c < n; ++c)
            {
                const double re = gauss(rng);
                const double im = gauss(rng);
                hc(r, c) = {re, im};
            }
        if (linalg::condition_number(linalg::realify(hc)) <= linalg::condition_limit)
            return hc;
    }
    throw NumericError("random_channel: no well-conditioned draw in " + std::to_string(random_channel_attempts) +
                       " attempts");
}

ComplexMatrix reference_channel(double lambda1, double lambda2)
{
    if (!(lambda1 > 0.0) || !(lambda2 > 0.0))
        throw InputError("reference_channel: whitener singular values must be positive");
    const double theta = std::numbers::pi / 6.0;
    const double c = std::cos(theta);
    const double s = std::sin(theta);
    ComplexMatrix inv(2, 2);
    inv(0, 0) = {c / lambda1, 0.0};
    inv(0, 1) = {s / lambda1, 0.0};
    inv(1, 0) = {0.0, s / lambda2};
    inv(1, 1) = {c / lambda2, 0.0};
    return inv.inverse();
}

ChannelModel reference_model(double snr_db)
{
    ConstraintRegion region = per_antenna_region(2, 1.0);
    const double sigma2 = sigma_for_snr(region, snr_db);
    return ChannelModel(linalg::realify(reference_channel()), sigma2, std::move(region));
}

// ---- channel files ----------------------------------------------------------------------

namespace
{

void write_partition(std::ostringstream &os, const ConstraintRegion &region)
{
    os << "  \"partition\": [";
    for (std::size_t i = 0; i < region.blocks(); ++i)
    {
        const auto &s = region.subregions()[i];
        os << (i ? ", " : "") << "{\"dim\": " << s.dimension() << ", \"shape\": \"" << to_string(s.shape())
           << "\", \"radius\": " << format_double(s.radius()) << "}";
    }
    os << "]\n";
}

double number_at(const nlohmann::json &j, const char *what)
{
    if (!j.is_number())
        throw InputError(std::string("channel file: ") + what + " must be a number");
    return j.get<double>();
}

ConstraintRegion parse_partition(const nlohmann::json &j)
{
    if (!j.is_array() || j.empty())
        throw InputError("channel file: 'partition' must be a non-empty array");
    std::vector<SubRegion> subs;
    for (const auto &e : j)
    {
        if (!e.is_object() || !e.contains("dim") || !e.contains("shape") || !e.contains("radius"))
            throw InputError("channel file: partition entries need 'dim', 'shape' and 'radius'");
        if (!e["dim"].is_number_integer() || e["dim"].get<long long>() < 1)
            throw InputError("channel file: partition 'dim' must be a positive integer");
        if (!e["shape"].is_string())
            throw InputError("channel file: partition 'shape' must be a string");
        subs.emplace_back(e["dim"].get<std::size_t>(), parse_shape(e["shape"].get<std::string>()),
                          number_at(e["radius"], "partition radius"));
    }
    return ConstraintRegion(std::move(subs));
}

RealMatrix parse_real_matrix(const nlohmann::json &j)
{
    if (!j.is_array() || j.empty())
        throw InputError("channel file: 'H_real' must be a non-empty array of rows");
    const auto rows = static_cast<Eigen::Index>(j.size());
    RealMatrix h(rows, rows);
    for (Eigen::Index r = 0; r < rows; ++r)
    {
        const auto &row = j[static_cast<std::size_t>(r)];
        if (!row.is_array() || static_cast<Eigen::Index>(row.size()) != rows)
            throw InputError("channel file: 'H_real' must be square");
        for (Eigen::Index c = 0; c < rows; ++c)
            h(r, c) = number_at(row[static_cast<std::size_t>(c)], "H_real entry");
    }
    return h;
}

ComplexMatrix parse_complex_matrix(const nlohmann::json &j)
{
    if (!j.is_array() || j.empty())
        throw InputError("channel file: 'H_complex' must be a non-empty array of rows");
    const auto rows = static_cast<Eigen::Index>(j.size());
    ComplexMatrix h(rows, rows);
    for (Eigen::Index r = 0; r < rows; ++r)
    {
        const auto &row = j[static_cast<std::size_t>(r)];
        if (!row.is_array() || static_cast<Eigen::Index>(row.size()) != rows)
            throw InputError("channel file: 'H_complex' must be square");
        for (Eigen::Index c = 0; c < rows; ++c)
        {
            const auto &e = row[static_cast<std::size_t>(c)];
            if (!e.is_array() || e.size() != 2)
                throw InputError("channel file: 'H_complex' entries must be [re, im] pairs");
            h(r, c) = {number_at(e[0], "H_complex entry"), number_at(e[1], "H_complex entry")};
        }
    }
    return h;
}

void write_file(const std::string &text, const std::filesystem::path &path)
{
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out)
        throw std::runtime_error("cannot open '" + path.string() + "' for writing");
    out << text;
    out.close();
    if (!out)
        throw std::runtime_error("failed writing '" + path.string() + "'");
}

} // namespace

std::string serialize_model(const ChannelModel &model)
{
    std::ostringstream os;
    const auto &h = model.h();
    os << "{\n  \"H_real\": [";
    for (Eigen::Index r = 0; r < h.rows(); ++r)
    {
        os << (r ? ",\n    [" : "\n    [");
        for (Eigen::Index c = 0; c < h.cols(); ++c)
            os << (c ? ", " : "") << format_double(h(r, c));
        os << "]";
    }
    os << "\n  ],\n  \"sigma_z2\": " << format_double(model.sigma_z2()) << ",\n";
    write_partition(os, model.region());
    os << "}\n";
    return os.str();
}

std::string serialize_complex_channel(const ComplexMatrix &hc, double sigma_z2, const ConstraintRegion &region)
{
    // Validates dimensions and rank before anything is written.
    ChannelModel check(linalg::realify(hc), sigma_z2, region);

    std::ostringstream os;
    os << "{\n  \"n_complex\": " << hc.rows() << ",\n  \"H_complex\": [";
    for (Eigen::Index r = 0; r < hc.rows(); ++r)
    {
        os << (r ? ",\n    [" : "\n    [");
        for (Eigen::Index c = 0; c < hc.cols(); ++c)
            os << (c ? ", " : "") << "[" << format_double(hc(r, c).real()) << ", "
               << format_double(hc(r, c).imag()) << "]";
        os << "]";
    }
    os << "\n  ],\n  \"sigma_z2\": " << format_double(sigma_z2) << ",\n";
    write_partition(os, region);
    os << "}\n";
    return os.str();
}

ChannelModel parse_model(std::string_view text)
{
    nlohmann::json j;
    try
    {
        j = nlohmann::json::parse(text);
    }
    catch (const nlohmann::json::parse_error &e)
    {
        throw InputError(std::string("channel file: parse error: ") + e.what());
    }
    if (!j.is_object())
        throw InputError("channel file: top level must be an object");

    const bool has_real = j.contains("H_real");
    const bool has_complex = j.contains("H_complex");
    if (has_real == has_complex)
        throw InputError("channel file: exactly one of 'H_real' and 'H_complex' is required");
    if (!j.contains("sigma_z2"))
        throw InputError("channel file: missing 'sigma_z2'");
    if (!j.contains("partition"))
        throw InputError("channel file: missing 'partition'");

    RealMatrix h = has_real ? parse_real_matrix(j["H_real"]) : linalg::realify(parse_complex_matrix(j["H_complex"]));
    if (j.contains("n_complex"))
    {
        const auto &nc = j["n_complex"];
        if (!nc.is_number_integer() || 2 * nc.get<long long>() != h.rows())
            throw InputError("channel file: dimension mismatch: 'n_complex' does not match the channel matrix");
    }
    return ChannelModel(std::move(h), number_at(j["sigma_z2"], "sigma_z2"), parse_partition(j["partition"]));
}

void save_model(const ChannelModel &model, const std::filesystem::path &path)
{
    write_file(serialize_model(model), path);
}

void save_complex_channel(const ComplexMatrix &hc, double sigma_z2, const ConstraintRegion &region,
                          const std::filesystem::path &path)
{
    write_file(serialize_complex_channel(hc, sigma_z2, region), path);
}

ChannelModel load_model(const std::filesystem::path &path)
{
    std::ifstream in(path, std::ios::binary);
    if (!in)
        throw InputError("cannot open channel file '" + path.string() + "'");
    std::ostringstream buf;
    buf << in.rdbuf();
    return parse_model(buf.str());
}

} // namespace ampcap
