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

// Acceptance suite: one line per criterion, nonzero exit if any criterion fails.

#include "ampcap/bounds.hpp"
#include "ampcap/channel.hpp"
#include "ampcap/oracle.hpp"
#include "support/oracles.hpp"

#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <sstream>
#include <string>

using namespace ampcap;
using linalg::ComplexMatrix;
using linalg::Partition;
using linalg::RealMatrix;
using linalg::RealVector;

namespace
{

struct Verdict
{
    bool pass;
    std::string detail;
};

int failures = 0;

void criterion(int id, const char *name, double time_limit_s, const std::function<Verdict()> &body)
{
    const auto t0 = std::chrono::steady_clock::now();
    Verdict v{false, ""};
    try
    {
        v = body();
    }
    catch (const std::exception &e)
    {
        v = {false, std::string("exception: ") + e.what()};
    }
    const double elapsed = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    if (time_limit_s > 0.0 && elapsed > time_limit_s)
    {
        v.pass = false;
        v.detail += " [runtime limit " + std::to_string(time_limit_s) + " s exceeded]";
    }
    if (!v.pass)
        ++failures;
    std::printf("[%s] %d. %s: %s (%.2f s)\n", v.pass ? "PASS" : "FAIL", id, name, v.detail.c_str(), elapsed);
    std::fflush(stdout);
}

std::string fmt(double v)
{
    std::ostringstream os;
    os.precision(6);
    os << v;
    return os.str();
}

// Random 2-antenna channel scaled to unit spectral norm.
ChannelModel unit_scale_model(std::uint64_t seed, double snr_db)
{
    RealMatrix h = linalg::realify(random_channel(2, seed));
    h /= linalg::singular_values(h)(0);
    const ConstraintRegion region = per_antenna_region(2, 1.0);
    return ChannelModel(std::move(h), sigma_for_snr(region, snr_db), region);
}

} // namespace

int main()
{
    criterion(1, "reference per-antenna configuration", 5.0, [] {
        const NoiseCovariance nc = noise_covariance(reference_model(0.0));
        const double targets[2] = {0.52, 0.37};
        for (std::size_t i = 0; i < 2; ++i)
        {
            const RealVector s = linalg::singular_values(nc.whiteners[i]);
            if (std::abs(s(0) - targets[i]) > 1e-6 || std::abs(s(1) - targets[i]) > 1e-6)
                return Verdict{false, "whitener singular values " + fmt(s(0)) + ", " + fmt(s(1)) + " miss " +
                                          fmt(targets[i])};
        }
        double gap10 = 0.0;
        double gap40 = 0.0;
        for (int db = -10; db <= 40; ++db)
        {
            const BoundSet b = evaluate_bounds(reference_model(db));
            if (!(b.epi_lb.value_bits <= b.compound_ub.value_bits))
                return Verdict{false, "epi_lb > compound_ub at " + std::to_string(db) + " dB"};
            if (db == 10)
                gap10 = b.gap_bits;
            if (db == 40)
                gap40 = b.gap_bits;
        }
        return Verdict{gap40 < gap10, "lambda(M) = (0.52, 0.37); sandwich holds on -10:1:40 dB; gap 10 dB = " +
                                          fmt(gap10) + " bits, gap 40 dB = " + fmt(gap40) + " bits"};
    });

    criterion(2, "high-SNR gap of the per-antenna bound", 5.0, [] {
        double prev = std::numeric_limits<double>::infinity();
        double gap = 0.0;
        for (int db = 20; db <= 60; ++db)
        {
            const ChannelModel m = reference_model(db);
            gap = ub_per_antenna_mckellips(m).value_bits - epi_lower_bound(m).value_bits;
            if (gap > prev + 1e-6)
                return Verdict{false, "gap increases at " + std::to_string(db) + " dB"};
            prev = gap;
        }
        return Verdict{gap < 0.25, "non-increasing on 20:1:60 dB; gap at 60 dB = " + fmt(gap) + " bits"};
    });

    criterion(3, "low-SNR bound vanishes", 10.0, [] {
        double worst = 0.0;
        for (std::uint64_t seed = 0; seed < 20; ++seed)
        {
            double prev = std::numeric_limits<double>::infinity();
            for (int db = -10; db >= -30; --db)
            {
                const double v = ub_theorem2(unit_scale_model(seed, db)).value_bits;
                if (v > prev)
                    return Verdict{false, "seed " + std::to_string(seed) + " increases at " + std::to_string(db) +
                                              " dB"};
                prev = v;
            }
            worst = std::max(worst, prev);
        }
        return Verdict{worst < 0.01, "20 unit-scale channels; max ub_t2 at -30 dB = " + fmt(worst) + " bits"};
    });

    criterion(4, "log-det correction is non-negative", 10.0, [] {
        std::mt19937_64 rng(404);
        double worst = std::numeric_limits<double>::infinity();
        for (int t = 0; t < 1000; ++t)
        {
            const auto n = static_cast<Eigen::Index>(2 + rng() % 7);
            const RealMatrix s = testing::random_spd(rng, n, 1e-2);
            const Partition p(testing::random_partition(rng, static_cast<std::size_t>(n)));
            worst = std::min(worst, log_det_correction(s, p));
        }
        return Verdict{worst >= -1e-12, "1000 SPD matrices, dims 2-8; min correction = " + fmt(worst) + " nats"};
    });

    criterion(5, "diagonal channels have zero correction", 0.0, [] {
        std::mt19937_64 rng(505);
        std::uniform_real_distribution<double> entry(0.1, 3.0);
        std::uniform_real_distribution<double> radius(0.5, 2.0);
        double worst_corr = 0.0;
        double worst_sum = 0.0;
        for (int t = 0; t < 100; ++t)
        {
            const std::size_t n = 2 + rng() % 7;
            std::vector<SubRegion> subs;
            for (std::size_t s : testing::random_partition(rng, n))
                subs.emplace_back(s, rng() % 2 ? Shape::ball : Shape::box, radius(rng));
            RealMatrix h = RealMatrix::Zero(static_cast<Eigen::Index>(n), static_cast<Eigen::Index>(n));
            for (Eigen::Index i = 0; i < h.rows(); ++i)
                h(i, i) = entry(rng) * (rng() % 2 ? 1.0 : -1.0);
            const ChannelModel m = normalize_radii(ChannelModel(h, 0.05 + entry(rng), ConstraintRegion(subs)));

            const NoiseCovariance nc = noise_covariance(m);
            worst_corr = std::max(worst_corr, std::abs(log_det_correction(nc)));

            double sum = 0.0;
            for (std::size_t i = 0; i < m.region().blocks(); ++i)
            {
                const SubspaceContext ctx{i, m.region().subregions()[i], nc.blocks[i], nc.whiteners[i], m.sigma_z()};
                sum += nats_to_bits(default_subspace_bound(ctx));
            }
            worst_sum = std::max(worst_sum, std::abs(ub_theorem1(m).value_bits - sum));
        }
        return Verdict{worst_corr < 1e-12 && worst_sum <= 1e-12, "100 diagonal channels; max |correction| = " +
                                                                     fmt(worst_corr) + ", max |t1 - sum| = " +
                                                                     fmt(worst_sum) + " bits"};
    });

    criterion(6, "water-filling matches the bisection oracle", 0.0, [] {
        std::mt19937_64 rng(606);
        std::uniform_int_distribution<int> count(1, 16);
        std::lognormal_distribution<double> pos(0.0, 1.5);
        double worst = 0.0;
        for (int t = 0; t < 1000; ++t)
        {
            std::vector<double> noise(static_cast<std::size_t>(count(rng)));
            for (auto &v : noise)
                v = pos(rng);
            const double budget = pos(rng);
            const WaterfillAllocation a = waterfill(noise, budget);
            const WaterfillAllocation o = waterfill_bisection_oracle(noise, budget);
            double total = 0.0;
            for (std::size_t i = 0; i < noise.size(); ++i)
            {
                worst = std::max(worst, std::abs(a.powers[i] - o.powers[i]));
                total += a.powers[i];
                const double tol = 1e-10 * a.water_level;
                if (a.powers[i] < 0.0 || (a.powers[i] > 0.0 && std::abs(a.powers[i] + noise[i] - a.water_level) > tol) ||
                    (a.powers[i] == 0.0 && noise[i] < a.water_level - tol))
                    return Verdict{false, "KKT violated on instance " + std::to_string(t)};
            }
            if (std::abs(total - budget) > 1e-10 * budget)
                return Verdict{false, "budget not met on instance " + std::to_string(t)};
        }
        return Verdict{worst <= 1e-8, "1000 instances; KKT holds; max |P - P_oracle| = " + fmt(worst)};
    });

    criterion(7, "realification algebra", 0.0, [] {
        std::mt19937_64 rng(707);
        double worst_pair = 0.0;
        double worst_det = 0.0;
        for (int t = 0; t < 200; ++t)
        {
            const auto n = static_cast<Eigen::Index>(1 + t % 4);
            const ComplexMatrix hc = testing::random_complex(rng, n);
            const RealMatrix h = linalg::realify(hc);
            const RealVector s = linalg::singular_values(h);
            for (Eigen::Index k = 0; k < s.size(); k += 2)
                worst_pair = std::max(worst_pair, std::abs(s(k) - s(k + 1)) / s(k));
            const double expected = std::norm(hc.determinant());
            worst_det = std::max(worst_det, std::abs(h.determinant() - expected) / expected);
        }
        return Verdict{worst_pair <= 1e-8 && worst_det <= 1e-8, "200 matrices; max pair mismatch = " +
                                                                    fmt(worst_pair) + ", max det error = " +
                                                                    fmt(worst_det)};
    });

    criterion(8, "Monte Carlo achievable rate stays under the compound bound", 60.0, [] {
        double worst_margin = -std::numeric_limits<double>::infinity();
        for (std::uint64_t seed = 0; seed < 10; ++seed)
        {
            const ConstraintRegion region = per_antenna_region(2, 1.0);
            const ChannelModel base(linalg::realify(random_channel(2, 800 + seed)), 1.0, region);
            for (double db : {-5.0, 5.0, 15.0, 25.0})
            {
                const ChannelModel m = at_snr(base, db);
                const MiEstimate est = mc_mutual_information(m, default_constellation(m), 100000, seed);
                const double ub = compound_upper(m).value_bits;
                const double margin = est.value_bits - 3.0 * est.std_error_bits - ub;
                worst_margin = std::max(worst_margin, margin);
                if (margin > 0.0)
                    return Verdict{false, "seed " + std::to_string(seed) + " at " + fmt(db) + " dB: estimate " +
                                              fmt(est.value_bits) + " > bound " + fmt(ub)};
            }
        }
        return Verdict{true, "40 model/SNR pairs, 1e5 samples; max (estimate - 3 se - bound) = " + fmt(worst_margin) +
                                 " bits"};
    });

    criterion(9, "Monte Carlo estimator against quadrature", 0.0, [] {
        std::string detail;
        bool ok = true;
        for (double snr_db : {-5.0, 0.0, 5.0})
        {
            const ConstraintRegion region({SubRegion(1, Shape::ball, 1.0)});
            const ChannelModel m(RealMatrix::Identity(1, 1), sigma_for_snr(region, snr_db), region);
            RealMatrix pts(1, 2);
            pts << -1.0, 1.0;
            const MiEstimate est = mc_mutual_information(m, Constellation(pts), 100000, 909);
            const double exact = testing::two_point_mi_bits(1.0, m.sigma_z());
            const double diff = std::abs(est.value_bits - exact);
            if (!(est.std_error_bits > 0.0))
                return Verdict{false, "zero standard error at " + fmt(snr_db) + " dB"};
            const double z = diff / est.std_error_bits;
            ok = ok && z <= 3.0;
            detail += fmt(snr_db) + " dB: |z| = " + fmt(z) + "; ";
        }
        return Verdict{ok, detail};
    });

    std::printf("%s: %d criterion(s) failed\n", failures ? "FAILED" : "OK", failures);
    return failures ? 1 : 0;
}
