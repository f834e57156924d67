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

#include <catch2/catch_amalgamated.hpp>

#include "ampcap/channel.hpp"
#include "ampcap/errors.hpp"
#include "support/oracles.hpp"

#include <cmath>
#include <filesystem>
#include <fstream>
#include <numbers>

using namespace ampcap;
using linalg::RealMatrix;
using linalg::RealVector;
using Catch::Matchers::ContainsSubstring;
using Catch::Matchers::WithinAbs;
using Catch::Matchers::WithinRel;

namespace
{

std::filesystem::path temp_file(const std::string &name)
{
    return std::filesystem::temp_directory_path() / ("ampcap_test_" + name);
}

void write_text(const std::filesystem::path &p, const std::string &text)
{
    std::ofstream(p) << text;
}

} // namespace

TEST_CASE("SubRegion - volumes")
{
    using std::numbers::pi;
    CHECK_THAT(SubRegion(2, Shape::ball, 1.0).volume(), WithinRel(pi, 1e-14));
    CHECK_THAT(SubRegion(3, Shape::ball, 2.0).volume(), WithinRel(4.0 / 3.0 * pi * 8.0, 1e-14));
    CHECK_THAT(SubRegion(1, Shape::ball, 0.5).volume(), WithinRel(1.0, 1e-14));

    // Circumscribed radius sqrt(2) gives the square of side 2.
    const SubRegion square(2, Shape::box, std::sqrt(2.0));
    CHECK_THAT(square.side(), WithinRel(2.0, 1e-15));
    CHECK_THAT(square.volume(), WithinRel(4.0, 1e-14));

    const double r = 1.7;
    const ConstraintRegion two_balls({SubRegion(2, Shape::ball, r), SubRegion(2, Shape::ball, r)});
    CHECK_THAT(volume(two_balls), WithinRel(std::pow(pi * r * r, 2), 1e-14));
    CHECK_THAT(std::exp(two_balls.log_volume()), WithinRel(volume(two_balls), 1e-13));

    CHECK_THROWS_AS(SubRegion(0, Shape::ball, 1.0), InputError);
    CHECK_THROWS_AS(SubRegion(2, Shape::ball, 0.0), InputError);
    CHECK_THROWS_AS(SubRegion(2, Shape::box, -1.0), InputError);
}

TEST_CASE("SubRegion - membership and circumscribed radius")
{
    const SubRegion box(3, Shape::box, 3.0);
    const double half = 0.5 * box.side();
    RealVector corner = RealVector::Constant(3, half);
    CHECK(box.contains(corner));
    CHECK_THAT(corner.norm(), WithinRel(3.0, 1e-15));
    corner(0) *= 1.001;
    CHECK_FALSE(box.contains(corner));

    const SubRegion ball(2, Shape::ball, 2.0);
    RealVector p(2);
    p << 2.0, 0.0;
    CHECK(ball.contains(p));
    p << 1.5, 1.5;
    CHECK_FALSE(ball.contains(p));
}

TEST_CASE("ConstraintRegion - per-antenna sup norm is R sqrt(K)")
{
    const double r = 1.3;
    const std::size_t k = 3;
    const ConstraintRegion region = per_antenna_region(k, r);
    CHECK(region.is_per_antenna());
    CHECK(region.is_normalized());
    CHECK(region.dimension() == 6);
    CHECK_THAT(region.sup_norm(), WithinRel(r * std::sqrt(3.0), 1e-15));

    std::mt19937_64 rng(21);
    std::uniform_real_distribution<double> angle(0.0, 2.0 * std::numbers::pi);
    std::uniform_real_distribution<double> unit(0.0, 1.0);
    double best = 0.0;
    for (int t = 0; t < 2000; ++t)
    {
        RealVector x(6);
        // Half the draws on the outer circles (the maximizing corners), half inside.
        const double scale = t % 2 ? 1.0 : std::sqrt(unit(rng));
        for (std::size_t a = 0; a < k; ++a)
        {
            const double phi = angle(rng);
            x(2 * a) = scale * r * std::cos(phi);
            x(2 * a + 1) = scale * r * std::sin(phi);
        }
        REQUIRE(region.contains(x));
        best = std::max(best, x.norm());
    }
    CHECK_THAT(best, WithinRel(r * std::sqrt(3.0), 1e-12));
}

TEST_CASE("ChannelModel - validation")
{
    const ConstraintRegion region = per_antenna_region(2, 1.0);
    CHECK_NOTHROW(ChannelModel(RealMatrix::Identity(4, 4), 0.1, region));
    CHECK_THROWS_AS(ChannelModel(RealMatrix::Identity(3, 3), 0.1, region), InputError);
    CHECK_THROWS_AS(ChannelModel(RealMatrix::Identity(4, 4), 0.0, region), InputError);
    RealMatrix singular = RealMatrix::Identity(4, 4);
    singular(3, 3) = 0.0;
    CHECK_THROWS_AS(ChannelModel(singular, 0.1, region), RankDeficientError);
    RealMatrix bad = RealMatrix::Identity(4, 4);
    bad(0, 1) = std::nan("");
    CHECK_THROWS_AS(ChannelModel(bad, 0.1, region), InputError);
}

TEST_CASE("normalize_radii")
{
    const ChannelModel equal(RealMatrix::Identity(4, 4), 0.3, per_antenna_region(2, 1.5));
    CHECK(normalize_radii(equal) == equal);

    const ConstraintRegion mixed({SubRegion(2, Shape::ball, 1.0), SubRegion(2, Shape::ball, 2.0)});
    const ChannelModel model(RealMatrix::Identity(4, 4), 0.3, mixed);
    const ChannelModel norm = normalize_radii(model);
    CHECK(norm.region().subregions()[0].radius() == 1.0);
    CHECK(norm.region().subregions()[1].radius() == 1.0);
    RealMatrix expected = RealMatrix::Identity(4, 4);
    expected(2, 2) = 2.0;
    expected(3, 3) = 2.0;
    CHECK(norm.h() == expected);
    CHECK(norm.sigma_z2() == 0.3);

    // H X covers the same points: the image of a boundary point is preserved.
    RealVector x(4);
    x << 0.6, 0.8, 0.0, 2.0;
    RealVector x_scaled(4);
    x_scaled << 0.6, 0.8, 0.0, 1.0;
    CHECK((model.h() * x - norm.h() * x_scaled).norm() < 1e-15);
}

TEST_CASE("sigma_for_snr")
{
    CHECK_THAT(sigma_for_snr(per_antenna_region(2, 1.0), 0.0), WithinRel(0.25, 1e-15));
    CHECK_THAT(sigma_for_snr(per_antenna_region(1, 1.0), 10.0), WithinRel(0.05, 1e-15));

    const ConstraintRegion region = per_antenna_region(3, 0.7);
    for (double db : {-30.0, -7.5, 0.0, 13.0, 50.0})
    {
        const ChannelModel m(RealMatrix::Identity(6, 6), sigma_for_snr(region, db), region);
        CHECK_THAT(snr_of(m).snr_db, WithinAbs(db, 1e-12));
        CHECK_THAT(snr_of(at_snr(m, db + 1.0)).snr_db, WithinAbs(db + 1.0, 1e-12));
    }

    const ConstraintRegion mixed({SubRegion(2, Shape::ball, 1.0), SubRegion(2, Shape::ball, 2.0)});
    CHECK_THROWS_AS(sigma_for_snr(mixed, 0.0), InputError);
}

TEST_CASE("random_channel - determinism and moments")
{
    CHECK(random_channel(3, 42) == random_channel(3, 42));
    CHECK(random_channel(3, 42) != random_channel(3, 43));
    CHECK_THROWS_AS(random_channel(0, 1), InputError);

    double acc = 0.0;
    std::size_t count = 0;
    for (std::uint64_t seed = 0; seed < 2500; ++seed)
    {
        const linalg::ComplexMatrix hc = random_channel(2, seed);
        acc += hc.cwiseAbs2().sum();
        count += 4;
    }
    REQUIRE(count == 10000);
    CHECK_THAT(acc / static_cast<double>(count), WithinAbs(1.0, 0.05));
}

TEST_CASE("channel file - round trip is bit exact")
{
    const ConstraintRegion region({SubRegion(2, Shape::ball, 0.3), SubRegion(1, Shape::box, 1.0 / 3.0),
                                   SubRegion(3, Shape::box, std::numbers::pi)});
    std::mt19937_64 rng(22);
    const ChannelModel model(testing::random_matrix(rng, 6) * 0.1, 1.0 / 7.0, region);

    const auto path = temp_file("roundtrip.json");
    save_model(model, path);
    const ChannelModel back = load_model(path);
    CHECK(back == model);
    std::filesystem::remove(path);
}

TEST_CASE("channel file - complex form is realified")
{
    const linalg::ComplexMatrix hc = random_channel(2, 5);
    const std::string text = serialize_complex_channel(hc, 0.125, per_antenna_region(2, 1.0));
    const ChannelModel m = parse_model(text);
    CHECK(m.h() == linalg::realify(hc));
    CHECK(m.sigma_z2() == 0.125);
    CHECK(m.region().is_per_antenna());
}

TEST_CASE("channel file - errors")
{
    const std::string partition = R"("partition": [{"dim": 2, "shape": "ball", "radius": 1}])";

    // sum N_i = 2 but H is 3 x 3
    CHECK_THROWS_WITH(parse_model(R"({"H_real": [[1,0,0],[0,1,0],[0,0,1]], "sigma_z2": 1, )" + partition + "}"),
                      ContainsSubstring("dimension mismatch"));
    CHECK_THROWS_AS(parse_model(R"({"H_real": [[1,2],[2,4]], "sigma_z2": 1, )" + partition + "}"),
                    RankDeficientError);
    CHECK_THROWS_AS(parse_model("{ not json"), InputError);
    CHECK_THROWS_AS(parse_model(R"({"H_real": [[1,0],[0,1]], )" + partition + "}"), InputError);
    CHECK_THROWS_AS(parse_model(R"({"H_real": [[1,0],[0]], "sigma_z2": 1, )" + partition + "}"), InputError);
    CHECK_THROWS_AS(parse_model(R"({"H_real": [[1,0],[0,1]], "sigma_z2": "x", )" + partition + "}"), InputError);
    CHECK_THROWS_AS(
        parse_model(R"({"H_real": [[1,0],[0,1]], "sigma_z2": 1, "partition": [{"dim": 2, "shape": "cone", "radius": 1}]})"),
        InputError);
    CHECK_THROWS_WITH(parse_model(R"({"n_complex": 2, "H_complex": [[[1,0]]], "sigma_z2": 1, )" + partition + "}"),
                      ContainsSubstring("dimension mismatch"));
    CHECK_THROWS_AS(load_model(temp_file("does_not_exist.json")), InputError);

    const auto path = temp_file("singular.json");
    write_text(path, R"({"H_real": [[1,1],[1,1]], "sigma_z2": 1, )" + partition + "}");
    CHECK_THROWS_AS(load_model(path), RankDeficientError);
    std::filesystem::remove(path);
}
