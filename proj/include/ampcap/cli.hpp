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
#include "ampcap/oracle.hpp"
#include "ampcap/channel.hpp"

#include <cstdint>
#include <iosfwd>
#include <set>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace ampcap::cli
{

enum ExitCode : int
{
    exit_ok = 0,
    exit_usage = 1,
    exit_numeric = 2,
    exit_violation = 3
};

// Inclusive uniform SNR grid in dB.
struct SweepConfig
{
    double snr_start_db = -30.0;
    double snr_stop_db = 50.0;
    double snr_step_db = 1.0;

    void validate() const;
    std::vector<double> grid() const;
};

/// "a,b,c" lists or "start:step:stop" inclusive ranges; a single number is a one-point list.
std::vector<double> parse_snr(std::string_view text);
SweepConfig parse_snr_range(std::string_view text);

// Column names in CSV order, first column excluded.
inline constexpr std::string_view csv_header = "snr_db,epi_lb,ub_t1,ub_t2,ub_pa1,compound_ub,correction,gap_bits";

std::set<std::string> parse_bound_selection(std::string_view text);

void write_sweep_csv(const ChannelModel &model, std::span<const double> snrs_db, const std::set<std::string> &bounds,
                     std::ostream &out);
void write_bounds_table(const ChannelModel &model, std::span<const double> snrs_db,
                        const std::set<std::string> &bounds, std::ostream &out);

struct VerifyRow
{
    double snr_db;
    MiEstimate estimate;
    double compound_ub;
    bool violation;
};

std::vector<VerifyRow> verify_model(const ChannelModel &model, std::span<const double> snrs_db, std::size_t samples,
                                    std::uint64_t seed);
void write_verify_report(std::span<const VerifyRow> rows, std::ostream &out);

// Whole command line: subcommand dispatch, error reporting, exit code.
int run(const std::vector<std::string> &args, std::ostream &out, std::ostream &err);

} // namespace ampcap::cli
