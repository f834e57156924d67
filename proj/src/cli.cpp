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

#include "ampcap/cli.hpp"
#include "ampcap/errors.hpp"
#include "ampcap/format.hpp"

#include <CLI11.hpp>

#include <charconv>
#include <cmath>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <sstream>

namespace ampcap::cli
{

namespace
{

double parse_number(std::string_view text)
{
    while (!text.empty() && text.front() == ' ')
        text.remove_prefix(1);
    while (!text.empty() && text.back() == ' ')
        text.remove_suffix(1);
    double v = 0.0;
    const auto *end = text.data() + text.size();
    auto res = std::from_chars(text.data(), end, v);
    if (text.empty() || res.ec != std::errc() || res.ptr != end || !std::isfinite(v))
        throw InputError("not a number: '" + std::string(text) + "'");
    return v;
}

std::vector<std::string_view> split(std::string_view text, char sep)
{
    std::vector<std::string_view> parts;
    std::size_t start = 0;
    while (true)
    {
        const std::size_t pos = text.find(sep, start);
        parts.push_back(text.substr(start, pos == std::string_view::npos ? std::string_view::npos : pos - start));
        if (pos == std::string_view::npos)
            break;
        start = pos + 1;
    }
    return parts;
}

const std::vector<std::string> all_bounds = {"epi_lb", "ub_t1", "ub_t2", "ub_pa1", "compound_ub"};

std::string cell(bool selected, const std::optional<BoundResult> &r)
{
    return selected && r ? format_double(r->value_bits) : std::string();
}

// One CSV/table row per SNR: snr, five bounds, correction, gap. Empty strings for unselected or
// inapplicable bounds.
std::vector<std::vector<std::string>> bound_rows(const ChannelModel &model, std::span<const double> snrs_db,
                                                 const std::set<std::string> &bounds)
{
    std::vector<std::vector<std::string>> rows;
    rows.reserve(snrs_db.size());
    for (double snr : snrs_db)
    {
        const BoundSet b = evaluate_bounds(at_snr(model, snr));
        rows.push_back({format_double(snr), cell(bounds.contains("epi_lb"), b.epi_lb),
                        cell(bounds.contains("ub_t1"), b.ub_t1), cell(bounds.contains("ub_t2"), b.ub_t2),
                        cell(bounds.contains("ub_pa1"), b.ub_pa1), cell(bounds.contains("compound_ub"), b.compound_ub),
                        format_double(b.correction_bits), format_double(b.gap_bits)});
    }
    return rows;
}

} // namespace

void SweepConfig::validate() const
{
    if (!std::isfinite(snr_start_db) || !std::isfinite(snr_stop_db) || !std::isfinite(snr_step_db))
        throw InputError("SNR range must be finite");
    if (!(snr_step_db > 0.0))
        throw InputError("SNR step must be positive");
    if (!(snr_start_db <= snr_stop_db))
        throw InputError("SNR start must not exceed SNR stop");
}

std::vector<double> SweepConfig::grid() const
{
    validate();
    const auto count = static_cast<std::size_t>(std::floor((snr_stop_db - snr_start_db) / snr_step_db + 1e-9)) + 1;
    std::vector<double> out;
    out.reserve(count);
    for (std::size_t i = 0; i < count; ++i)
        out.push_back(snr_start_db + static_cast<double>(i) * snr_step_db);
    return out;
}

SweepConfig parse_snr_range(std::string_view text)
{
    const auto parts = split(text, ':');
    if (parts.size() != 3)
        throw InputError("SNR range must be start:step:stop");
    SweepConfig cfg{parse_number(parts[0]), parse_number(parts[2]), parse_number(parts[1])};
    cfg.validate();
    return cfg;
}

std::vector<double> parse_snr(std::string_view text)
{
    if (text.find(':') != std::string_view::npos)
        return parse_snr_range(text).grid();
    std::vector<double> out;
    for (auto part : split(text, ','))
        out.push_back(parse_number(part));
    return out;
}

std::set<std::string> parse_bound_selection(std::string_view text)
{
    std::set<std::string> out;
    for (auto part : split(text, ','))
    {
        const std::string name(part);
        if (std::find(all_bounds.begin(), all_bounds.end(), name) == all_bounds.end())
            throw InputError("unknown bound '" + name + "' (expected epi_lb, ub_t1, ub_t2, ub_pa1, compound_ub)");
        out.insert(name);
    }
    return out;
}

void write_sweep_csv(const ChannelModel &model, std::span<const double> snrs_db, const std::set<std::string> &bounds,
                     std::ostream &out)
{
    std::ostringstream buf;
    buf << csv_header << '\n';
    for (const auto &row : bound_rows(model, snrs_db, bounds))
    {
        for (std::size_t c = 0; c < row.size(); ++c)
            buf << (c ? "," : "") << row[c];
        buf << '\n';
    }
    out << buf.str();
}

void write_bounds_table(const ChannelModel &model, std::span<const double> snrs_db,
                        const std::set<std::string> &bounds, std::ostream &out)
{
    const auto rows = bound_rows(model, snrs_db, bounds);
    std::ostringstream buf;
    for (auto name : split(csv_header, ','))
        buf << std::setw(24) << name;
    buf << '\n';
    for (const auto &row : rows)
    {
        for (const auto &v : row)
            buf << std::setw(24) << (v.empty() ? "n/a" : v);
        buf << '\n';
    }
    out << buf.str();
}

std::vector<VerifyRow> verify_model(const ChannelModel &model, std::span<const double> snrs_db, std::size_t samples,
                                    std::uint64_t seed)
{
    if (samples < min_mc_samples)
        throw InputError("verify: at least " + std::to_string(min_mc_samples) + " samples are required");
    std::vector<VerifyRow> rows;
    for (double snr : snrs_db)
    {
        const ChannelModel m = normalize_radii(at_snr(model, snr));
        const MiEstimate est = mc_mutual_information(m, default_constellation(m), samples, seed);
        const double ub = compound_upper(m).value_bits;
        rows.push_back({snr, est, ub, est.value_bits - 3.0 * est.std_error_bits > ub});
    }
    return rows;
}

void write_verify_report(std::span<const VerifyRow> rows, std::ostream &out)
{
    std::ostringstream buf;
    buf << std::setw(24) << "snr_db" << std::setw(24) << "mi_bits" << std::setw(24) << "std_error_bits"
        << std::setw(24) << "compound_ub" << std::setw(12) << "status" << '\n';
    for (const auto &r : rows)
        buf << std::setw(24) << format_double(r.snr_db) << std::setw(24) << format_double(r.estimate.value_bits)
            << std::setw(24) << format_double(r.estimate.std_error_bits) << std::setw(24)
            << format_double(r.compound_ub) << std::setw(12) << (r.violation ? "VIOLATION" : "OK") << '\n';
    out << buf.str();
}

int run(const std::vector<std::string> &args, std::ostream &out, std::ostream &err)
{
    CLI::App app{"Capacity bounds for amplitude-constrained vector Gaussian channels", "ampcap"};
    app.require_subcommand(1);

    std::string model_path;
    std::string snr_text;
    std::string out_path;
    std::string bounds_text = "epi_lb,ub_t1,ub_t2,ub_pa1,compound_ub";
    std::uint64_t seed = 1;
    std::size_t samples = 100000;
    std::size_t n_complex = 2;
    bool reference = false;

    auto *bounds_cmd = app.add_subcommand("bounds", "Print every bound at the given SNR points");
    bounds_cmd->add_option("--model", model_path, "Channel JSON file")->required();
    bounds_cmd->add_option("--snr", snr_text, "SNR list a,b,c or range start:step:stop in dB (default: model SNR)");
    bounds_cmd->add_option("--bounds", bounds_text, "Comma-separated bounds to report");

    auto *sweep_cmd = app.add_subcommand("sweep", "Write bounds over an SNR grid as CSV");
    sweep_cmd->add_option("--model", model_path, "Channel JSON file")->required();
    sweep_cmd->add_option("--snr", snr_text, "SNR range start:step:stop or list in dB")->default_str("-30:1:50");
    sweep_cmd->add_option("--out", out_path, "CSV output path (default: standard output)");
    sweep_cmd->add_option("--bounds", bounds_text, "Comma-separated bounds to report");

    auto *gen_cmd = app.add_subcommand("gen-channel", "Write a random per-antenna channel file");
    gen_cmd->add_option("--n-complex", n_complex, "Number of complex antennas")->default_val(2);
    gen_cmd->add_option("--seed", seed, "Random seed")->default_val(1);
    gen_cmd->add_option("--snr", snr_text, "SNR in dB used to set sigma_z2")->default_str("10");
    gen_cmd->add_option("--out", out_path, "Output path")->required();
    gen_cmd->add_flag("--reference", reference, "Write the fixed 2-antenna reference channel instead");

    auto *verify_cmd = app.add_subcommand("verify", "Check Monte Carlo achievable rates against the compound bound");
    verify_cmd->add_option("--model", model_path, "Channel JSON file")->required();
    verify_cmd->add_option("--snr", snr_text, "SNR list or range in dB (default: model SNR)");
    verify_cmd->add_option("--samples", samples, "Monte Carlo samples per SNR")->default_val(100000);
    verify_cmd->add_option("--seed", seed, "Random seed")->default_val(1);

    std::vector<const char *> argv{"ampcap"};
    for (const auto &a : args)
        argv.push_back(a.c_str());

    try
    {
        app.parse(static_cast<int>(argv.size()), argv.data());
    }
    catch (const CLI::ParseError &e)
    {
        const int code = app.exit(e, out, err);
        return code == 0 ? exit_ok : exit_usage;
    }

    try
    {
        if (*gen_cmd)
        {
            const double snr_db = parse_number(snr_text.empty() ? "10" : snr_text);
            if (reference && n_complex != 2)
                throw InputError("--reference implies --n-complex 2");
            const linalg::ComplexMatrix hc = reference ? reference_channel() : random_channel(n_complex, seed);
            const ConstraintRegion region = per_antenna_region(n_complex, 1.0);
            save_complex_channel(hc, sigma_for_snr(region, snr_db), region, out_path);
            return exit_ok;
        }

        const ChannelModel model = load_model(model_path);
        const std::vector<double> snrs =
            snr_text.empty() ? std::vector<double>{snr_of(normalize_radii(model)).snr_db} : parse_snr(snr_text);

        if (*bounds_cmd)
        {
            write_bounds_table(model, snrs, parse_bound_selection(bounds_text), out);
            return exit_ok;
        }
        if (*sweep_cmd)
        {
            const auto selection = parse_bound_selection(bounds_text);
            const std::vector<double> grid = snr_text.empty() ? SweepConfig{}.grid() : snrs;
            if (out_path.empty())
            {
                write_sweep_csv(model, grid, selection, out);
                return exit_ok;
            }
            std::ostringstream buf;
            write_sweep_csv(model, grid, selection, buf);
            std::ofstream file(out_path, std::ios::binary | std::ios::trunc);
            if (!(file << buf.str()))
                throw std::runtime_error("cannot write '" + out_path + "'");
            return exit_ok;
        }
        if (*verify_cmd)
        {
            const auto rows = verify_model(model, snrs, samples, seed);
            write_verify_report(rows, out);
            for (const auto &r : rows)
                if (r.violation)
                    return exit_violation;
            return exit_ok;
        }
    }
    catch (const RankDeficientError &e)
    {
        err << "error: " << e.what() << '\n';
        return exit_numeric;
    }
    catch (const InvalidCovarianceError &e)
    {
        err << "error: " << e.what() << '\n';
        return exit_numeric;
    }
    catch (const NumericError &e)
    {
        err << "error: " << e.what() << '\n';
        return exit_numeric;
    }
    catch (const std::exception &e)
    {
        err << "error: " << e.what() << '\n';
        return exit_usage;
    }
    return exit_usage;
}

} // namespace ampcap::cli
