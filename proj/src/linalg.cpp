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

#include "ampcap/linalg.hpp"
#include "ampcap/errors.hpp"

#include <cmath>
#include <limits>
#include <numeric>
#include <string>

namespace ampcap::linalg
{

Partition::Partition(std::vector<std::size_t> sizes) : sizes_(std::move(sizes))
{
    if (sizes_.empty())
        throw InputError("Partition: at least one block is required");
    offsets_.reserve(sizes_.size());
    for (std::size_t n : sizes_)
    {
        if (n == 0)
            throw InputError("Partition: block sizes must be positive");
        offsets_.push_back(dimension_);
        dimension_ += n;
    }
}

std::size_t Partition::size(std::size_t i) const
{
    if (i >= sizes_.size())
        throw InputError("Partition: block index " + std::to_string(i) + " out of range");
    return sizes_[i];
}

std::size_t Partition::offset(std::size_t i) const
{
    if (i >= sizes_.size())
        throw InputError("Partition: block index " + std::to_string(i) + " out of range");
    return offsets_[i];
}

bool all_finite(const RealMatrix &m)
{
    return m.allFinite();
}

bool all_finite(const ComplexMatrix &m)
{
    return m.real().allFinite() && m.imag().allFinite();
}

RealMatrix realify(const ComplexMatrix &hc)
{
    if (hc.rows() == 0 || hc.rows() != hc.cols())
        throw InputError("realify: complex matrix must be square and non-empty");
    if (!all_finite(hc))
        throw InputError("realify: non-finite entry");

    const Eigen::Index n = hc.rows();
    RealMatrix h(2 * n, 2 * n);
    for (Eigen::Index r = 0; r < n; ++r)
        for (Eigen::Index c = 0; c < n; ++c)
        {
            const double a = hc(r, c).real();
            const double b = hc(r, c).imag();
            h(2 * r, 2 * c) = a;
            h(2 * r, 2 * c + 1) = -b;
            h(2 * r + 1, 2 * c) = b;
            h(2 * r + 1, 2 * c + 1) = a;
        }
    return h;
}

Svd svd(const RealMatrix &m)
{
    if (m.rows() != m.cols())
        throw InputError("svd: matrix must be square");
    if (!all_finite(m))
        throw InputError("svd: non-finite entry");

    Eigen::JacobiSVD<RealMatrix> jsvd(m, Eigen::ComputeFullU | Eigen::ComputeFullV);
    Svd out{jsvd.singularValues(), jsvd.matrixU(), jsvd.matrixV()};
    if (!out.singular_values.allFinite() || !out.u.allFinite() || !out.v.allFinite())
        throw NumericError("svd: factorization did not converge to finite factors");
    return out;
}

RealVector singular_values(const RealMatrix &m)
{
    if (m.rows() != m.cols())
        throw InputError("singular_values: matrix must be square");
    if (!all_finite(m))
        throw InputError("singular_values: non-finite entry");
    Eigen::JacobiSVD<RealMatrix> jsvd(m);
    RealVector s = jsvd.singularValues();
    if (!s.allFinite())
        throw NumericError("singular_values: factorization did not converge");
    return s;
}

double condition_number(const RealMatrix &m)
{
    const RealVector s = singular_values(m);
    if (s.size() == 0)
        return std::numeric_limits<double>::infinity();
    const double smin = s(s.size() - 1);
    if (smin <= 0.0)
        return std::numeric_limits<double>::infinity();
    return s(0) / smin;
}

void require_full_rank(const RealMatrix &m, const char *what)
{
    const double cond = condition_number(m);
    if (!(cond <= condition_limit))
        throw RankDeficientError(std::string(what) + ": matrix is rank deficient (condition number " +
                                 std::to_string(cond) + ")");
}

RealMatrix cholesky_lower(const RealMatrix &s)
{
    if (s.rows() == 0 || s.rows() != s.cols())
        throw InputError("cholesky_lower: matrix must be square and non-empty");
    if (!all_finite(s))
        throw InputError("cholesky_lower: non-finite entry");

    const double scale = s.cwiseAbs().maxCoeff();
    if (!((s - s.transpose()).cwiseAbs().maxCoeff() <= 1e-10 * scale))
        throw InvalidCovarianceError("cholesky_lower: matrix is not symmetric");

    Eigen::LLT<RealMatrix> llt(s);
    if (llt.info() != Eigen::Success)
        throw InvalidCovarianceError("cholesky_lower: matrix is not positive definite");
    RealMatrix l = llt.matrixL();
    if (!l.allFinite() || (l.diagonal().array() <= 0.0).any())
        throw InvalidCovarianceError("cholesky_lower: matrix is not positive definite");
    return l;
}

RealMatrix principal_block(const RealMatrix &m, const Partition &partition, std::size_t i)
{
    const auto n = static_cast<Eigen::Index>(partition.dimension());
    if (m.rows() != n || m.cols() != n)
        throw InputError("principal_block: matrix dimension does not match partition");
    const auto off = static_cast<Eigen::Index>(partition.offset(i));
    const auto len = static_cast<Eigen::Index>(partition.size(i));
    return m.block(off, off, len, len);
}

double log_det(const RealMatrix &m)
{
    if (m.rows() == 0 || m.rows() != m.cols())
        throw InputError("log_det: matrix must be square and non-empty");
    require_full_rank(m, "log_det");

    Eigen::PartialPivLU<RealMatrix> lu(m);
    const RealMatrix &packed = lu.matrixLU();
    double acc = 0.0;
    for (Eigen::Index k = 0; k < packed.rows(); ++k)
        acc += std::log(std::abs(packed(k, k)));
    return acc;
}

double log_det_spd(const RealMatrix &s)
{
    const RealMatrix l = cholesky_lower(s);
    return 2.0 * l.diagonal().array().log().sum();
}

bool singular_values_paired(const RealVector &s, double rel_tol)
{
    if (s.size() % 2 != 0)
        return false;
    const double scale = s.size() > 0 ? s.cwiseAbs().maxCoeff() : 0.0;
    for (Eigen::Index k = 0; k + 1 < s.size(); k += 2)
    {
        const double ref = std::max(std::abs(s(k)), std::abs(s(k + 1)));
        // Pairs at the noise floor of the largest value are compared against that scale.
        const double tol = rel_tol * std::max(ref, 1e-14 * scale);
        if (std::abs(s(k) - s(k + 1)) > tol)
            return false;
    }
    return true;
}

} // namespace ampcap::linalg
