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

#include <stdexcept>
#include <string>

namespace ampcap
{

// Malformed or inconsistent input: bad dimensions, unparsable files, violated preconditions.
class InputError : public std::invalid_argument
{
public:
    using std::invalid_argument::invalid_argument;
};

// A matrix that must be full rank is numerically singular (condition number above the limit).
class RankDeficientError : public std::runtime_error
{
public:
    using std::runtime_error::runtime_error;
};

// Non-positive-definite covariance passed where an SPD matrix is required.
class InvalidCovarianceError : public std::runtime_error
{
public:
    using std::runtime_error::runtime_error;
};

// A factorization failed to produce finite output.
class NumericError : public std::runtime_error
{
public:
    using std::runtime_error::runtime_error;
};

// A bound was requested for a region it does not cover (e.g. per-antenna bound on a box region).
class UnsupportedConfiguration : public std::runtime_error
{
public:
    using std::runtime_error::runtime_error;
};

} // namespace ampcap
