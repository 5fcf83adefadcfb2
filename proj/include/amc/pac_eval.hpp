/******************************************
Copyright (C) 2026 Authors of amccert, see AUTHORS file

Permission is hereby granted, free of charge, to any person obtaining a copy
of this software and associated documentation files (the "Software"), to deal
in the Software without restriction, including without limitation the rights
to use, copy, modify, merge, publish, distribute, sublicense, and/or sell
copies of the Software, and to permit persons to whom the Software is
furnished to do so, subject to the following conditions:

The above copyright notice and this permission notice shall be included in
all copies or substantial portions of the Software.

THE SOFTWARE IS PROVIDED "AS IS", WITHOUT WARRANTY OF ANY KIND, EXPRESS OR
IMPLIED, INCLUDING BUT NOT LIMITED TO THE WARRANTIES OF MERCHANTABILITY,
FITNESS FOR A PARTICULAR PURPOSE AND NONINFRINGEMENT. IN NO EVENT SHALL THE
AUTHORS OR COPYRIGHT HOLDERS BE LIABLE FOR ANY CLAIM, DAMAGES OR OTHER
LIABILITY, WHETHER IN AN ACTION OF CONTRACT, TORT OR OTHERWISE, ARISING FROM,
OUT OF OR IN CONNECTION WITH THE SOFTWARE OR THE USE OR OTHER DEALINGS IN
THE SOFTWARE.
***********************************************/

#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "amc/counter.hpp"
#include "amc/formula.hpp"
#include "amc/params.hpp"

namespace amc {

struct PacTrial {
    uint64_t counted = 0;
    std::optional<uint64_t> certified;
    std::string error;
    bool exact = false;
    /// Counter and checker stopped at the same bit offset.
    bool same_bits_consumed = false;
    bool outside = false;
};

struct PacReport {
    uint64_t exact_count = 0;
    Rational epsilon;
    Rational delta;
    Rational lower;  ///< exact_count / (1 + epsilon)
    Rational upper;  ///< exact_count * (1 + epsilon)
    std::vector<PacTrial> trials;
    size_t failures = 0;  ///< certified counts outside [lower, upper]
    size_t rejected = 0;

    Rational failure_fraction() const;
    bool all_accepted() const { return rejected == 0; }
};

/// Fresh random bytes for trial `trial`.
using BitSource = std::function<std::vector<uint8_t>(size_t trial, size_t nbytes)>;

/// Runs `trials` independent count + certcheck cycles. Certificates and
/// proofs go through their text formats before checking.
PacReport pac_eval(const CnfXorFormula& f, const PacParams& params, size_t trials, const BitSource& source,
                   unsigned jobs = 1, const CounterConfig& cfg = {});

bool outside_envelope(uint64_t count, uint64_t exact, const Rational& epsilon);

}  // namespace amc
