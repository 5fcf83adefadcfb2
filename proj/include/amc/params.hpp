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
#include <span>
#include <stdexcept>
#include <string_view>

#include <boost/multiprecision/cpp_int.hpp>

namespace amc {

using Rational = boost::multiprecision::cpp_rational;
using BigInt = boost::multiprecision::cpp_int;

class ParamError : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

struct PacParams {
    Rational epsilon;
    Rational delta;
    uint64_t min_rounds = 1;
};

/// Exact value of a decimal string such as "0.8", "1", "2.5e-1" or "3/4".
Rational parse_decimal(std::string_view text);

/// Validates ranges: epsilon > 0, 0 < delta <= 1, min_rounds >= 1.
PacParams make_params(const Rational& epsilon, const Rational& delta, uint64_t min_rounds = 1);

/// 1 + ceil(9.84 (1 + eps/(1+eps)) (1 + 1/eps)^2), computed exactly.
uint64_t compute_thresh(const Rational& epsilon);

/// Sum over i in [k, t] of C(t,i) p^i (1-p)^(t-i).
Rational binomial_tail(uint64_t t, uint64_t k, const Rational& p);

/// Per-round failure probability bound used by the median amplification.
inline Rational round_failure_bound() { return Rational(9, 25); }

/// Smallest odd t >= min_rounds whose median-failure tail at 9/25 is <= delta.
uint64_t compute_t(const Rational& delta, uint64_t min_rounds = 1);

/// Element at index floor(n/2) of the sorted values.
uint64_t find_median(std::span<const uint64_t> values);

}  // namespace amc
