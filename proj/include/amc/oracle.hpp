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
#include <utility>
#include <vector>

#include "amc/formula.hpp"
#include "amc/params.hpp"

namespace amc::oracle {

// Exhaustive ground truth for tests and fixtures. Exponential by design,
// hence the hard size guards; nothing on the certified path calls it.

class GuardExceeded : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

inline constexpr size_t kMaxCountVars = 24;
inline constexpr size_t kMaxHashVars = 5;

/// Number of distinct restrictions to `proj` of the models of `f`.
uint64_t exact_projected_count(const CnfXorFormula& f, std::span<const Var> proj);

/// A point of {0,1}^|V| as a bitmask (bit i is the i-th variable) and a target hash bit.
using HashPair = std::pair<uint32_t, bool>;

/// Fraction of all pairs (S subset of V, b bit) with parity(|w_i & S| + b) = c_i
/// for every pair. Points must be distinct; 1 to 3 pairs.
Rational exact_xor_joint_probability(size_t num_vars, std::span<const HashPair> pairs);

}  // namespace amc::oracle
