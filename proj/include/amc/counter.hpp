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
#include <optional>
#include <span>
#include <vector>

#include "amc/certificate.hpp"
#include "amc/formula.hpp"
#include "amc/params.hpp"
#include "amc/randomness.hpp"
#include "amc/solver.hpp"
#include "amc/xlrup.hpp"

namespace amc {

enum class SearchMode {
    Linear,     ///< m = 1, 2, 3, ...
    Galloping,  ///< doubling, then binary search inside the last gap
};

struct CounterConfig {
    SolverConfig solver;
    SearchMode search = SearchMode::Linear;
};

/// Largest projection set the counter accepts; keeps 2^m * count in 64 bits.
inline constexpr size_t kMaxProjection = 40;

struct RoundResult {
    uint64_t m = 0;
    std::vector<Assignment> list_lo;
    std::optional<std::vector<Assignment>> list_hi;
    uint64_t estimate = 0;
    /// Unsatisfiability proof of F + m XORs + bans of list_hi.
    std::optional<xlrup::Proof> proof;

    bool failed() const { return !list_hi.has_value(); }
};

/// Smallest m in [1, |proj|-1] whose bounded count under the first m XORs
/// drops below thresh, or nullopt when no prefix does. Both search modes
/// return the same m because counts never grow as XORs are added.
std::optional<uint64_t> find_m(const CnfXorFormula& f, std::span<const Var> proj, std::span<const Xor> xors,
                               uint64_t thresh, const CounterConfig& cfg = {});

RoundResult approxmc_core(const CnfXorFormula& f, std::span<const Var> proj, uint64_t thresh,
                          std::span<const Xor> xors, const CounterConfig& cfg = {});

struct CountResult {
    uint64_t count = 0;
    uint64_t thresh = 0;
    uint64_t rounds = 0;
    /// True when the initial enumeration found fewer than thresh models.
    bool exact = false;
    Certificate cert;
    std::optional<xlrup::Proof> init_proof;
    std::vector<std::optional<xlrup::Proof>> round_proofs;
    std::vector<uint64_t> estimates;
};

/// Samples every round's XORs from `bits` up front, then runs the
/// enumeration and rounds, recording everything the checker needs.
CountResult approxmc(const CnfXorFormula& f, std::span<const Var> proj, const PacParams& params,
                     RandomBitStream& bits, const CounterConfig& cfg = {});

}  // namespace amc
