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

#include "amc/oracle.hpp"

#include <algorithm>
#include <string>

namespace amc::oracle {

uint64_t exact_projected_count(const CnfXorFormula& f, std::span<const Var> proj)
{
    const size_t n = f.num_vars;
    if (n > kMaxCountVars) {
        throw GuardExceeded("exact count limited to " + std::to_string(kMaxCountVars) + " variables");
    }
    for (Var v : proj) {
        if (v == 0 || v > n) throw GuardExceeded("projection variable out of range");
    }

    // Bit (v-1) of a mask is variable v.
    struct Cl {
        uint32_t pos = 0, neg = 0;
    };
    std::vector<Cl> cls;
    for (const auto& c : f.clauses) {
        Cl m;
        for (Lit l : c) (l > 0 ? m.pos : m.neg) |= uint32_t{1} << (lit_var(l) - 1);
        cls.push_back(m);
    }
    std::vector<std::pair<uint32_t, bool>> xs;
    for (const auto& x : f.xors) {
        uint32_t m = 0;
        for (Var v : x.vars) m ^= uint32_t{1} << (v - 1);
        xs.emplace_back(m, x.rhs);
    }

    std::vector<bool> hit(size_t{1} << proj.size(), false);
    uint64_t count = 0;
    const uint64_t total = uint64_t{1} << n;
    for (uint64_t a = 0; a < total; a++) {
        const uint32_t w = static_cast<uint32_t>(a);
        bool ok = std::all_of(cls.begin(), cls.end(), [&](const Cl& c) { return ((w & c.pos) | (~w & c.neg)) != 0; });
        if (!ok) continue;
        ok = std::all_of(xs.begin(), xs.end(),
                         [&](const auto& x) { return static_cast<bool>(__builtin_popcount(w & x.first) & 1) == x.second; });
        if (!ok) continue;
        size_t key = 0;
        for (size_t i = 0; i < proj.size(); i++) key |= size_t{(w >> (proj[i] - 1)) & 1u} << i;
        if (!hit[key]) {
            hit[key] = true;
            count++;
        }
    }
    return count;
}

Rational exact_xor_joint_probability(size_t num_vars, std::span<const HashPair> pairs)
{
    if (num_vars > kMaxHashVars) {
        throw GuardExceeded("hash enumeration limited to " + std::to_string(kMaxHashVars) + " variables");
    }
    if (pairs.empty() || pairs.size() > 3) throw GuardExceeded("between 1 and 3 pairs required");
    const uint32_t points = uint32_t{1} << num_vars;
    for (size_t i = 0; i < pairs.size(); i++) {
        if (pairs[i].first >= points) throw GuardExceeded("point outside {0,1}^|V|");
        for (size_t j = 0; j < i; j++) {
            if (pairs[i].first == pairs[j].first) throw GuardExceeded("points must be distinct");
        }
    }

    uint64_t good = 0;
    for (uint32_t s = 0; s < points; s++) {
        for (uint32_t b = 0; b < 2; b++) {
            bool all = true;
            for (const auto& [w, c] : pairs) {
                bool x = ((__builtin_popcount(w & s) + b) & 1) != 0;
                if (x != c) {
                    all = false;
                    break;
                }
            }
            if (all) good++;
        }
    }
    return Rational(good, uint64_t{2} * points);
}

}  // namespace amc::oracle
