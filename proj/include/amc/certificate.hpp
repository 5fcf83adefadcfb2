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
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "amc/formula.hpp"

namespace amc {

class CertificateParseError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

struct CertRound {
    uint64_t m = 0;
    /// Models after m-1 XORs.
    std::vector<Assignment> list_lo;
    /// Models after m XORs; absent for a failed round (m == |S|).
    std::optional<std::vector<Assignment>> list_hi;

    friend bool operator==(const CertRound&, const CertRound&) = default;
};

/// Partial certificate: m0, the initial model list, then one record per round.
struct Certificate {
    uint64_t m0 = 0;
    std::vector<Assignment> init_models;
    std::vector<CertRound> rounds;

    friend bool operator==(const Certificate&, const Certificate&) = default;
};

std::string print_certificate(const Certificate& cert);

/// Line-oriented: integer lines for m values and list lengths, one
/// 0-terminated total assignment per solution line. `//` comments and
/// blank lines are ignored. A round carries list_hi iff m < proj_size.
Certificate parse_certificate(std::string_view text, size_t num_vars, size_t proj_size);

Certificate read_certificate_file(const std::string& path, size_t num_vars, size_t proj_size);

}  // namespace amc
