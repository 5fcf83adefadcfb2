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
#include <set>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <unordered_map>
#include <variant>
#include <vector>

#include "amc/formula.hpp"

namespace amc::xlrup {

using Id = uint64_t;

// One struct per step kind. Clause IDs and XOR IDs are separate spaces.

/// `o x <id> <lits> 0`: XOR copied from the input formula.
struct OrigXor {
    Id id;
    Xor xr;
    friend bool operator==(const OrigXor&, const OrigXor&) = default;
};
/// `i x <id> <lits> 0 <clause ids> 0`
struct XorFromClauses {
    Id id;
    Xor xr;
    std::vector<Id> clause_hints;
    friend bool operator==(const XorFromClauses&, const XorFromClauses&) = default;
};
/// `x <id> <lits> 0 <xor ids> 0`
struct XorAdd {
    Id id;
    Xor xr;
    std::vector<Id> xor_hints;
    friend bool operator==(const XorAdd&, const XorAdd&) = default;
};
/// `i <id> <lits> 0 <xor ids> 0`
struct ClauseFromXors {
    Id id;
    Clause clause;
    std::vector<Id> xor_hints;
    friend bool operator==(const ClauseFromXors&, const ClauseFromXors&) = default;
};
/// `<id> <lits> 0 <clause ids> 0`
struct RupClause {
    Id id;
    Clause clause;
    std::vector<Id> clause_hints;
    friend bool operator==(const RupClause&, const RupClause&) = default;
};
/// `d <clause ids> 0`
struct DeleteClauses {
    std::vector<Id> ids;
    friend bool operator==(const DeleteClauses&, const DeleteClauses&) = default;
};
/// `x d <xor ids> 0`
struct DeleteXors {
    std::vector<Id> ids;
    friend bool operator==(const DeleteXors&, const DeleteXors&) = default;
};

using Step = std::variant<OrigXor, XorFromClauses, XorAdd, ClauseFromXors, RupClause, DeleteClauses, DeleteXors>;
using Proof = std::vector<Step>;

class ProofParseError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Whitespace-insensitive; `//` starts a comment running to end of line.
Proof parse_xlrup(std::string_view text);
Proof read_xlrup_file(const std::string& path);
std::string print_xlrup(const Proof& proof);
std::string print_step(const Step& step);

/// GF(2) sum: symmetric difference of variables, exclusive-or of rhs.
Xor xor_sum(std::span<const Xor> xors);

/// XOR over variables 0..n packed into 64-bit words.
class PackedXor {
public:
    PackedXor() = default;
    PackedXor(const Xor& x, size_t num_vars);

    PackedXor& operator^=(const PackedXor& o);
    bool rhs() const { return rhs_; }
    bool test(Var v) const { return (words_[v / 64] >> (v % 64)) & 1; }
    Xor unpack() const;

    template <typename F>
    void for_each_var(F&& f) const
    {
        for (size_t w = 0; w < words_.size(); w++) {
            uint64_t bits = words_[w];
            while (bits) {
                int b = __builtin_ctzll(bits);
                f(static_cast<Var>(w * 64 + b));
                bits &= bits - 1;
            }
        }
    }

    friend bool operator==(const PackedXor&, const PackedXor&) = default;

private:
    std::vector<uint64_t> words_;
    bool rhs_ = false;
};

struct CheckerConfig {
    /// Widest XOR accepted by an `i x` step (its check enumerates 2^width points).
    size_t xor_width_cap = 16;
};

/// Empty on success, otherwise the reason the step was refused.
using StepResult = std::optional<std::string>;

/// Live clause and XOR databases of a proof being checked. Clause IDs
/// 1..n hold the input formula's clauses in file order.
class ProofState {
public:
    explicit ProofState(const CnfXorFormula& f, CheckerConfig cfg = {});

    StepResult check_rup(const Clause& clause, std::span<const Id> hints);
    StepResult check_clause_from_xors(const Clause& clause, std::span<const Id> xor_hints) const;
    StepResult check_xor_from_clauses(const Xor& xr, std::span<const Id> clause_hints) const;
    StepResult check_xor_add(const Xor& xr, std::span<const Id> xor_hints) const;
    StepResult check_orig_xor(const Xor& xr) const;

    /// Checks a step and, if it is sound, applies it to the databases.
    StepResult apply(const Step& step);

    StepResult insert_clause(Id id, Clause c);
    StepResult insert_xor(Id id, const Xor& xr);

    bool empty_derived() const { return empty_derived_; }
    size_t live_clauses() const { return clauses_.size(); }
    size_t live_xors() const { return xors_.size(); }

private:
    StepResult check_range(std::span<const Lit> lits) const;
    StepResult check_range(const Xor& xr) const;

    size_t num_vars_;
    CheckerConfig cfg_;
    std::unordered_map<Id, Clause> clauses_;
    std::unordered_map<Id, PackedXor> xors_;
    std::set<std::pair<std::vector<Var>, bool>> input_xors_;
    Id last_clause_id_ = 0;
    Id last_xor_id_ = 0;
    bool empty_derived_ = false;

    // Scratch assignment for RUP checks: 0 unassigned, 1 true, -1 false.
    std::vector<int8_t> vals_;
    std::vector<Var> touched_;
};

struct CheckOutcome {
    bool verified = false;
    /// Index of the offending step; equals the step count for end-of-proof failures.
    size_t step_index = 0;
    std::string reason;
};

CheckOutcome check_proof(const CnfXorFormula& f, const Proof& proof, CheckerConfig cfg = {});

}  // namespace amc::xlrup
