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
#include <stdexcept>
#include <variant>
#include <vector>

#include "amc/formula.hpp"
#include "amc/xlrup.hpp"

namespace amc {

/// The configured conflict budget ran out before a verdict was reached.
class BudgetExceeded : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

class SolverError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

struct SolverConfig {
    /// Conflicts allowed per solve() call; 0 means unlimited.
    uint64_t conflict_budget = 0;
    /// Widest XOR that is translated to clauses (2^(k-1) clauses each).
    size_t blast_width_cap = 16;
};

struct Sat {
    Assignment model;
};
struct Unsat {
    xlrup::Proof proof;
};
using SolverResult = std::variant<Sat, Unsat>;

struct BoundedResult {
    std::vector<Assignment> models;
    bool exhausted = false;
    /// Unsatisfiability proof of the formula plus XORs plus one ban clause
    /// per model, in model order. Present iff exhausted.
    std::optional<xlrup::Proof> proof;
};

struct BlastResult {
    std::vector<Clause> clauses;
    xlrup::Proof steps;
};

/// Clauses whose falsifying points are exactly those of `x`.
std::vector<Clause> blast_clauses(const Xor& x, size_t width_cap = 16);

/// blast_clauses plus one clause-from-XOR step per clause hinting `xor_id`,
/// numbered from `next_clause_id`.
BlastResult blast_xor(const Xor& x, xlrup::Id xor_id, xlrup::Id next_clause_id, size_t width_cap = 16);

/// Incremental CDCL solver over the clausal translation of a CNF-XOR
/// formula. Every derived clause is logged with its resolution hints, so
/// an unsatisfiable run yields a hinted XLRUP proof of the loaded formula
/// together with all clauses added through add_clause().
///
/// Decisions pick the lowest-index unassigned variable and try false
/// first; there are no restarts, so runs are reproducible.
class CdclSolver {
public:
    explicit CdclSolver(const CnfXorFormula& f, SolverConfig cfg = {});

    /// True if satisfiable. Throws BudgetExceeded when out of conflicts.
    bool solve();
    const Assignment& model() const { return model_; }

    /// Appends an input clause, numbered after all earlier input clauses.
    void add_clause(const Clause& c);

    /// Proof of unsatisfiability; only meaningful once solve() returned false.
    xlrup::Proof proof() const;

    uint64_t conflicts() const { return total_conflicts_; }

private:
    static constexpr uint32_t kNone = UINT32_MAX;

    struct Key {
        bool derived;
        uint32_t index;
    };
    struct StoredClause {
        std::vector<uint32_t> lits;
        Key key;
    };
    struct Event {
        enum class Kind { OrigXor, FromXor, Rup } kind;
        uint32_t xor_id = 0;
        Xor xr;
        Clause clause;
        std::vector<Key> hints;
    };

    static uint32_t code(Lit l) { return 2 * lit_var(l) + (l < 0 ? 1 : 0); }
    static Lit to_lit(uint32_t c) { return (c & 1) ? -static_cast<Lit>(c >> 1) : static_cast<Lit>(c >> 1); }
    static Var var_of(uint32_t c) { return c >> 1; }

    int value(uint32_t c) const { return (c & 1) ? -vals_[c >> 1] : vals_[c >> 1]; }
    int decision_level() const { return static_cast<int>(trail_lim_.size()); }

    void load_clause(const Clause& c, Key key);
    void enqueue(uint32_t lit, uint32_t reason);
    uint32_t propagate();
    void backtrack(int level);
    void analyze_and_learn(uint32_t confl);
    void derive_empty(uint32_t confl);
    void level0_hints(std::vector<Var> roots, std::vector<Key>& hints);
    Clause external(const std::vector<uint32_t>& lits) const;

    size_t num_vars_;
    SolverConfig cfg_;
    bool unsat_ = false;
    uint32_t num_inputs_ = 0;
    uint32_t num_derived_ = 0;

    std::vector<StoredClause> clauses_;
    std::vector<std::vector<uint32_t>> watches_;
    std::vector<int8_t> vals_;
    std::vector<int> level_;
    std::vector<uint32_t> reason_;
    std::vector<uint32_t> trail_;
    std::vector<size_t> trail_lim_;
    size_t qhead_ = 0;
    std::vector<uint8_t> seen_;

    std::vector<Event> events_;
    Assignment model_;
    uint64_t total_conflicts_ = 0;
};

/// Decides `f`; Sat carries a model, Unsat a proof accepted by xlrup::check_proof.
SolverResult solve(const CnfXorFormula& f, const SolverConfig& cfg = {});

/// Enumerates up to `thresh` models of f plus `xors` that are pairwise
/// distinct on `proj`, blocking each projection as it is found.
BoundedResult bounded_count(const CnfXorFormula& f, std::span<const Var> proj, uint64_t thresh,
                            std::span<const Xor> xors, const SolverConfig& cfg = {});

}  // namespace amc
