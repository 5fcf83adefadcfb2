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

#include "amc/solver.hpp"

#include <algorithm>

namespace amc {

std::vector<Clause> blast_clauses(const Xor& x, size_t width_cap)
{
    const size_t k = x.vars.size();
    if (k > width_cap || k >= 63) {
        throw SolverError("XOR over " + std::to_string(k) + " variables exceeds the blast width cap of "
                          + std::to_string(width_cap));
    }
    std::vector<Clause> out;
    const uint64_t points = uint64_t{1} << k;
    for (uint64_t p = 0; p < points; p++) {
        bool parity = __builtin_popcountll(p) & 1;
        if (parity == x.rhs) continue;
        Clause c;
        c.reserve(k);
        for (size_t i = 0; i < k; i++) {
            Lit l = static_cast<Lit>(x.vars[i]);
            c.push_back(((p >> i) & 1) ? -l : l);
        }
        out.push_back(std::move(c));
    }
    return out;
}

BlastResult blast_xor(const Xor& x, xlrup::Id xor_id, xlrup::Id next_clause_id, size_t width_cap)
{
    BlastResult r;
    r.clauses = blast_clauses(x, width_cap);
    for (const auto& c : r.clauses) r.steps.push_back(xlrup::ClauseFromXors{next_clause_id++, c, {xor_id}});
    return r;
}

// ---------------------------------------------------------------------------

CdclSolver::CdclSolver(const CnfXorFormula& f, SolverConfig cfg)
    : num_vars_(f.num_vars),
      cfg_(cfg),
      watches_(2 * f.num_vars + 2),
      vals_(f.num_vars + 1, 0),
      level_(f.num_vars + 1, 0),
      reason_(f.num_vars + 1, kNone),
      seen_(f.num_vars + 1, 0)
{
    validate(f);
    for (const auto& c : f.clauses) load_clause(c, Key{false, num_inputs_++});

    for (size_t j = 0; j < f.xors.size(); j++) {
        const uint32_t xor_id = static_cast<uint32_t>(j + 1);
        auto blasted = blast_clauses(f.xors[j], cfg_.blast_width_cap);
        if (unsat_) continue;
        events_.push_back(Event{Event::Kind::OrigXor, xor_id, f.xors[j], {}, {}});
        for (auto& c : blasted) {
            if (unsat_) break;
            Key key{true, num_derived_++};
            events_.push_back(Event{Event::Kind::FromXor, xor_id, {}, c, {}});
            load_clause(c, key);
        }
    }
}

Clause CdclSolver::external(const std::vector<uint32_t>& lits) const
{
    Clause c;
    c.reserve(lits.size());
    for (uint32_t l : lits) c.push_back(to_lit(l));
    return c;
}

void CdclSolver::enqueue(uint32_t lit, uint32_t reason)
{
    Var v = var_of(lit);
    vals_[v] = (lit & 1) ? -1 : 1;
    level_[v] = decision_level();
    reason_[v] = reason;
    trail_.push_back(lit);
}

void CdclSolver::backtrack(int level)
{
    if (decision_level() <= level) return;
    for (size_t i = trail_.size(); i-- > trail_lim_[level];) {
        Var v = var_of(trail_[i]);
        vals_[v] = 0;
        reason_[v] = kNone;
    }
    trail_.resize(trail_lim_[level]);
    trail_lim_.resize(level);
    qhead_ = trail_.size();
}

void CdclSolver::load_clause(const Clause& c, Key key)
{
    if (unsat_) return;
    backtrack(0);

    std::vector<uint32_t> lits;
    lits.reserve(c.size());
    for (Lit l : c) lits.push_back(code(l));
    std::sort(lits.begin(), lits.end());
    lits.erase(std::unique(lits.begin(), lits.end()), lits.end());
    for (size_t i = 1; i < lits.size(); i++) {
        if (var_of(lits[i]) == var_of(lits[i - 1])) return;  // tautology
    }
    for (uint32_t l : lits) {
        if (value(l) > 0) return;  // satisfied at level 0 for good
    }
    // Unassigned literals first.
    std::stable_partition(lits.begin(), lits.end(), [&](uint32_t l) { return value(l) == 0; });
    size_t free = std::count_if(lits.begin(), lits.end(), [&](uint32_t l) { return value(l) == 0; });

    uint32_t cr = static_cast<uint32_t>(clauses_.size());
    clauses_.push_back(StoredClause{std::move(lits), key});
    const auto& stored = clauses_.back().lits;

    if (free == 0) {
        derive_empty(cr);
        return;
    }
    if (free == 1) {
        enqueue(stored[0], cr);
        if (uint32_t confl = propagate(); confl != kNone) derive_empty(confl);
        return;
    }
    watches_[stored[0]].push_back(cr);
    watches_[stored[1]].push_back(cr);
}

void CdclSolver::add_clause(const Clause& c)
{
    for (Lit l : c) {
        if (l == 0 || lit_var(l) > num_vars_) throw FormulaError("clause literal out of range");
    }
    load_clause(c, Key{false, num_inputs_++});
}

uint32_t CdclSolver::propagate()
{
    while (qhead_ < trail_.size()) {
        const uint32_t false_lit = trail_[qhead_++] ^ 1;
        auto& ws = watches_[false_lit];
        size_t i = 0, j = 0;
        while (i < ws.size()) {
            const uint32_t cr = ws[i++];
            auto& lits = clauses_[cr].lits;
            if (lits[0] == false_lit) std::swap(lits[0], lits[1]);
            if (value(lits[0]) > 0) {
                ws[j++] = cr;
                continue;
            }
            bool moved = false;
            for (size_t k = 2; k < lits.size(); k++) {
                if (value(lits[k]) >= 0) {
                    std::swap(lits[1], lits[k]);
                    watches_[lits[1]].push_back(cr);
                    moved = true;
                    break;
                }
            }
            if (moved) continue;
            ws[j++] = cr;
            if (value(lits[0]) < 0) {
                while (i < ws.size()) ws[j++] = ws[i++];
                ws.resize(j);
                qhead_ = trail_.size();
                return cr;
            }
            enqueue(lits[0], cr);
        }
        ws.resize(j);
    }
    return kNone;
}

// Reasons needed to re-derive the level-0 literals of `roots`, transitively,
// in trail order so that each one is unit when replayed.
void CdclSolver::level0_hints(std::vector<Var> roots, std::vector<Key>& hints)
{
    const size_t end0 = trail_lim_.empty() ? trail_.size() : trail_lim_[0];
    std::vector<Var> marked;
    for (Var v : roots) {
        if (!seen_[v]) {
            seen_[v] = 2;
            marked.push_back(v);
        }
    }
    for (size_t i = end0; i-- > 0;) {
        Var v = var_of(trail_[i]);
        if (!seen_[v]) continue;
        for (uint32_t q : clauses_[reason_[v]].lits) {
            Var u = var_of(q);
            if (u != v && !seen_[u]) {
                seen_[u] = 2;
                marked.push_back(u);
            }
        }
    }
    for (size_t i = 0; i < end0; i++) {
        Var v = var_of(trail_[i]);
        if (seen_[v]) hints.push_back(clauses_[reason_[v]].key);
    }
    for (Var v : marked) seen_[v] = 0;
}

void CdclSolver::derive_empty(uint32_t confl)
{
    std::vector<Var> roots;
    for (uint32_t q : clauses_[confl].lits) roots.push_back(var_of(q));
    std::vector<Key> hints;
    level0_hints(std::move(roots), hints);
    hints.push_back(clauses_[confl].key);
    events_.push_back(Event{Event::Kind::Rup, 0, {}, {}, std::move(hints)});
    num_derived_++;
    unsat_ = true;
}

void CdclSolver::analyze_and_learn(uint32_t confl)
{
    const int cur = decision_level();
    std::vector<uint32_t> learnt{0};
    std::vector<Var> resolved;
    std::vector<Var> level0;
    int path = 0;
    uint32_t p = kNone;
    size_t idx = trail_.size();
    uint32_t cr = confl;

    while (true) {
        for (uint32_t q : clauses_[cr].lits) {
            Var v = var_of(q);
            if (p != kNone && v == var_of(p)) continue;
            if (seen_[v]) continue;
            seen_[v] = 1;
            if (level_[v] == 0) level0.push_back(v);
            else if (level_[v] == cur) path++;
            else learnt.push_back(q);
        }
        while (!seen_[var_of(trail_[--idx])]) {}
        p = trail_[idx];
        seen_[var_of(p)] = 0;
        if (--path == 0) break;
        resolved.push_back(var_of(p));
        cr = reason_[var_of(p)];
    }
    learnt[0] = p ^ 1;

    for (size_t i = 1; i < learnt.size(); i++) seen_[var_of(learnt[i])] = 0;
    for (Var v : level0) seen_[v] = 0;

    std::vector<Key> hints;
    level0_hints(std::move(level0), hints);
    for (auto it = resolved.rbegin(); it != resolved.rend(); ++it) hints.push_back(clauses_[reason_[*it]].key);
    hints.push_back(clauses_[confl].key);

    Key key{true, num_derived_++};
    events_.push_back(Event{Event::Kind::Rup, 0, {}, external(learnt), std::move(hints)});

    int back = 0;
    if (learnt.size() > 1) {
        size_t best = 1;
        for (size_t i = 2; i < learnt.size(); i++) {
            if (level_[var_of(learnt[i])] > level_[var_of(learnt[best])]) best = i;
        }
        std::swap(learnt[1], learnt[best]);
        back = level_[var_of(learnt[1])];
    }
    backtrack(back);

    uint32_t ncr = static_cast<uint32_t>(clauses_.size());
    clauses_.push_back(StoredClause{std::move(learnt), key});
    const auto& stored = clauses_.back().lits;
    if (stored.size() > 1) {
        watches_[stored[0]].push_back(ncr);
        watches_[stored[1]].push_back(ncr);
    }
    enqueue(stored[0], ncr);
}

bool CdclSolver::solve()
{
    if (unsat_) return false;
    backtrack(0);
    uint64_t conflicts = 0;
    Var next = 1;
    while (true) {
        uint32_t confl = propagate();
        if (confl != kNone) {
            total_conflicts_++;
            if (decision_level() == 0) {
                derive_empty(confl);
                return false;
            }
            if (cfg_.conflict_budget && ++conflicts > cfg_.conflict_budget) {
                backtrack(0);
                throw BudgetExceeded("conflict budget of " + std::to_string(cfg_.conflict_budget) + " exhausted");
            }
            analyze_and_learn(confl);
            next = 1;
            continue;
        }
        while (next <= num_vars_ && vals_[next] != 0) next++;
        if (next > num_vars_) {
            model_ = Assignment(num_vars_);
            for (Var v = 1; v <= num_vars_; v++) model_.set(v, vals_[v] > 0);
            return true;
        }
        trail_lim_.push_back(trail_.size());
        enqueue(2 * next + 1, kNone);
    }
}

xlrup::Proof CdclSolver::proof() const
{
    const uint64_t inputs = num_inputs_;
    auto id_of = [&](Key k) -> xlrup::Id { return k.derived ? inputs + k.index + 1 : k.index + 1; };

    xlrup::Proof out;
    out.reserve(events_.size());
    uint64_t derived = 0;
    for (const auto& e : events_) {
        switch (e.kind) {
        case Event::Kind::OrigXor:
            out.push_back(xlrup::OrigXor{e.xor_id, e.xr});
            break;
        case Event::Kind::FromXor:
            out.push_back(xlrup::ClauseFromXors{inputs + ++derived, e.clause, {e.xor_id}});
            break;
        case Event::Kind::Rup: {
            std::vector<xlrup::Id> hints;
            hints.reserve(e.hints.size());
            for (Key k : e.hints) hints.push_back(id_of(k));
            out.push_back(xlrup::RupClause{inputs + ++derived, e.clause, std::move(hints)});
            break;
        }
        }
    }
    return out;
}

// ---------------------------------------------------------------------------

SolverResult solve(const CnfXorFormula& f, const SolverConfig& cfg)
{
    CdclSolver s(f, cfg);
    if (s.solve()) return Sat{s.model()};
    return Unsat{s.proof()};
}

BoundedResult bounded_count(const CnfXorFormula& f, std::span<const Var> proj, uint64_t thresh,
                            std::span<const Xor> xors, const SolverConfig& cfg)
{
    if (thresh == 0) throw std::invalid_argument("bounded_count needs thresh >= 1");
    CdclSolver s(add_xors(f, xors), cfg);
    BoundedResult r;
    while (r.models.size() < thresh) {
        if (!s.solve()) {
            r.exhausted = true;
            r.proof = s.proof();
            return r;
        }
        r.models.push_back(s.model());
        s.add_clause(ban_clause(project(s.model(), proj)));
    }
    return r;
}

}  // namespace amc
