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

#include "amc/formula.hpp"

#include <algorithm>
#include <charconv>
#include <fstream>
#include <sstream>
#include <unordered_set>

namespace amc {

namespace {

// Sorts and cancels equal variables in pairs (x + x = 0 over GF(2)).
std::vector<Var> canonical_vars(std::vector<Var> vs)
{
    std::sort(vs.begin(), vs.end());
    std::vector<Var> out;
    out.reserve(vs.size());
    for (Var v : vs) {
        if (!out.empty() && out.back() == v) out.pop_back();
        else out.push_back(v);
    }
    return out;
}

std::vector<std::string_view> split_ws(std::string_view line)
{
    std::vector<std::string_view> toks;
    size_t i = 0;
    while (i < line.size()) {
        while (i < line.size() && std::isspace(static_cast<unsigned char>(line[i]))) i++;
        size_t j = i;
        while (j < line.size() && !std::isspace(static_cast<unsigned char>(line[j]))) j++;
        if (j > i) toks.push_back(line.substr(i, j - i));
        i = j;
    }
    return toks;
}

long long parse_int(std::string_view tok, size_t line_no)
{
    long long v = 0;
    auto [ptr, ec] = std::from_chars(tok.data(), tok.data() + tok.size(), v);
    if (ec != std::errc() || ptr != tok.data() + tok.size()) {
        throw FormulaError("line " + std::to_string(line_no) + ": expected integer, found '"
                           + std::string(tok) + "'");
    }
    return v;
}

}  // namespace

Xor::Xor(std::vector<Var> vs, bool r) : vars(canonical_vars(std::move(vs))), rhs(r) {}

Xor Xor::from_literals(std::span<const Lit> lits)
{
    std::vector<Var> vs;
    vs.reserve(lits.size());
    bool rhs = true;
    for (Lit l : lits) {
        if (l < 0) rhs = !rhs;
        vs.push_back(lit_var(l));
    }
    return Xor(std::move(vs), rhs);
}

std::vector<Lit> Xor::to_literals() const
{
    if (vars.empty()) {
        if (rhs) return {};
        return {1, -1};
    }
    std::vector<Lit> out(vars.begin(), vars.end());
    if (!rhs) out[0] = -out[0];
    return out;
}

std::vector<Lit> Assignment::to_literals() const
{
    std::vector<Lit> out;
    out.reserve(num_vars());
    for (Var v = 1; v <= num_vars(); v++) {
        Lit l = static_cast<Lit>(v);
        out.push_back(vals_[v] ? l : -l);
    }
    return out;
}

Assignment Assignment::from_literals(std::span<const Lit> lits, size_t num_vars)
{
    Assignment w(num_vars);
    std::vector<bool> seen(num_vars + 1, false);
    for (Lit l : lits) {
        Var v = lit_var(l);
        if (l == 0 || v > num_vars) throw FormulaError("solution literal out of range: " + std::to_string(l));
        if (seen[v]) throw FormulaError("variable " + std::to_string(v) + " assigned twice");
        seen[v] = true;
        w.set(v, l > 0);
    }
    if (lits.size() != num_vars) throw FormulaError("solution is not total over the formula's variables");
    return w;
}

bool eval_xor(const Xor& x, const Assignment& w)
{
    bool parity = false;
    for (Var v : x.vars) parity ^= w[v];
    return parity == x.rhs;
}

bool eval_clause(const Clause& c, const Assignment& w)
{
    return std::any_of(c.begin(), c.end(), [&](Lit l) { return w.satisfies(l); });
}

CnfXorFormula parse_dimacs_cnfxor(std::string_view text)
{
    CnfXorFormula f;
    bool have_header = false;
    std::vector<Var> ind;
    std::unordered_set<Var> ind_seen;
    Clause pending;
    bool clause_open = false;

    auto check_lit = [&](long long l, size_t line_no) {
        if (l == 0) return;
        long long v = l < 0 ? -l : l;
        if (v > static_cast<long long>(f.num_vars)) {
            throw FormulaError("line " + std::to_string(line_no) + ": literal " + std::to_string(l)
                               + " out of range");
        }
    };

    size_t line_no = 0;
    size_t pos = 0;
    while (pos <= text.size()) {
        size_t nl = text.find('\n', pos);
        if (nl == std::string_view::npos) nl = text.size();
        std::string_view line = text.substr(pos, nl - pos);
        pos = nl + 1;
        line_no++;

        auto toks = split_ws(line);
        if (toks.empty()) continue;

        if (toks[0] == "c") {
            if (toks.size() >= 2 && toks[1] == "ind") {
                bool terminated = false;
                for (size_t i = 2; i < toks.size(); i++) {
                    long long v = parse_int(toks[i], line_no);
                    if (v == 0) {
                        terminated = true;
                        if (i + 1 != toks.size()) throw FormulaError("line " + std::to_string(line_no) + ": trailing tokens after 0");
                        break;
                    }
                    if (v < 0) throw FormulaError("line " + std::to_string(line_no) + ": negative projection variable");
                    if (ind_seen.insert(static_cast<Var>(v)).second) ind.push_back(static_cast<Var>(v));
                }
                if (!terminated) throw FormulaError("line " + std::to_string(line_no) + ": missing 0 terminator");
            }
            continue;
        }
        if (toks[0][0] == 'c') continue;

        if (toks[0] == "p") {
            if (have_header) throw FormulaError("line " + std::to_string(line_no) + ": duplicate header");
            if (toks.size() != 4 || toks[1] != "cnf") throw FormulaError("line " + std::to_string(line_no) + ": malformed header");
            long long nv = parse_int(toks[2], line_no);
            long long nc = parse_int(toks[3], line_no);
            if (nv <= 0) throw FormulaError("formula has no variables");
            if (nc < 0) throw FormulaError("line " + std::to_string(line_no) + ": malformed header");
            f.num_vars = static_cast<size_t>(nv);
            have_header = true;
            continue;
        }
        if (!have_header) throw FormulaError("line " + std::to_string(line_no) + ": constraint before header");

        if (toks[0][0] == 'x') {
            if (clause_open) throw FormulaError("line " + std::to_string(line_no) + ": clause missing 0 terminator");
            // Both "x 1 2 0" and "x1 2 0" are accepted.
            std::vector<std::string_view> body(toks.begin() + 1, toks.end());
            if (toks[0].size() > 1) body.insert(body.begin(), toks[0].substr(1));
            std::vector<Lit> lits;
            bool terminated = false;
            for (size_t i = 0; i < body.size(); i++) {
                long long l = parse_int(body[i], line_no);
                check_lit(l, line_no);
                if (l == 0) {
                    terminated = true;
                    if (i + 1 != body.size()) throw FormulaError("line " + std::to_string(line_no) + ": trailing tokens after 0");
                    break;
                }
                lits.push_back(static_cast<Lit>(l));
            }
            if (!terminated) throw FormulaError("line " + std::to_string(line_no) + ": XOR missing 0 terminator");
            f.xors.push_back(Xor::from_literals(lits));
            continue;
        }

        for (auto tok : toks) {
            long long l = parse_int(tok, line_no);
            check_lit(l, line_no);
            if (l == 0) {
                f.clauses.push_back(std::move(pending));
                pending.clear();
                clause_open = false;
            } else {
                pending.push_back(static_cast<Lit>(l));
                clause_open = true;
            }
        }
    }
    if (!have_header) throw FormulaError("missing 'p cnf' header");
    if (clause_open) throw FormulaError("clause missing 0 terminator at end of input");

    for (Var v : ind) {
        if (v == 0 || v > f.num_vars) throw FormulaError("projection variable " + std::to_string(v) + " out of range");
    }
    if (ind.empty()) {
        for (Var v = 1; v <= f.num_vars; v++) f.proj.push_back(v);
    } else {
        f.proj = std::move(ind);
    }
    return f;
}

CnfXorFormula read_dimacs_file(const std::string& path)
{
    std::ifstream in(path, std::ios::binary);
    if (!in) throw FormulaError("cannot open '" + path + "'");
    std::stringstream ss;
    ss << in.rdbuf();
    return parse_dimacs_cnfxor(ss.str());
}

std::string print_dimacs(const CnfXorFormula& f)
{
    std::ostringstream out;
    out << "p cnf " << f.num_vars << ' ' << (f.clauses.size() + f.xors.size()) << '\n';
    out << "c ind";
    for (Var v : f.proj) out << ' ' << v;
    out << " 0\n";
    for (const auto& c : f.clauses) {
        for (Lit l : c) out << l << ' ';
        out << "0\n";
    }
    for (const auto& x : f.xors) {
        out << 'x';
        for (Lit l : x.to_literals()) out << ' ' << l;
        out << " 0\n";
    }
    return out.str();
}

bool check_sol(const CnfXorFormula& f, const Assignment& w)
{
    if (w.num_vars() != f.num_vars) {
        throw FormulaError("assignment covers " + std::to_string(w.num_vars()) + " variables, formula has "
                           + std::to_string(f.num_vars));
    }
    for (const auto& c : f.clauses) {
        if (!eval_clause(c, w)) return false;
    }
    for (const auto& x : f.xors) {
        if (!eval_xor(x, w)) return false;
    }
    return true;
}

ProjectedAssignment project(const Assignment& w, std::span<const Var> proj)
{
    ProjectedAssignment p;
    p.vars.assign(proj.begin(), proj.end());
    p.values.reserve(proj.size());
    for (Var v : proj) p.values.push_back(w[v]);
    return p;
}

Clause ban_clause(const ProjectedAssignment& p)
{
    Clause c;
    c.reserve(p.vars.size());
    for (size_t i = 0; i < p.vars.size(); i++) {
        Lit l = static_cast<Lit>(p.vars[i]);
        c.push_back(p.values[i] ? -l : l);
    }
    return c;
}

CnfXorFormula ban_sol(const CnfXorFormula& f, const ProjectedAssignment& p)
{
    if (p.vars != f.proj || p.values.size() != p.vars.size()) {
        throw FormulaError("projected assignment domain differs from the projection set");
    }
    CnfXorFormula out = f;
    out.clauses.push_back(ban_clause(p));
    return out;
}

CnfXorFormula add_xors(const CnfXorFormula& f, std::span<const Xor> xs)
{
    for (const auto& x : xs) {
        for (Var v : x.vars) {
            if (v == 0 || v > f.num_vars) throw FormulaError("XOR variable " + std::to_string(v) + " out of range");
        }
    }
    CnfXorFormula out = f;
    out.xors.insert(out.xors.end(), xs.begin(), xs.end());
    return out;
}

void validate(const CnfXorFormula& f)
{
    if (f.num_vars == 0) throw FormulaError("formula has no variables");
    auto in_range = [&](Var v) { return v >= 1 && v <= f.num_vars; };
    for (const auto& c : f.clauses) {
        for (Lit l : c) {
            if (l == 0 || !in_range(lit_var(l))) throw FormulaError("clause literal out of range");
        }
    }
    for (const auto& x : f.xors) {
        for (Var v : x.vars) {
            if (!in_range(v)) throw FormulaError("XOR variable out of range");
        }
    }
    if (f.proj.empty()) throw FormulaError("projection set is empty");
    std::unordered_set<Var> seen;
    for (Var v : f.proj) {
        if (!in_range(v)) throw FormulaError("projection variable out of range");
        if (!seen.insert(v).second) throw FormulaError("projection variable listed twice");
    }
}

}  // namespace amc
