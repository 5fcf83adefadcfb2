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
#include <string>
#include <string_view>
#include <vector>

namespace amc {

using Var = uint32_t;
using Lit = int32_t;

inline Var lit_var(Lit l) { return static_cast<Var>(l < 0 ? -l : l); }

/// Raised for malformed DIMACS input and for ill-formed operands
/// (partial assignments, out-of-range variables, domain mismatches).
class FormulaError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

using Clause = std::vector<Lit>;

/// Parity constraint in canonical form: sorted duplicate-free variables
/// whose exclusive-or must equal `rhs`.
struct Xor {
    std::vector<Var> vars;
    bool rhs = false;

    Xor() = default;
    Xor(std::vector<Var> vs, bool r);

    /// Normalizes a DIMACS literal list whose literals XOR to 1.
    /// Negative literals flip the rhs and duplicate variables cancel in pairs.
    static Xor from_literals(std::span<const Lit> lits);

    /// Literal form that XORs to 1; inverse of from_literals.
    /// A tautological empty XOR is written as `1 -1`.
    std::vector<Lit> to_literals() const;

    bool empty() const { return vars.empty(); }

    friend bool operator==(const Xor&, const Xor&) = default;
};

/// Total assignment over variables 1..num_vars.
class Assignment {
public:
    Assignment() = default;
    explicit Assignment(size_t num_vars) : vals_(num_vars + 1, false) {}

    size_t num_vars() const { return vals_.empty() ? 0 : vals_.size() - 1; }
    bool operator[](Var v) const { return vals_[v]; }
    void set(Var v, bool b) { vals_[v] = b; }
    bool satisfies(Lit l) const { return l > 0 ? vals_[lit_var(l)] : !vals_[lit_var(l)]; }

    /// One literal per variable, true ones positive, in variable order.
    std::vector<Lit> to_literals() const;
    /// Inverse of to_literals. Every variable must appear exactly once.
    static Assignment from_literals(std::span<const Lit> lits, size_t num_vars);

    friend bool operator==(const Assignment&, const Assignment&) = default;

private:
    std::vector<bool> vals_;
};

/// Assignment restricted to a projection list; values are aligned with `vars`.
struct ProjectedAssignment {
    std::vector<Var> vars;
    std::vector<bool> values;

    friend bool operator==(const ProjectedAssignment&, const ProjectedAssignment&) = default;
};

struct CnfXorFormula {
    size_t num_vars = 0;
    std::vector<Clause> clauses;
    std::vector<Xor> xors;
    /// The projection set S, duplicate-free, in the order it was declared.
    std::vector<Var> proj;

    friend bool operator==(const CnfXorFormula&, const CnfXorFormula&) = default;
};

bool eval_xor(const Xor& x, const Assignment& w);
bool eval_clause(const Clause& c, const Assignment& w);

/// Parses DIMACS CNF with `x` lines for XORs and `c ind ... 0` projection lines.
CnfXorFormula parse_dimacs_cnfxor(std::string_view text);
CnfXorFormula read_dimacs_file(const std::string& path);

/// Prints a formula such that parse_dimacs_cnfxor(print_dimacs(f)) == f.
std::string print_dimacs(const CnfXorFormula& f);

/// Throws FormulaError if `w` does not cover exactly the formula's variables.
bool check_sol(const CnfXorFormula& f, const Assignment& w);

ProjectedAssignment project(const Assignment& w, std::span<const Var> proj);

/// The clause excluding exactly the cube `p`.
Clause ban_clause(const ProjectedAssignment& p);

/// Returns `f` plus the clause blocking `p`; p's domain must equal f.proj.
CnfXorFormula ban_sol(const CnfXorFormula& f, const ProjectedAssignment& p);

CnfXorFormula add_xors(const CnfXorFormula& f, std::span<const Xor> xs);

/// Checks the structural invariants; throws FormulaError on violation.
void validate(const CnfXorFormula& f);

}  // namespace amc
