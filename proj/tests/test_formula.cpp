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

#include <gtest/gtest.h>

#include <algorithm>
#include <random>

#include "amc/formula.hpp"
#include "amc/oracle.hpp"
#include "test_util.hpp"

using namespace amc;

namespace {

Assignment from_bits(size_t n, uint32_t bits)
{
    Assignment w(n);
    for (Var v = 1; v <= n; v++) w.set(v, (bits >> (v - 1)) & 1);
    return w;
}

}  // namespace

TEST(Parse, XorFoldsNegatedLiteralIntoRhs)
{
    CnfXorFormula f = parse_dimacs_cnfxor(test::kParityUnsat);
    EXPECT_EQ(f.num_vars, 3u);
    EXPECT_EQ(f.clauses, (std::vector<Clause>{{1, 2}, {-1, -2}, {-3}}));
    ASSERT_EQ(f.xors.size(), 1u);
    EXPECT_EQ(f.xors[0], Xor({1, 2, 3}, false));
    EXPECT_EQ(f.proj, (std::vector<Var>{1, 2, 3}));
}

TEST(Parse, PigeonholeDefaultsToAllVariables)
{
    CnfXorFormula f = parse_dimacs_cnfxor(test::kPigeonhole);
    EXPECT_EQ(f.num_vars, 10u);
    EXPECT_EQ(f.clauses.size(), 7u);
    EXPECT_TRUE(f.xors.empty());
    EXPECT_EQ(f.proj, (std::vector<Var>{1, 2, 3, 4, 5, 6, 7, 8, 9, 10}));
}

TEST(Parse, EmptyFormulaWithProjection)
{
    CnfXorFormula f = parse_dimacs_cnfxor("p cnf 2 0\nc ind 1 0\n");
    EXPECT_EQ(f.num_vars, 2u);
    EXPECT_TRUE(f.clauses.empty());
    EXPECT_TRUE(f.xors.empty());
    EXPECT_EQ(f.proj, (std::vector<Var>{1}));
}

TEST(Parse, IndLinesAreUnionedInFirstOccurrenceOrder)
{
    CnfXorFormula f = parse_dimacs_cnfxor("c ind 3 1 0\np cnf 4 0\nc ind 1 4 0\n");
    EXPECT_EQ(f.proj, (std::vector<Var>{3, 1, 4}));
}

TEST(Parse, XorDuplicatesCancelAndX1PrefixAccepted)
{
    CnfXorFormula f = parse_dimacs_cnfxor("p cnf 3 2\nx 1 1 2 0\nx1 2 -3 0\n");
    ASSERT_EQ(f.xors.size(), 2u);
    EXPECT_EQ(f.xors[0], Xor({2}, true));
    EXPECT_EQ(f.xors[1], Xor({1, 2, 3}, false));
}

TEST(Parse, TautologicalClauseKeptVerbatim)
{
    CnfXorFormula f = parse_dimacs_cnfxor("p cnf 2 1\n1 -1 2 0\n");
    EXPECT_EQ(f.clauses, (std::vector<Clause>{{1, -1, 2}}));
}

TEST(Parse, ClauseMaySpanLines)
{
    CnfXorFormula f = parse_dimacs_cnfxor("p cnf 3 1\n1 2\n3 0\n");
    EXPECT_EQ(f.clauses, (std::vector<Clause>{{1, 2, 3}}));
}

TEST(Parse, Errors)
{
    EXPECT_THROW(parse_dimacs_cnfxor("1 2 0\n"), FormulaError);
    EXPECT_THROW(parse_dimacs_cnfxor("p cnf 2 1\n1 3 0\n"), FormulaError);
    EXPECT_THROW(parse_dimacs_cnfxor("p cnf 2 1\n1 2\n"), FormulaError);
    EXPECT_THROW(parse_dimacs_cnfxor("p cnf 2 1\np cnf 2 1\n1 0\n"), FormulaError);
    EXPECT_THROW(parse_dimacs_cnfxor("p cnf 2 1\n1 a 0\n"), FormulaError);
    EXPECT_THROW(parse_dimacs_cnfxor("p cnf 2 1\nc ind 5 0\n"), FormulaError);
    EXPECT_THROW(parse_dimacs_cnfxor("p cnf 0 0\n"), FormulaError);
}

TEST(CheckSol, PigeonholeModel)
{
    CnfXorFormula f = parse_dimacs_cnfxor(test::kPigeonhole);
    std::vector<Lit> lits{-1, 2, -3, -4, -5, 6, -7, -8, -9, -10};
    EXPECT_TRUE(check_sol(f, Assignment::from_literals(lits, 10)));
    EXPECT_FALSE(check_sol(f, Assignment(10)));
}

TEST(CheckSol, UnitXor)
{
    CnfXorFormula f = parse_dimacs_cnfxor("p cnf 1 1\nx 1 0\n");
    EXPECT_FALSE(check_sol(f, Assignment(1)));
    Assignment w(1);
    w.set(1, true);
    EXPECT_TRUE(check_sol(f, w));
}

TEST(CheckSol, RejectsWrongDomain)
{
    CnfXorFormula f = parse_dimacs_cnfxor(test::kPigeonhole);
    EXPECT_THROW(check_sol(f, Assignment(9)), FormulaError);
}

TEST(Assignment, FromLiteralsRequiresTotality)
{
    EXPECT_THROW(Assignment::from_literals(std::vector<Lit>{1}, 2), FormulaError);
    EXPECT_THROW(Assignment::from_literals(std::vector<Lit>{1, -1}, 2), FormulaError);
    EXPECT_THROW(Assignment::from_literals(std::vector<Lit>{1, 3}, 2), FormulaError);
    Assignment w = Assignment::from_literals(std::vector<Lit>{-2, 1}, 2);
    EXPECT_TRUE(w[1]);
    EXPECT_FALSE(w[2]);
    EXPECT_EQ(w.to_literals(), (std::vector<Lit>{1, -2}));
}

TEST(Project, Examples)
{
    std::vector<Lit> lits{-1, 2, -3, -4, -5, 6, -7, -8, -9, -10};
    Assignment w = Assignment::from_literals(lits, 10);
    std::vector<Var> all{1, 2, 3, 4, 5, 6, 7, 8, 9, 10};
    ProjectedAssignment p = project(w, all);
    for (size_t i = 0; i < all.size(); i++) EXPECT_EQ(p.values[i], w[all[i]]);

    std::vector<Var> s{2, 6};
    ProjectedAssignment q = project(w, s);
    EXPECT_EQ(q.vars, s);
    EXPECT_EQ(q.values, (std::vector<bool>{true, true}));

    Assignment w2 = w;
    w2.set(1, true);
    EXPECT_EQ(project(w2, s), q);
}

TEST(BanSol, AddsNegatedCube)
{
    CnfXorFormula f = parse_dimacs_cnfxor("p cnf 2 0\nc ind 1 2 0\n");
    ProjectedAssignment p{{1, 2}, {true, false}};
    CnfXorFormula g = ban_sol(f, p);
    ASSERT_EQ(g.clauses.size(), 1u);
    EXPECT_EQ(g.clauses[0], (Clause{-1, 2}));

    Assignment w(2);
    w.set(1, true);
    EXPECT_FALSE(check_sol(g, w));
}

TEST(BanSol, DomainMustMatchProjection)
{
    CnfXorFormula f = parse_dimacs_cnfxor("p cnf 2 0\nc ind 1 2 0\n");
    EXPECT_THROW(ban_sol(f, ProjectedAssignment{{1}, {true}}), FormulaError);
}

TEST(BanSol, BanningEverySolutionLeavesNone)
{
    CnfXorFormula f = parse_dimacs_cnfxor("p cnf 4 1\n1 2 0\nx 2 3 0\nc ind 1 2 3 0\n");
    CnfXorFormula g = f;
    for (uint32_t bits = 0; bits < 16; bits++) {
        Assignment w = from_bits(4, bits);
        if (check_sol(f, w)) g.clauses.push_back(ban_clause(project(w, f.proj)));
    }
    EXPECT_GT(oracle::exact_projected_count(f, f.proj), 0u);
    EXPECT_EQ(oracle::exact_projected_count(g, g.proj), 0u);
}

TEST(BanSol, DecreasesCountByOneOnModelsOnly)
{
    std::mt19937_64 rng(11);
    for (int iter = 0; iter < 40; iter++) {
        CnfXorFormula f = test::random_formula(rng, 7, 6, 1, 5);
        uint64_t before = oracle::exact_projected_count(f, f.proj);
        for (uint32_t cube = 0; cube < 32; cube++) {
            ProjectedAssignment p{f.proj, {}};
            for (size_t i = 0; i < 5; i++) p.values.push_back((cube >> i) & 1);
            // Is the cube a projected model?
            bool is_model = false;
            for (uint32_t bits = 0; bits < 128 && !is_model; bits++) {
                Assignment w = from_bits(7, bits);
                is_model = check_sol(f, w) && project(w, f.proj) == p;
            }
            uint64_t after = oracle::exact_projected_count(ban_sol(f, p), f.proj);
            EXPECT_EQ(after, before - (is_model ? 1 : 0));
        }
    }
}

TEST(AddXors, EmptyXors)
{
    CnfXorFormula f = parse_dimacs_cnfxor(test::kPigeonhole);
    std::vector<Xor> contra{Xor({}, true)};
    std::vector<Xor> tauto{Xor({}, false)};
    EXPECT_EQ(oracle::exact_projected_count(add_xors(f, contra), f.proj), 0u);
    EXPECT_EQ(oracle::exact_projected_count(add_xors(f, tauto), f.proj), 180u);
}

TEST(AddXors, UnitXorKeepsModelsWithX1True)
{
    CnfXorFormula f = parse_dimacs_cnfxor(test::kPigeonhole);
    std::vector<Xor> xs{Xor({1}, true)};
    uint64_t with_x1 = 0;
    for (uint32_t bits = 0; bits < 1024; bits++) {
        Assignment w = from_bits(10, bits);
        if (check_sol(f, w) && w[1]) with_x1++;
    }
    // x1 true forces x6 false; pairs 2..5 then need some y true: 3^4 - 2^4.
    EXPECT_EQ(with_x1, 65u);
    EXPECT_EQ(oracle::exact_projected_count(add_xors(f, xs), f.proj), with_x1);
}

TEST(AddXors, RejectsOutOfRange)
{
    CnfXorFormula f = parse_dimacs_cnfxor("p cnf 2 0\n");
    std::vector<Xor> xs{Xor({3}, true)};
    EXPECT_THROW(add_xors(f, xs), FormulaError);
}

TEST(Xor, NormalizationIsInvariantUnderLiteralForm)
{
    std::mt19937_64 rng(5);
    for (int iter = 0; iter < 500; iter++) {
        std::vector<Lit> lits;
        int len = static_cast<int>(rng() % 7);
        for (int i = 0; i < len; i++) {
            Lit l = static_cast<Lit>(1 + rng() % 5);
            lits.push_back(rng() & 1 ? l : -l);
        }
        Xor base = Xor::from_literals(lits);

        std::vector<Lit> shuffled = lits;
        std::shuffle(shuffled.begin(), shuffled.end(), rng);
        EXPECT_EQ(Xor::from_literals(shuffled), base);

        // Negating two literals leaves the constraint unchanged.
        if (lits.size() >= 2) {
            std::vector<Lit> neg = lits;
            neg[0] = -neg[0];
            neg[1] = -neg[1];
            EXPECT_EQ(Xor::from_literals(neg), base);
        }
        EXPECT_EQ(Xor::from_literals(base.to_literals()), base);

        for (uint32_t bits = 0; bits < 32; bits++) {
            Assignment w = from_bits(5, bits);
            bool lit_parity = false;
            for (Lit l : lits) lit_parity ^= w.satisfies(l);
            EXPECT_EQ(eval_xor(base, w), lit_parity);
        }
    }
}

TEST(Xor, EmptyTautologyPrintsAsComplementaryPair)
{
    Xor t({}, false);
    EXPECT_EQ(t.to_literals(), (std::vector<Lit>{1, -1}));
    EXPECT_EQ(Xor::from_literals(t.to_literals()), t);
}

TEST(CheckSol, AgreesWithDirectEvaluation)
{
    std::mt19937_64 rng(17);
    for (int iter = 0; iter < 60; iter++) {
        size_t n = 1 + rng() % 12;
        CnfXorFormula f = test::random_formula(rng, n, 1 + rng() % 8, rng() % 3);
        for (uint32_t bits = 0; bits < (1u << n); bits += 1 + static_cast<uint32_t>(rng() % 7)) {
            Assignment w = from_bits(n, bits);
            bool expect = true;
            for (const auto& c : f.clauses) {
                bool any = false;
                for (Lit l : c) any = any || ((bits >> (lit_var(l) - 1)) & 1) == (l > 0);
                expect = expect && any;
            }
            for (const auto& x : f.xors) {
                bool par = false;
                for (Var v : x.vars) par ^= (bits >> (v - 1)) & 1;
                expect = expect && par == x.rhs;
            }
            EXPECT_EQ(check_sol(f, w), expect);
        }
    }
}

TEST(Print, RoundTrip)
{
    std::mt19937_64 rng(23);
    for (int iter = 0; iter < 200; iter++) {
        size_t n = 1 + rng() % 12;
        CnfXorFormula f = test::random_formula(rng, n, rng() % 8, rng() % 4, rng() % (n + 1));
        EXPECT_EQ(parse_dimacs_cnfxor(print_dimacs(f)), f);
    }
    CnfXorFormula f = parse_dimacs_cnfxor(test::kParityUnsat);
    EXPECT_EQ(parse_dimacs_cnfxor(print_dimacs(f)), f);
}
