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

#include <filesystem>
#include <fstream>
#include <random>

#include "amc/certcheck.hpp"
#include "amc/counter.hpp"
#include "amc/oracle.hpp"
#include "test_util.hpp"

using namespace amc;

namespace {

const PacParams kDefault = make_params(Rational(4, 5), Rational(1, 5));

struct CountedRun {
    CnfXorFormula f;
    std::vector<uint8_t> bytes;
    CountResult res;

    InMemoryProofOracle proofs() const { return InMemoryProofOracle(res.init_proof, res.round_proofs); }

    uint64_t check(const Certificate& cert, const UnsatOracle& oracle, const CheckOptions& opts = {}) const
    {
        RandomBitStream bits(bytes);
        return check_certificate(f, f.proj, kDefault, bits, cert, oracle, opts);
    }
};

CountedRun counted(const char* formula, uint64_t seed)
{
    CountedRun r;
    r.f = parse_dimacs_cnfxor(formula);
    std::mt19937_64 rng(seed);
    r.bytes = test::random_bytes(rng, required_bits(r.f.proj.size(), 9) / 8 + 1);
    RandomBitStream bits(r.bytes);
    r.res = approxmc(r.f, r.f.proj, kDefault, bits);
    return r;
}

// A pigeonhole run in which some round has a nonempty second list.
CountedRun pigeonhole_run(size_t& round)
{
    for (uint64_t seed = 1;; seed++) {
        CountedRun r = counted(test::kPigeonhole, seed);
        for (size_t i = 0; i < r.res.cert.rounds.size(); i++) {
            const auto& hi = r.res.cert.rounds[i].list_hi;
            if (hi && hi->size() >= 2 && r.res.cert.rounds[i].m >= 2) {
                round = i;
                return r;
            }
        }
    }
}

std::string expect_rejection(const CountedRun& r, const Certificate& cert, const UnsatOracle& oracle)
{
    try {
        r.check(cert, oracle);
    } catch (const CertError& e) {
        return e.what();
    }
    ADD_FAILURE() << "certificate accepted";
    return {};
}

}  // namespace

TEST(CertCheck, CounterCertificateAccepted)
{
    CountedRun r = counted(test::kPigeonhole, 5);
    EXPECT_EQ(r.check(r.res.cert, r.proofs()), r.res.count);
    EXPECT_EQ(r.check(r.res.cert, EmbeddedSolverOracle()), r.res.count);
}

TEST(CertCheck, CheckerConsumesSameBits)
{
    CountedRun r = counted(test::kPigeonhole, 6);
    RandomBitStream bits(r.bytes);
    check_certificate(r.f, r.f.proj, kDefault, bits, r.res.cert, r.proofs());
    EXPECT_EQ(bits.position(), required_bits(10, 9));
}

TEST(CertCheck, ExactCaseFourModels)
{
    CountedRun r = counted("p cnf 3 1\n1 0\nc ind 2 3 0\n", 7);
    ASSERT_TRUE(r.res.exact);
    EXPECT_EQ(r.check(r.res.cert, r.proofs()), 4u);
    EXPECT_EQ(oracle::exact_projected_count(r.f, r.f.proj), 4u);
}

TEST(CertCheck, ExactCaseDroppedModelRejected)
{
    CountedRun r = counted("p cnf 3 1\n1 0\nc ind 2 3 0\n", 7);
    Certificate c = r.res.cert;
    c.init_models.pop_back();
    std::string msg = expect_rejection(r, c, EmbeddedSolverOracle());
    EXPECT_NE(msg.find("unsat"), std::string::npos) << msg;
    expect_rejection(r, c, r.proofs());
}

TEST(CertCheck, ExactCaseMustNotHaveRounds)
{
    CountedRun r = counted("p cnf 3 1\n1 0\nc ind 2 3 0\n", 7);
    Certificate c = r.res.cert;
    c.rounds.push_back(CertRound{1, c.init_models, std::vector<Assignment>{}});
    expect_rejection(r, c, r.proofs());
}

TEST(CertCheck, ProjectedDuplicateInSecondList)
{
    size_t i = 0;
    CountedRun r = pigeonhole_run(i);
    Certificate c = r.res.cert;
    auto& hi = *c.rounds[i].list_hi;
    hi.back() = hi.front();
    std::string msg = expect_rejection(r, c, r.proofs());
    EXPECT_NE(msg.find("projected duplicate"), std::string::npos) << msg;
    EXPECT_NE(msg.find("round " + std::to_string(i + 1)), std::string::npos) << msg;
}

TEST(CertCheck, ShortenedSecondListFailsUnsatCheck)
{
    size_t i = 0;
    CountedRun r = pigeonhole_run(i);
    Certificate c = r.res.cert;
    c.rounds[i].list_hi->pop_back();
    std::string msg = expect_rejection(r, c, r.proofs());
    EXPECT_NE(msg.find("condition 3"), std::string::npos) << msg;
    // Re-solving cannot help: the dropped model witnesses satisfiability.
    msg = expect_rejection(r, c, EmbeddedSolverOracle());
    EXPECT_NE(msg.find("no unsatisfiability proof"), std::string::npos) << msg;
}

TEST(CertCheck, MOffByOneRejected)
{
    size_t i = 0;
    CountedRun r = pigeonhole_run(i);
    for (int delta : {-1, 1}) {
        Certificate c = r.res.cert;
        c.rounds[i].m = static_cast<uint64_t>(static_cast<int64_t>(c.rounds[i].m) + delta);
        expect_rejection(r, c, EmbeddedSolverOracle());
        expect_rejection(r, c, r.proofs());
    }
}

TEST(CertCheck, MZeroRejected)
{
    size_t i = 0;
    CountedRun r = pigeonhole_run(i);
    Certificate c = r.res.cert;
    c.rounds[i].m = 0;
    std::string msg = expect_rejection(r, c, r.proofs());
    EXPECT_NE(msg.find("condition 1"), std::string::npos) << msg;
}

TEST(CertCheck, NonzeroM0Rejected)
{
    CountedRun r = counted(test::kPigeonhole, 8);
    Certificate c = r.res.cert;
    c.m0 = 1;
    expect_rejection(r, c, r.proofs());
}

TEST(CertCheck, RoundCountMustMatch)
{
    CountedRun r = counted(test::kPigeonhole, 9);
    Certificate c = r.res.cert;
    c.rounds.pop_back();
    std::string msg = expect_rejection(r, c, r.proofs());
    EXPECT_NE(msg.find("expected 9"), std::string::npos) << msg;
}

TEST(CertCheck, ShortInitialListRejectedAsExactCase)
{
    CountedRun r = counted(test::kPigeonhole, 10);
    Certificate c = r.res.cert;
    c.init_models.pop_back();
    expect_rejection(r, c, r.proofs());
}

TEST(CertCheck, ModelViolatingXorRejected)
{
    size_t i = 0;
    CountedRun r = pigeonhole_run(i);
    Certificate c = r.res.cert;
    // A model of F that fails the round's XOR prefix.
    auto xs = [&] {
        RandomBitStream bits(r.bytes);
        return random_seed_xors(bits, r.f.proj, 9)[i];
    }();
    CnfXorFormula hi_inst = add_xors(r.f, std::span<const Xor>(xs).first(c.rounds[i].m));
    for (const auto& w : r.res.cert.init_models) {
        if (!check_sol(hi_inst, w)) {
            c.rounds[i].list_hi->back() = w;
            break;
        }
    }
    std::string msg = expect_rejection(r, c, r.proofs());
    EXPECT_NE(msg.find("does not satisfy"), std::string::npos) << msg;
}

TEST(CertCheck, WrongBitsRejected)
{
    // Different bits give different XORs; the evidence no longer matches.
    CountedRun r = counted(test::kPigeonhole, 11);
    std::vector<uint8_t> other = r.bytes;
    for (auto& b : other) b ^= 0xFF;
    RandomBitStream bits(other);
    EXPECT_THROW(check_certificate(r.f, r.f.proj, kDefault, bits, r.res.cert, r.proofs()), CertError);
}

TEST(CertCheck, BitExhaustion)
{
    CountedRun r = counted(test::kPigeonhole, 12);
    RandomBitStream bits(std::vector<uint8_t>(10, 0));
    try {
        check_certificate(r.f, r.f.proj, kDefault, bits, r.res.cert, r.proofs());
        FAIL();
    } catch (const CertError& e) {
        EXPECT_EQ(e.condition(), "randomness");
    }
}

TEST(CertCheck, ParallelRoundsAgree)
{
    CountedRun r = counted(test::kPigeonhole, 13);
    CheckOptions opts;
    opts.jobs = 4;
    EXPECT_EQ(r.check(r.res.cert, r.proofs(), opts), r.res.count);

    // With two corrupted rounds the lowest one is reported.
    Certificate c = r.res.cert;
    c.rounds[2].m = 0;
    c.rounds[6].m = 0;
    try {
        r.check(c, r.proofs(), opts);
        FAIL();
    } catch (const CertError& e) {
        EXPECT_EQ(e.round(), std::optional<size_t>(3));
    }
}

TEST(CertCheck, ProofSidecarFiles)
{
    namespace fs = std::filesystem;
    CountedRun r = counted(test::kPigeonhole, 14);
    fs::path dir = fs::path(testing::TempDir()) / "amc_sidecars";
    fs::create_directories(dir);
    std::string base = (dir / "ph.cert").string();
    for (size_t i = 0; i < r.res.round_proofs.size(); i++) {
        if (!r.res.round_proofs[i]) continue;
        std::ofstream(proof_sidecar_path(base, {i + 1})) << xlrup::print_xlrup(*r.res.round_proofs[i]);
    }
    EXPECT_EQ(proof_sidecar_path(base, {3}), base + ".round3.xlrup");
    EXPECT_EQ(proof_sidecar_path(base, {}), base + ".init.xlrup");
    EXPECT_EQ(r.check(r.res.cert, ProofFileOracle(base)), r.res.count);

    // A corrupted sidecar is caught by the proof checker.
    for (size_t i = 0; i < r.res.round_proofs.size(); i++) {
        if (!r.res.round_proofs[i]) continue;
        std::ofstream(proof_sidecar_path(base, {i + 1})) << "1 0 0\n";
        break;
    }
    EXPECT_THROW(r.check(r.res.cert, ProofFileOracle(base)), CertError);
    fs::remove_all(dir);
}

TEST(CertCheck, ExternalCommandOracle)
{
    CountedRun r = counted(test::kPigeonhole, 15);
    std::string cmd = std::string(AMCCERT_BIN) + " solve";
    ExternalCommandOracle oracle(cmd, testing::TempDir());
    EXPECT_EQ(r.check(r.res.cert, oracle), r.res.count);

    ExternalCommandOracle broken("false", testing::TempDir());
    EXPECT_THROW(r.check(r.res.cert, broken), CertError);
}
