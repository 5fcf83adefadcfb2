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

#include "amc/certcheck.hpp"

#include <unistd.h>

#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <future>
#include <set>

namespace amc {

namespace {

std::string describe(const std::optional<size_t>& round, const std::string& condition, const std::string& detail)
{
    std::string where = round ? "round " + std::to_string(*round) : std::string("initial list");
    return where + ": " + condition + ": " + detail;
}

std::string slot_name(const ProofSlot& slot)
{
    return slot.round ? "round" + std::to_string(*slot.round) : std::string("init");
}

std::string shell_quote(const std::string& s)
{
    std::string out = "'";
    for (char c : s) {
        if (c == '\'') out += "'\\''";
        else out += c;
    }
    return out + "'";
}

// Every model must satisfy `instance`, and projections must be pairwise distinct.
void validate_models(const CnfXorFormula& instance, std::span<const Var> proj, std::span<const Assignment> models,
                     const std::optional<size_t>& round, const std::string& list_name)
{
    std::set<std::vector<bool>> seen;
    for (size_t i = 0; i < models.size(); i++) {
        bool ok = false;
        try {
            ok = check_sol(instance, models[i]);
        } catch (const FormulaError& e) {
            throw CertError(round, list_name, "solution " + std::to_string(i + 1) + ": " + e.what());
        }
        if (!ok) {
            throw CertError(round, list_name, "solution " + std::to_string(i + 1) + " does not satisfy the formula");
        }
        if (!seen.insert(project(models[i], proj).values).second) {
            throw CertError(round, list_name, "projected duplicate at solution " + std::to_string(i + 1));
        }
    }
}

CnfXorFormula ban_all(CnfXorFormula instance, std::span<const Var> proj, std::span<const Assignment> models)
{
    for (const auto& w : models) instance.clauses.push_back(ban_clause(project(w, proj)));
    return instance;
}

}  // namespace

CertError::CertError(std::optional<size_t> round, std::string condition, std::string detail)
    : std::runtime_error(describe(round, condition, detail)),
      round_(round),
      condition_(std::move(condition)),
      detail_(std::move(detail))
{
}

std::string proof_sidecar_path(const std::string& base, const ProofSlot& slot)
{
    return base + "." + slot_name(slot) + ".xlrup";
}

std::optional<xlrup::Proof> EmbeddedSolverOracle::proof_for(const CnfXorFormula& instance, const ProofSlot&) const
{
    auto res = solve(instance, cfg_);
    if (auto* u = std::get_if<Unsat>(&res)) return std::move(u->proof);
    return std::nullopt;
}

std::optional<xlrup::Proof> ProofFileOracle::proof_for(const CnfXorFormula&, const ProofSlot& slot) const
{
    std::string path = proof_sidecar_path(base_, slot);
    if (!std::filesystem::exists(path)) return std::nullopt;
    return xlrup::read_xlrup_file(path);
}

std::optional<xlrup::Proof> ExternalCommandOracle::proof_for(const CnfXorFormula& instance,
                                                             const ProofSlot& slot) const
{
    namespace fs = std::filesystem;
    std::string stem = "amc-" + std::to_string(::getpid()) + "-" + slot_name(slot);
    fs::path cnf = fs::path(workdir_) / (stem + ".cnf");
    fs::path prf = fs::path(workdir_) / (stem + ".xlrup");
    {
        std::ofstream out(cnf);
        if (!out) throw std::runtime_error("cannot write '" + cnf.string() + "'");
        out << print_dimacs(instance);
    }
    fs::remove(prf);
    std::string cmd = command_ + " " + shell_quote(cnf.string()) + " " + shell_quote(prf.string()) + " >/dev/null";
    // A nonzero exit is not fatal; only the proof file matters.
    [[maybe_unused]] int rc = std::system(cmd.c_str());
    std::optional<xlrup::Proof> proof;
    if (fs::exists(prf)) proof = xlrup::read_xlrup_file(prf.string());
    fs::remove(cnf);
    fs::remove(prf);
    return proof;
}

std::optional<xlrup::Proof> InMemoryProofOracle::proof_for(const CnfXorFormula&, const ProofSlot& slot) const
{
    if (!slot.round) return init_;
    size_t r = *slot.round;
    if (r == 0 || r > rounds_.size()) return std::nullopt;
    return rounds_[r - 1];
}

void require_unsat(const CnfXorFormula& instance, const ProofSlot& slot, const UnsatOracle& oracle,
                   const xlrup::CheckerConfig& checker)
{
    // In a round, the unsatisfiability claim is part of condition 3.
    const std::string condition = slot.round ? "condition 3" : "unsat";
    std::optional<xlrup::Proof> proof;
    try {
        proof = oracle.proof_for(instance, slot);
    } catch (const xlrup::ProofParseError& e) {
        throw CertError(slot.round, condition, std::string("proof parse error: ") + e.what());
    } catch (const BudgetExceeded& e) {
        throw CertError(slot.round, condition, std::string("oracle gave up: ") + e.what());
    }
    if (!proof) throw CertError(slot.round, condition, "no unsatisfiability proof available");
    auto outcome = xlrup::check_proof(instance, *proof, checker);
    if (!outcome.verified) {
        throw CertError(slot.round, condition,
                        "proof rejected at step " + std::to_string(outcome.step_index + 1) + ": " + outcome.reason);
    }
}

uint64_t check_round(const CnfXorFormula& f, std::span<const Var> proj, uint64_t thresh,
                     std::span<const Xor> round_xors, const CertRound& round, const UnsatOracle& oracle,
                     size_t round_index, const xlrup::CheckerConfig& checker)
{
    const std::optional<size_t> where = round_index;
    const uint64_t s = proj.size();
    if (round_xors.size() + 1 != s) throw CertError(where, "setup", "round needs |S|-1 XORs");
    if (s > 62) throw CertError(where, "setup", "projection set too large");

    // (1) range of m; m == |S| marks a failed round with no list_hi.
    const uint64_t m = round.m;
    const bool failed = m == s;
    if (m < 1 || m > s) {
        throw CertError(where, "condition 1", "m = " + std::to_string(m) + " outside [1, " + std::to_string(s) + "]");
    }
    if (failed == round.list_hi.has_value()) {
        throw CertError(where, "condition 1", failed ? "failed round carries a second list" : "missing list after m XORs");
    }

    // (2) at least thresh distinct models after m-1 XORs.
    if (round.list_lo.size() < thresh) {
        throw CertError(where, "condition 2", std::to_string(round.list_lo.size()) + " solutions listed, thresh is "
                                                  + std::to_string(thresh));
    }
    const CnfXorFormula lo_inst = add_xors(f, round_xors.first(m - 1));
    validate_models(lo_inst, proj, round.list_lo, where, "condition 2");

    if (failed) return uint64_t{1} << s;

    // (3) fewer than thresh models after m XORs, and nothing else.
    const auto& hi = *round.list_hi;
    if (hi.size() >= thresh) {
        throw CertError(where, "condition 3", std::to_string(hi.size()) + " solutions listed, thresh is "
                                                  + std::to_string(thresh));
    }
    const CnfXorFormula hi_inst = add_xors(f, round_xors.first(m));
    validate_models(hi_inst, proj, hi, where, "condition 3");
    require_unsat(ban_all(hi_inst, proj, hi), ProofSlot{round_index}, oracle, checker);

    return (uint64_t{1} << m) * hi.size();
}

uint64_t check_certificate(const CnfXorFormula& f, std::span<const Var> proj, const PacParams& params,
                           RandomBitStream& bits, const Certificate& cert, const UnsatOracle& oracle,
                           const CheckOptions& opts)
{
    const uint64_t thresh = compute_thresh(params.epsilon);
    const uint64_t t = compute_t(params.delta, params.min_rounds);

    std::vector<std::vector<Xor>> xors;
    try {
        xors = random_seed_xors(bits, proj, t);
    } catch (const InsufficientRandomness& e) {
        throw CertError(std::nullopt, "randomness", e.what());
    }

    if (cert.m0 != 0) throw CertError(std::nullopt, "m0", "expected 0, found " + std::to_string(cert.m0));

    const auto& init = cert.init_models;
    if (init.size() < thresh) {
        if (!cert.rounds.empty()) {
            throw CertError(std::nullopt, "shape", "exact-case certificate must not contain rounds");
        }
        validate_models(f, proj, init, std::nullopt, "initial list");
        require_unsat(ban_all(f, proj, init), ProofSlot{std::nullopt}, oracle, opts.checker);
        return init.size();
    }

    // Only the claim "at least thresh" matters here, so extra entries are ignored.
    validate_models(f, proj, std::span<const Assignment>(init).first(thresh), std::nullopt, "initial list");

    if (cert.rounds.size() != t) {
        throw CertError(std::nullopt, "shape", std::to_string(cert.rounds.size()) + " rounds listed, expected "
                                                   + std::to_string(t));
    }

    std::vector<uint64_t> estimates(t);
    if (opts.jobs <= 1) {
        for (size_t r = 0; r < t; r++) {
            estimates[r] = check_round(f, proj, thresh, xors[r], cert.rounds[r], oracle, r + 1, opts.checker);
        }
    } else {
        // Batches of `jobs` rounds; the lowest failing round is reported.
        for (size_t start = 0; start < t; start += opts.jobs) {
            size_t end = std::min<size_t>(t, start + opts.jobs);
            std::vector<std::future<uint64_t>> futs;
            for (size_t r = start; r < end; r++) {
                futs.push_back(std::async(std::launch::async, [&, r]() {
                    return check_round(f, proj, thresh, xors[r], cert.rounds[r], oracle, r + 1, opts.checker);
                }));
            }
            std::optional<CertError> first;
            for (size_t i = 0; i < futs.size(); i++) {
                try {
                    estimates[start + i] = futs[i].get();
                } catch (const CertError& e) {
                    if (!first) first = e;
                }
            }
            if (first) throw *first;
        }
    }
    return find_median(estimates);
}

}  // namespace amc
