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
#include <string>
#include <vector>

#include "amc/certificate.hpp"
#include "amc/formula.hpp"
#include "amc/params.hpp"
#include "amc/randomness.hpp"
#include "amc/solver.hpp"
#include "amc/xlrup.hpp"

namespace amc {

/// A certificate was rejected. `round` is 1-based; empty for the initial list.
class CertError : public std::runtime_error {
public:
    CertError(std::optional<size_t> round, std::string condition, std::string detail);

    const std::optional<size_t>& round() const { return round_; }
    const std::string& condition() const { return condition_; }
    const std::string& detail() const { return detail_; }

private:
    std::optional<size_t> round_;
    std::string condition_;
    std::string detail_;
};

/// Which unsatisfiability claim of a certificate a proof belongs to.
struct ProofSlot {
    std::optional<size_t> round;  ///< 1-based; empty for the exact-case initial list
};

/// `<base>.init.xlrup` or `<base>.round<r>.xlrup`.
std::string proof_sidecar_path(const std::string& base, const ProofSlot& slot);

/// Supplies candidate proofs for unsatisfiability claims. Nothing an
/// oracle returns is trusted: every proof is re-checked against the
/// instance the checker rebuilt itself. Implementations must be safe to
/// call from concurrent round checks.
class UnsatOracle {
public:
    virtual ~UnsatOracle() = default;
    virtual std::optional<xlrup::Proof> proof_for(const CnfXorFormula& instance, const ProofSlot& slot) const = 0;
};

/// Runs the embedded solver on the rebuilt instance.
class EmbeddedSolverOracle : public UnsatOracle {
public:
    explicit EmbeddedSolverOracle(SolverConfig cfg = {}) : cfg_(cfg) {}
    std::optional<xlrup::Proof> proof_for(const CnfXorFormula& instance, const ProofSlot& slot) const override;

private:
    SolverConfig cfg_;
};

/// Reads sidecar proof files written next to a certificate.
class ProofFileOracle : public UnsatOracle {
public:
    explicit ProofFileOracle(std::string base) : base_(std::move(base)) {}
    std::optional<xlrup::Proof> proof_for(const CnfXorFormula& instance, const ProofSlot& slot) const override;

private:
    std::string base_;
};

/// Writes the instance to `workdir` and runs `<command> <instance.cnf> <proof.xlrup>`.
class ExternalCommandOracle : public UnsatOracle {
public:
    ExternalCommandOracle(std::string command, std::string workdir)
        : command_(std::move(command)), workdir_(std::move(workdir))
    {
    }
    std::optional<xlrup::Proof> proof_for(const CnfXorFormula& instance, const ProofSlot& slot) const override;

private:
    std::string command_;
    std::string workdir_;
};

/// Proofs held in memory, e.g. straight from a counter run.
class InMemoryProofOracle : public UnsatOracle {
public:
    InMemoryProofOracle(std::optional<xlrup::Proof> init, std::vector<std::optional<xlrup::Proof>> rounds)
        : init_(std::move(init)), rounds_(std::move(rounds))
    {
    }
    std::optional<xlrup::Proof> proof_for(const CnfXorFormula& instance, const ProofSlot& slot) const override;

private:
    std::optional<xlrup::Proof> init_;
    std::vector<std::optional<xlrup::Proof>> rounds_;
};

struct CheckOptions {
    xlrup::CheckerConfig checker;
    /// Rounds checked concurrently; 1 checks them in order on this thread.
    unsigned jobs = 1;
};

/// Accepts only if the oracle's proof verifies on `instance`; throws CertError otherwise.
void require_unsat(const CnfXorFormula& instance, const ProofSlot& slot, const UnsatOracle& oracle,
                   const xlrup::CheckerConfig& checker = {});

/// Enforces the three per-round conditions and returns the round's estimate.
uint64_t check_round(const CnfXorFormula& f, std::span<const Var> proj, uint64_t thresh,
                     std::span<const Xor> round_xors, const CertRound& round, const UnsatOracle& oracle,
                     size_t round_index, const xlrup::CheckerConfig& checker = {});

/// Replays the XOR sampling from `bits`, validates all evidence and
/// returns the certified count. Throws CertError on any violation.
uint64_t check_certificate(const CnfXorFormula& f, std::span<const Var> proj, const PacParams& params,
                           RandomBitStream& bits, const Certificate& cert, const UnsatOracle& oracle,
                           const CheckOptions& opts = {});

}  // namespace amc
