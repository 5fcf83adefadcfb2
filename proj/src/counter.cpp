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

#include "amc/counter.hpp"

#include <map>

namespace amc {

namespace {

// Bounded counts under XOR prefixes of one round, computed on demand.
class PrefixCounts {
public:
    PrefixCounts(const CnfXorFormula& f, std::span<const Var> proj, std::span<const Xor> xors, uint64_t thresh,
                 const SolverConfig& cfg)
        : f_(f), proj_(proj), xors_(xors), thresh_(thresh), cfg_(cfg)
    {
    }

    const BoundedResult& at(uint64_t m)
    {
        auto it = cache_.find(m);
        if (it == cache_.end()) {
            it = cache_.emplace(m, bounded_count(f_, proj_, thresh_, xors_.first(m), cfg_)).first;
        }
        return it->second;
    }

    bool small(uint64_t m) { return at(m).models.size() < thresh_; }

private:
    const CnfXorFormula& f_;
    std::span<const Var> proj_;
    std::span<const Xor> xors_;
    uint64_t thresh_;
    SolverConfig cfg_;
    std::map<uint64_t, BoundedResult> cache_;
};

std::optional<uint64_t> search(PrefixCounts& counts, uint64_t max_m, SearchMode mode)
{
    if (mode == SearchMode::Linear) {
        for (uint64_t m = 1; m <= max_m; m++) {
            if (counts.small(m)) return m;
        }
        return std::nullopt;
    }

    // Invariant: the count at `lo` is >= thresh (lo = 0 by precondition).
    uint64_t lo = 0;
    uint64_t hi = 1;
    while (true) {
        if (hi >= max_m) {
            hi = max_m;
            if (hi == lo || !counts.small(hi)) return std::nullopt;
            break;
        }
        if (counts.small(hi)) break;
        lo = hi;
        hi *= 2;
    }
    while (hi - lo > 1) {
        uint64_t mid = lo + (hi - lo) / 2;
        if (counts.small(mid)) hi = mid;
        else lo = mid;
    }
    return hi;
}

uint64_t pow2(uint64_t m) { return uint64_t{1} << m; }

}  // namespace

std::optional<uint64_t> find_m(const CnfXorFormula& f, std::span<const Var> proj, std::span<const Xor> xors,
                               uint64_t thresh, const CounterConfig& cfg)
{
    if (proj.empty() || xors.size() != proj.size() - 1) {
        throw std::invalid_argument("a round needs exactly |S|-1 XORs");
    }
    PrefixCounts counts(f, proj, xors, thresh, cfg.solver);
    return search(counts, xors.size(), cfg.search);
}

RoundResult approxmc_core(const CnfXorFormula& f, std::span<const Var> proj, uint64_t thresh,
                          std::span<const Xor> xors, const CounterConfig& cfg)
{
    if (proj.empty() || xors.size() != proj.size() - 1) {
        throw std::invalid_argument("a round needs exactly |S|-1 XORs");
    }
    if (proj.size() > kMaxProjection) throw std::invalid_argument("projection set too large");

    PrefixCounts counts(f, proj, xors, thresh, cfg.solver);
    RoundResult r;
    auto m = search(counts, xors.size(), cfg.search);
    if (!m) {
        r.m = proj.size();
        r.list_lo = counts.at(xors.size()).models;
        r.estimate = pow2(proj.size());
        return r;
    }
    r.m = *m;
    r.list_lo = counts.at(*m - 1).models;
    const auto& hi = counts.at(*m);
    r.list_hi = hi.models;
    r.proof = hi.proof;
    r.estimate = pow2(*m) * hi.models.size();
    return r;
}

CountResult approxmc(const CnfXorFormula& f, std::span<const Var> proj, const PacParams& params,
                     RandomBitStream& bits, const CounterConfig& cfg)
{
    if (proj.size() > kMaxProjection) throw std::invalid_argument("projection set too large");
    CountResult res;
    res.thresh = compute_thresh(params.epsilon);
    res.rounds = compute_t(params.delta, params.min_rounds);

    // Eager sampling: the checker replays exactly this draw.
    auto round_xors = random_seed_xors(bits, proj, res.rounds);

    BoundedResult init = bounded_count(f, proj, res.thresh, {}, cfg.solver);
    res.cert.m0 = 0;
    res.cert.init_models = init.models;
    if (init.models.size() < res.thresh) {
        res.exact = true;
        res.count = init.models.size();
        res.init_proof = std::move(init.proof);
        return res;
    }

    for (const auto& xs : round_xors) {
        RoundResult r = approxmc_core(f, proj, res.thresh, xs, cfg);
        res.estimates.push_back(r.estimate);
        res.cert.rounds.push_back(CertRound{r.m, std::move(r.list_lo), std::move(r.list_hi)});
        res.round_proofs.push_back(std::move(r.proof));
    }
    res.count = find_median(res.estimates);
    return res;
}

}  // namespace amc
