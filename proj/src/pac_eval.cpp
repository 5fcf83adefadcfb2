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

#include "amc/pac_eval.hpp"

#include <atomic>
#include <thread>

#include "amc/certcheck.hpp"
#include "amc/oracle.hpp"

namespace amc {

Rational PacReport::failure_fraction() const
{
    if (trials.empty()) return 0;
    return Rational(static_cast<uint64_t>(failures), static_cast<uint64_t>(trials.size()));
}

bool outside_envelope(uint64_t count, uint64_t exact, const Rational& epsilon)
{
    const Rational c(count);
    const Rational n(exact);
    const Rational k = Rational(1) + epsilon;
    return c * k < n || c > k * n;
}

namespace {

PacTrial run_trial(const CnfXorFormula& f, const PacParams& params, const std::vector<uint8_t>& bytes,
                   uint64_t exact, const CounterConfig& cfg)
{
    PacTrial trial;
    RandomBitStream count_bits(bytes);
    CountResult res = approxmc(f, f.proj, params, count_bits, cfg);
    trial.counted = res.count;
    trial.exact = res.exact;

    // Round-trip the artifacts through their file formats.
    Certificate cert = parse_certificate(print_certificate(res.cert), f.num_vars, f.proj.size());
    std::optional<xlrup::Proof> init;
    if (res.init_proof) init = xlrup::parse_xlrup(xlrup::print_xlrup(*res.init_proof));
    std::vector<std::optional<xlrup::Proof>> rounds;
    for (const auto& p : res.round_proofs) {
        rounds.push_back(p ? std::optional(xlrup::parse_xlrup(xlrup::print_xlrup(*p))) : std::nullopt);
    }
    InMemoryProofOracle oracle(std::move(init), std::move(rounds));

    RandomBitStream check_bits(bytes);
    try {
        trial.certified = check_certificate(f, f.proj, params, check_bits, cert, oracle);
    } catch (const CertError& e) {
        trial.error = e.what();
    }
    trial.same_bits_consumed = count_bits.position() == check_bits.position();
    if (trial.certified) trial.outside = outside_envelope(*trial.certified, exact, params.epsilon);
    return trial;
}

}  // namespace

PacReport pac_eval(const CnfXorFormula& f, const PacParams& params, size_t trials, const BitSource& source,
                   unsigned jobs, const CounterConfig& cfg)
{
    PacReport rep;
    rep.exact_count = oracle::exact_projected_count(f, f.proj);
    rep.epsilon = params.epsilon;
    rep.delta = params.delta;
    rep.lower = Rational(rep.exact_count) / (Rational(1) + params.epsilon);
    rep.upper = Rational(rep.exact_count) * (Rational(1) + params.epsilon);

    const uint64_t t = compute_t(params.delta, params.min_rounds);
    const size_t nbytes = (required_bits(f.proj.size(), t) + 7) / 8;

    // Bits are drawn up front and in trial order so a seeded source gives
    // the same trials regardless of job count.
    std::vector<std::vector<uint8_t>> bytes;
    bytes.reserve(trials);
    for (size_t i = 0; i < trials; i++) bytes.push_back(source(i, nbytes));

    rep.trials.resize(trials);
    std::atomic<size_t> next{0};
    auto worker = [&]() {
        for (size_t i = next++; i < trials; i = next++) {
            rep.trials[i] = run_trial(f, params, bytes[i], rep.exact_count, cfg);
        }
    };
    if (jobs <= 1) {
        worker();
    } else {
        std::vector<std::thread> pool;
        for (unsigned j = 0; j < jobs; j++) pool.emplace_back(worker);
        for (auto& th : pool) th.join();
    }

    for (const auto& tr : rep.trials) {
        if (!tr.certified || *tr.certified != tr.counted || !tr.same_bits_consumed) rep.rejected++;
        if (tr.certified && tr.outside) rep.failures++;
    }
    return rep;
}

}  // namespace amc
