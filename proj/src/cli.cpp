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

#include "amc/cli.hpp"

#include <CLI11.hpp>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <optional>
#include <random>

#include "amc/certcheck.hpp"
#include "amc/counter.hpp"
#include "amc/oracle.hpp"
#include "amc/pac_eval.hpp"

namespace amc::cli {

namespace fs = std::filesystem;

namespace {

/// Carries an exit status and an `s ERROR` reason up to run().
struct Failure {
    int code;
    std::string reason;
};

struct PacArgs {
    std::string epsilon = "0.8";
    std::string delta = "0.2";
    uint64_t min_rounds = 1;

    void attach(CLI::App* app)
    {
        app->add_option("-e,--epsilon", epsilon, "tolerance, decimal or p/q")->capture_default_str();
        app->add_option("-d,--delta", delta, "confidence, decimal or p/q")->capture_default_str();
        app->add_option("--min-rounds", min_rounds, "lower bound on the number of rounds")->capture_default_str();
    }

    PacParams params() const
    {
        try {
            return make_params(parse_decimal(epsilon), parse_decimal(delta), min_rounds);
        } catch (const ParamError& e) {
            throw Failure{kUsage, e.what()};
        }
    }
};

struct SolverArgs {
    uint64_t conflict_budget = 0;
    size_t blast_cap = 16;

    void attach(CLI::App* app)
    {
        app->add_option("--conflict-budget", conflict_budget, "conflicts per solver call, 0 = unlimited")
            ->capture_default_str();
        app->add_option("--blast-cap", blast_cap, "widest XOR expanded into clauses")->capture_default_str();
    }

    SolverConfig config() const { return SolverConfig{conflict_budget, blast_cap}; }
};

CnfXorFormula load_formula(const std::string& path)
{
    try {
        return read_dimacs_file(path);
    } catch (const std::exception& e) {
        throw Failure{kUsage, "formula: " + std::string(e.what())};
    }
}

RandomBitStream load_bits(const std::string& path)
{
    try {
        return RandomBitStream::from_file(path);
    } catch (const std::exception& e) {
        throw Failure{kUsage, "bits: " + std::string(e.what())};
    }
}

void write_text(const std::string& path, const std::string& text)
{
    std::ofstream out(path, std::ios::binary);
    if (!out || !(out << text)) throw Failure{kUsage, "cannot write '" + path + "'"};
}

/// Sidecar base: the certificate path, or its file name inside the proof directory.
std::string proof_base(const std::string& cert_path, std::string proof_dir)
{
    if (proof_dir.empty()) {
        if (const char* env = std::getenv(kProofDirEnv)) proof_dir = env;
    }
    if (proof_dir.empty()) return cert_path;
    return (fs::path(proof_dir) / fs::path(cert_path).filename()).string();
}

std::string show(const Rational& r)
{
    return r.str();
}

// ---------------------------------------------------------------- genbits

struct GenbitsCmd {
    std::string out_path;
    size_t bytes = 0;
    std::string formula;
    PacArgs pac;

    void attach(CLI::App* app)
    {
        app->add_option("-o,--out", out_path, "bit file to write")->required();
        auto* b = app->add_option("--bytes", bytes, "explicit length in bytes");
        auto* f = app->add_option("-f,--formula", formula, "size the file for this formula");
        b->excludes(f);
        pac.attach(app);
    }

    int run(std::ostream& out)
    {
        uint64_t need_bits = 0;
        if (!formula.empty()) {
            CnfXorFormula f = load_formula(formula);
            PacParams p = pac.params();
            need_bits = required_bits(f.proj.size(), compute_t(p.delta, p.min_rounds));
            bytes = (need_bits + 7) / 8;
        } else if (bytes == 0) {
            throw Failure{kUsage, "genbits needs --bytes or --formula"};
        }
        write_bytes_file(out_path, os_random_bytes(bytes));
        out << "c wrote " << bytes << " bytes";
        if (!formula.empty()) out << " (" << need_bits << " bits required)";
        out << "\n";
        return kOk;
    }
};

// ---------------------------------------------------------------- count

struct CountCmd {
    std::string formula;
    std::string bits;
    std::string cert;
    std::string proof_dir;
    std::string find_m = "linear";
    PacArgs pac;
    SolverArgs solver;

    void attach(CLI::App* app)
    {
        app->add_option("-f,--formula", formula, "CNF-XOR formula")->required();
        app->add_option("-b,--bits", bits, "random bit file")->required();
        app->add_option("-c,--cert", cert, "certificate output path");
        app->add_option("--proof-dir", proof_dir, "directory for proof sidecars");
        app->add_option("--find-m", find_m, "search order for m")
            ->check(CLI::IsMember({"linear", "galloping"}))
            ->capture_default_str();
        pac.attach(app);
        solver.attach(app);
    }

    int run(std::ostream& out)
    {
        CnfXorFormula f = load_formula(formula);
        PacParams p = pac.params();
        RandomBitStream stream = load_bits(bits);

        const uint64_t thresh = compute_thresh(p.epsilon);
        const uint64_t t = compute_t(p.delta, p.min_rounds);
        const uint64_t need = required_bits(f.proj.size(), t);
        if (stream.total_bits() < need) {
            throw Failure{kResource, "insufficient randomness: need " + std::to_string(need) + " bits, have "
                                         + std::to_string(stream.total_bits())};
        }
        if (f.proj.size() > kMaxProjection) {
            throw Failure{kResource, "projection set larger than " + std::to_string(kMaxProjection)};
        }

        CounterConfig cfg{solver.config(), find_m == "galloping" ? SearchMode::Galloping : SearchMode::Linear};
        CountResult res;
        try {
            res = approxmc(f, f.proj, p, stream, cfg);
        } catch (const BudgetExceeded& e) {
            throw Failure{kResource, std::string("solver budget exceeded: ") + e.what()};
        } catch (const InsufficientRandomness& e) {
            throw Failure{kResource, e.what()};
        }

        out << "c thresh " << thresh << "\n";
        out << "c rounds " << (res.exact ? 0 : t) << "\n";
        if (!res.exact) {
            out << "c estimates";
            for (uint64_t e : res.estimates) out << " " << e;
            out << "\n";
        }
        if (!cert.empty()) {
            write_text(cert, print_certificate(res.cert));
            const std::string base = proof_base(cert, proof_dir);
            if (res.init_proof) write_text(proof_sidecar_path(base, {}), xlrup::print_xlrup(*res.init_proof));
            for (size_t r = 0; r < res.round_proofs.size(); r++) {
                if (!res.round_proofs[r]) continue;
                write_text(proof_sidecar_path(base, {r + 1}), xlrup::print_xlrup(*res.round_proofs[r]));
            }
            out << "c certificate " << cert << "\n";
        }
        out << "s mc " << res.count << "\n";
        return kOk;
    }
};

// ---------------------------------------------------------------- certcheck

struct CertcheckCmd {
    std::string formula;
    std::string bits;
    std::string cert;
    std::string proof_dir;
    bool solve_unsat = false;
    std::string unsat_cmd;
    unsigned jobs = 1;
    size_t xor_cap = 16;
    PacArgs pac;
    SolverArgs solver;

    void attach(CLI::App* app)
    {
        app->add_option("-f,--formula", formula, "CNF-XOR formula")->required();
        app->add_option("-c,--cert", cert, "certificate")->required();
        app->add_option("-b,--bits", bits, "random bit file used by the counter")->required();
        auto* pd = app->add_option("--proof-dir", proof_dir, "directory holding proof sidecars");
        auto* su = app->add_flag("--solve-unsat", solve_unsat, "re-derive proofs with the embedded solver");
        auto* uc = app->add_option("--unsat-cmd", unsat_cmd, "external solver: CMD <instance.cnf> <proof.xlrup>");
        pd->excludes(su)->excludes(uc);
        su->excludes(uc);
        app->add_option("-j,--jobs", jobs, "rounds checked concurrently")->check(CLI::PositiveNumber);
        app->add_option("--xor-cap", xor_cap, "widest XOR the proof checker expands")->capture_default_str();
        pac.attach(app);
        solver.attach(app);
    }

    int run(std::ostream& out)
    {
        CnfXorFormula f = load_formula(formula);
        PacParams p = pac.params();
        RandomBitStream stream = load_bits(bits);

        Certificate c;
        try {
            c = read_certificate_file(cert, f.num_vars, f.proj.size());
        } catch (const CertificateParseError& e) {
            throw Failure{kRejected, std::string("certificate: ") + e.what()};
        } catch (const std::exception& e) {
            throw Failure{kUsage, std::string("certificate: ") + e.what()};
        }

        std::unique_ptr<UnsatOracle> oracle;
        std::optional<fs::path> scratch;
        if (solve_unsat) {
            oracle = std::make_unique<EmbeddedSolverOracle>(solver.config());
        } else if (!unsat_cmd.empty()) {
            scratch = fs::temp_directory_path() / ("amccert-" + std::to_string(std::random_device{}()));
            fs::create_directories(*scratch);
            oracle = std::make_unique<ExternalCommandOracle>(unsat_cmd, scratch->string());
        } else {
            oracle = std::make_unique<ProofFileOracle>(proof_base(cert, proof_dir));
        }

        CheckOptions opts;
        opts.checker.xor_width_cap = xor_cap;
        opts.jobs = jobs;
        std::optional<uint64_t> count;
        std::optional<Failure> fail;
        try {
            count = check_certificate(f, f.proj, p, stream, c, *oracle, opts);
        } catch (const CertError& e) {
            fail = Failure{e.condition() == "randomness" ? kResource : kRejected, e.what()};
        } catch (const std::exception& e) {
            fail = Failure{kRejected, e.what()};
        }
        if (scratch) fs::remove_all(*scratch);
        if (fail) throw *fail;
        out << "s mc " << *count << "\n";
        return kOk;
    }
};

// ---------------------------------------------------------------- xlrup-check

struct XlrupCheckCmd {
    std::string formula;
    std::string proof;
    size_t xor_cap = 16;

    void attach(CLI::App* app)
    {
        app->add_option("formula", formula, "CNF-XOR formula")->required();
        app->add_option("proof", proof, "XLRUP proof")->required();
        app->add_option("--xor-cap", xor_cap, "widest XOR the checker expands")->capture_default_str();
    }

    int run(std::ostream& out)
    {
        CnfXorFormula f = load_formula(formula);
        xlrup::Proof p;
        try {
            p = xlrup::read_xlrup_file(proof);
        } catch (const std::exception& e) {
            throw Failure{kUsage, std::string("proof: ") + e.what()};
        }
        auto outcome = xlrup::check_proof(f, p, xlrup::CheckerConfig{xor_cap});
        if (!outcome.verified) {
            out << "s REJECTED step " << outcome.step_index + 1 << ": " << outcome.reason << "\n";
            return kRejected;
        }
        out << "s VERIFIED\n";
        return kOk;
    }
};

// ---------------------------------------------------------------- exact-count

struct ExactCountCmd {
    std::string formula;

    void attach(CLI::App* app) { app->add_option("formula", formula, "CNF-XOR formula")->required(); }

    int run(std::ostream& out)
    {
        CnfXorFormula f = load_formula(formula);
        try {
            out << "s mc " << oracle::exact_projected_count(f, f.proj) << "\n";
        } catch (const oracle::GuardExceeded& e) {
            throw Failure{kResource, e.what()};
        }
        return kOk;
    }
};

// ---------------------------------------------------------------- pac-eval

struct PacEvalCmd {
    std::string formula;
    size_t trials = 200;
    unsigned jobs = 1;
    std::optional<uint64_t> seed;
    std::string workdir;
    bool verbose = false;
    PacArgs pac;
    SolverArgs solver;

    void attach(CLI::App* app)
    {
        app->add_option("-f,--formula", formula, "CNF-XOR formula")->required();
        app->add_option("-n,--trials", trials, "number of count + certcheck cycles")
            ->check(CLI::PositiveNumber)
            ->capture_default_str();
        app->add_option("-j,--jobs", jobs, "trials run concurrently")->check(CLI::PositiveNumber);
        app->add_option("--seed", seed, "derive bit files from a seeded generator instead of OS entropy");
        app->add_option("--workdir", workdir, "directory for per-trial bit files");
        app->add_flag("-v,--verbose", verbose, "one line per trial");
        pac.attach(app);
        solver.attach(app);
    }

    int run(std::ostream& out)
    {
        CnfXorFormula f = load_formula(formula);
        PacParams p = pac.params();

        fs::path dir = workdir.empty()
                           ? fs::temp_directory_path() / ("amccert-pac-" + std::to_string(std::random_device{}()))
                           : fs::path(workdir);
        fs::create_directories(dir);

        // Each trial gets its own bit file, read back before use.
        BitSource source = [&](size_t trial, size_t nbytes) {
            std::vector<uint8_t> bytes;
            if (seed) {
                std::seed_seq seq{*seed, static_cast<uint64_t>(trial)};
                std::mt19937_64 gen(seq);
                bytes.resize(nbytes);
                for (auto& b : bytes) b = static_cast<uint8_t>(gen());
            } else {
                bytes = os_random_bytes(nbytes);
            }
            const std::string path = (dir / ("trial" + std::to_string(trial) + ".bin")).string();
            write_bytes_file(path, bytes);
            std::ifstream in(path, std::ios::binary);
            return std::vector<uint8_t>(std::istreambuf_iterator<char>(in), {});
        };

        PacReport rep;
        try {
            rep = pac_eval(f, p, trials, source, jobs, CounterConfig{solver.config(), SearchMode::Linear});
        } catch (const oracle::GuardExceeded& e) {
            throw Failure{kResource, e.what()};
        } catch (const BudgetExceeded& e) {
            throw Failure{kResource, std::string("solver budget exceeded: ") + e.what()};
        }
        if (workdir.empty()) fs::remove_all(dir);

        out << "c exact " << rep.exact_count << "\n";
        out << "c envelope [" << show(rep.lower) << ", " << show(rep.upper) << "]\n";
        if (verbose) {
            for (size_t i = 0; i < rep.trials.size(); i++) {
                const auto& tr = rep.trials[i];
                out << "c trial " << i + 1 << " counted " << tr.counted << " certified ";
                if (tr.certified) out << *tr.certified << (tr.outside ? " outside" : "");
                else out << "REJECTED " << tr.error;
                out << "\n";
            }
        }
        out << "c rejected " << rep.rejected << "\n";
        out << "s pac failures " << rep.failures << "/" << rep.trials.size() << " fraction "
            << show(rep.failure_fraction()) << " delta " << show(rep.delta) << "\n";
        if (!rep.all_accepted() || rep.failure_fraction() > rep.delta) return kRejected;
        return kOk;
    }
};

// ---------------------------------------------------------------- solve

struct SolveCmd {
    std::string formula;
    std::string proof_out;
    SolverArgs solver;

    void attach(CLI::App* app)
    {
        app->add_option("formula", formula, "CNF-XOR formula")->required();
        app->add_option("proof", proof_out, "XLRUP proof output when unsatisfiable");
        app->add_option("--proof-out", proof_out, "same as the positional proof path");
        solver.attach(app);
    }

    int run(std::ostream& out)
    {
        CnfXorFormula f = load_formula(formula);
        SolverResult res;
        try {
            res = solve(f, solver.config());
        } catch (const BudgetExceeded& e) {
            throw Failure{kResource, std::string("solver budget exceeded: ") + e.what()};
        }
        if (auto* s = std::get_if<Sat>(&res)) {
            out << "s SATISFIABLE\nv";
            for (Lit l : s->model.to_literals()) out << " " << l;
            out << " 0\n";
            return kSat;
        }
        if (!proof_out.empty()) write_text(proof_out, xlrup::print_xlrup(std::get<Unsat>(res).proof));
        out << "s UNSATISFIABLE\n";
        return kUnsat;
    }
};

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err)
{
    CLI::App app{"Certified approximate model counting for CNF-XOR formulas", "amccert"};
    app.require_subcommand(1);

    GenbitsCmd genbits;
    CountCmd count;
    CertcheckCmd certcheck;
    XlrupCheckCmd xlrup_check;
    ExactCountCmd exact_count;
    PacEvalCmd pac_eval_cmd;
    SolveCmd solve_cmd;

    auto* g = app.add_subcommand("genbits", "fill a bit file from OS entropy");
    genbits.attach(g);
    auto* c = app.add_subcommand("count", "approximate count with certificate");
    count.attach(c);
    auto* cc = app.add_subcommand("certcheck", "verify a certificate and print the certified count");
    certcheck.attach(cc);
    auto* x = app.add_subcommand("xlrup-check", "check an XLRUP unsatisfiability proof");
    xlrup_check.attach(x);
    auto* e = app.add_subcommand("exact-count", "exhaustive projected count of a small formula");
    exact_count.attach(e);
    auto* pe = app.add_subcommand("pac-eval", "repeat count + certcheck and compare against the exact count");
    pac_eval_cmd.attach(pe);
    auto* s = app.add_subcommand("solve", "decide satisfiability, optionally writing a proof");
    solve_cmd.attach(s);

    std::vector<const char*> argv;
    for (const auto& a : args) argv.push_back(a.c_str());
    try {
        app.parse(static_cast<int>(argv.size()), argv.data());
    } catch (const CLI::ParseError& ex) {
        int rc = app.exit(ex, out, err);
        return rc == 0 ? kOk : kUsage;
    }

    try {
        if (g->parsed()) return genbits.run(out);
        if (c->parsed()) return count.run(out);
        if (cc->parsed()) return certcheck.run(out);
        if (x->parsed()) return xlrup_check.run(out);
        if (e->parsed()) return exact_count.run(out);
        if (pe->parsed()) return pac_eval_cmd.run(out);
        if (s->parsed()) return solve_cmd.run(out);
    } catch (const Failure& f) {
        out << "s ERROR " << f.reason << "\n";
        return f.code;
    } catch (const std::exception& ex) {
        out << "s ERROR " << ex.what() << "\n";
        return kResource;
    }
    return kUsage;
}

}  // namespace amc::cli
