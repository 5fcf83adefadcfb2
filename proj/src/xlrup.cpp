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

#include "amc/xlrup.hpp"

#include <algorithm>
#include <charconv>
#include <fstream>
#include <sstream>

namespace amc::xlrup {

// ---------------------------------------------------------------------------
// Parsing and printing

namespace {

class Tokenizer {
public:
    explicit Tokenizer(std::string_view text) : text_(text) {}

    std::optional<std::string_view> peek()
    {
        skip();
        if (pos_ >= text_.size()) return std::nullopt;
        size_t end = pos_;
        while (end < text_.size() && !is_space(text_[end]) && !starts_comment(end)) end++;
        return text_.substr(pos_, end - pos_);
    }

    std::string_view next(const char* what)
    {
        auto tok = peek();
        if (!tok) throw ProofParseError("unexpected end of proof, expected " + std::string(what));
        pos_ += tok->size();
        return *tok;
    }

    long long integer(const char* what)
    {
        auto tok = next(what);
        long long v = 0;
        auto [ptr, ec] = std::from_chars(tok.data(), tok.data() + tok.size(), v);
        if (ec != std::errc() || ptr != tok.data() + tok.size()) {
            throw ProofParseError("expected " + std::string(what) + ", found '" + std::string(tok) + "'");
        }
        return v;
    }

    Id id(const char* what)
    {
        long long v = integer(what);
        if (v <= 0) throw ProofParseError(std::string(what) + " must be positive, found " + std::to_string(v));
        return static_cast<Id>(v);
    }

    std::vector<Lit> literals()
    {
        std::vector<Lit> out;
        while (true) {
            long long v = integer("literal or 0");
            if (v == 0) return out;
            if (v > INT32_MAX || v < -INT32_MAX) throw ProofParseError("literal out of range");
            out.push_back(static_cast<Lit>(v));
        }
    }

    std::vector<Id> ids()
    {
        std::vector<Id> out;
        while (true) {
            long long v = integer("ID or 0");
            if (v == 0) return out;
            if (v < 0) throw ProofParseError("negative ID " + std::to_string(v));
            out.push_back(static_cast<Id>(v));
        }
    }

private:
    static bool is_space(char c) { return std::isspace(static_cast<unsigned char>(c)); }
    bool starts_comment(size_t i) const { return i + 1 < text_.size() && text_[i] == '/' && text_[i + 1] == '/'; }

    void skip()
    {
        while (pos_ < text_.size()) {
            if (is_space(text_[pos_])) {
                pos_++;
            } else if (starts_comment(pos_)) {
                while (pos_ < text_.size() && text_[pos_] != '\n') pos_++;
            } else {
                break;
            }
        }
    }

    std::string_view text_;
    size_t pos_ = 0;
};

void append_lits(std::ostringstream& out, std::span<const Lit> lits)
{
    for (Lit l : lits) out << ' ' << l;
    out << " 0";
}

void append_ids(std::ostringstream& out, std::span<const Id> ids)
{
    for (Id i : ids) out << ' ' << i;
    out << " 0";
}

}  // namespace

Proof parse_xlrup(std::string_view text)
{
    Tokenizer tk(text);
    Proof proof;
    Id last_clause = 0;
    Id last_xor = 0;
    auto new_clause_id = [&](Id id) {
        if (id <= last_clause) throw ProofParseError("clause ID " + std::to_string(id) + " is not increasing");
        last_clause = id;
        return id;
    };
    auto new_xor_id = [&](Id id) {
        if (id <= last_xor) throw ProofParseError("XOR ID " + std::to_string(id) + " is not increasing");
        last_xor = id;
        return id;
    };

    while (auto tok = tk.peek()) {
        try {
            if (*tok == "o") {
                tk.next("o");
                if (tk.next("'x'") != "x") throw ProofParseError("expected 'x' after 'o'");
                Id id = new_xor_id(tk.id("XOR ID"));
                proof.push_back(OrigXor{id, Xor::from_literals(tk.literals())});
            } else if (*tok == "i") {
                tk.next("i");
                if (tk.peek() == std::string_view("x")) {
                    tk.next("x");
                    Id id = new_xor_id(tk.id("XOR ID"));
                    Xor xr = Xor::from_literals(tk.literals());
                    proof.push_back(XorFromClauses{id, std::move(xr), tk.ids()});
                } else {
                    Id id = new_clause_id(tk.id("clause ID"));
                    Clause c = tk.literals();
                    proof.push_back(ClauseFromXors{id, std::move(c), tk.ids()});
                }
            } else if (*tok == "x") {
                tk.next("x");
                if (tk.peek() == std::string_view("d")) {
                    tk.next("d");
                    proof.push_back(DeleteXors{tk.ids()});
                } else {
                    Id id = new_xor_id(tk.id("XOR ID"));
                    Xor xr = Xor::from_literals(tk.literals());
                    proof.push_back(XorAdd{id, std::move(xr), tk.ids()});
                }
            } else if (*tok == "d") {
                tk.next("d");
                proof.push_back(DeleteClauses{tk.ids()});
            } else {
                Id id = new_clause_id(tk.id("clause ID"));
                Clause c = tk.literals();
                proof.push_back(RupClause{id, std::move(c), tk.ids()});
            }
        } catch (const ProofParseError& e) {
            throw ProofParseError("step " + std::to_string(proof.size() + 1) + ": " + e.what());
        }
    }
    return proof;
}

Proof read_xlrup_file(const std::string& path)
{
    std::ifstream in(path, std::ios::binary);
    if (!in) throw ProofParseError("cannot open proof '" + path + "'");
    std::stringstream ss;
    ss << in.rdbuf();
    return parse_xlrup(ss.str());
}

std::string print_step(const Step& step)
{
    std::ostringstream out;
    std::visit(
        [&](const auto& s) {
            using T = std::decay_t<decltype(s)>;
            if constexpr (std::is_same_v<T, OrigXor>) {
                out << "o x " << s.id;
                append_lits(out, s.xr.to_literals());
            } else if constexpr (std::is_same_v<T, XorFromClauses>) {
                out << "i x " << s.id;
                append_lits(out, s.xr.to_literals());
                append_ids(out, s.clause_hints);
            } else if constexpr (std::is_same_v<T, XorAdd>) {
                out << "x " << s.id;
                append_lits(out, s.xr.to_literals());
                append_ids(out, s.xor_hints);
            } else if constexpr (std::is_same_v<T, ClauseFromXors>) {
                out << "i " << s.id;
                append_lits(out, s.clause);
                append_ids(out, s.xor_hints);
            } else if constexpr (std::is_same_v<T, RupClause>) {
                out << s.id;
                append_lits(out, s.clause);
                append_ids(out, s.clause_hints);
            } else if constexpr (std::is_same_v<T, DeleteClauses>) {
                out << 'd';
                append_ids(out, s.ids);
            } else {
                out << "x d";
                append_ids(out, s.ids);
            }
        },
        step);
    return out.str();
}

std::string print_xlrup(const Proof& proof)
{
    std::string out;
    for (const auto& s : proof) {
        out += print_step(s);
        out += '\n';
    }
    return out;
}

Xor xor_sum(std::span<const Xor> xors)
{
    std::vector<Var> acc;
    bool rhs = false;
    for (const auto& x : xors) {
        std::vector<Var> merged;
        merged.reserve(acc.size() + x.vars.size());
        std::set_symmetric_difference(acc.begin(), acc.end(), x.vars.begin(), x.vars.end(),
                                      std::back_inserter(merged));
        acc = std::move(merged);
        rhs ^= x.rhs;
    }
    Xor out;
    out.vars = std::move(acc);
    out.rhs = rhs;
    return out;
}

// ---------------------------------------------------------------------------
// Packed XORs

PackedXor::PackedXor(const Xor& x, size_t num_vars) : words_(num_vars / 64 + 1, 0), rhs_(x.rhs)
{
    for (Var v : x.vars) words_[v / 64] ^= uint64_t{1} << (v % 64);
}

PackedXor& PackedXor::operator^=(const PackedXor& o)
{
    if (words_.size() < o.words_.size()) words_.resize(o.words_.size(), 0);
    for (size_t i = 0; i < o.words_.size(); i++) words_[i] ^= o.words_[i];
    rhs_ ^= o.rhs_;
    return *this;
}

Xor PackedXor::unpack() const
{
    Xor x;
    for_each_var([&](Var v) { x.vars.push_back(v); });
    x.rhs = rhs_;
    return x;
}

// ---------------------------------------------------------------------------
// Checking

ProofState::ProofState(const CnfXorFormula& f, CheckerConfig cfg)
    : num_vars_(f.num_vars), cfg_(cfg), vals_(f.num_vars + 1, 0)
{
    clauses_.reserve(f.clauses.size() * 2);
    for (size_t i = 0; i < f.clauses.size(); i++) clauses_.emplace(i + 1, f.clauses[i]);
    last_clause_id_ = f.clauses.size();
    for (const auto& x : f.xors) input_xors_.emplace(x.vars, x.rhs);
}

StepResult ProofState::check_range(std::span<const Lit> lits) const
{
    for (Lit l : lits) {
        if (l == 0 || lit_var(l) > num_vars_) return "literal " + std::to_string(l) + " out of range";
    }
    return std::nullopt;
}

StepResult ProofState::check_range(const Xor& xr) const
{
    for (Var v : xr.vars) {
        if (v == 0 || v > num_vars_) return "XOR variable " + std::to_string(v) + " out of range";
    }
    return std::nullopt;
}

StepResult ProofState::insert_clause(Id id, Clause c)
{
    if (id <= last_clause_id_) return "clause ID " + std::to_string(id) + " is not fresh";
    if (auto e = check_range(c)) return e;
    last_clause_id_ = id;
    if (c.empty()) empty_derived_ = true;
    clauses_.emplace(id, std::move(c));
    return std::nullopt;
}

StepResult ProofState::insert_xor(Id id, const Xor& xr)
{
    if (id <= last_xor_id_) return "XOR ID " + std::to_string(id) + " is not fresh";
    if (auto e = check_range(xr)) return e;
    last_xor_id_ = id;
    xors_.emplace(id, PackedXor(xr, num_vars_));
    return std::nullopt;
}

StepResult ProofState::check_rup(const Clause& clause, std::span<const Id> hints)
{
    if (auto e = check_range(clause)) return e;

    auto value = [&](Lit l) -> int {
        int v = vals_[lit_var(l)];
        return l > 0 ? v : -v;
    };
    auto assign_true = [&](Lit l) {
        vals_[lit_var(l)] = l > 0 ? 1 : -1;
        touched_.push_back(lit_var(l));
    };
    auto reset = [&]() {
        for (Var v : touched_) vals_[v] = 0;
        touched_.clear();
    };

    for (Lit l : clause) {
        int v = value(l);
        if (v > 0) {  // clause contains l and -l
            reset();
            return std::nullopt;
        }
        if (v == 0) assign_true(-l);
    }

    for (Id h : hints) {
        auto it = clauses_.find(h);
        if (it == clauses_.end()) {
            reset();
            return "hint " + std::to_string(h) + " is not a live clause";
        }
        Lit unit = 0;
        bool multiple = false;
        for (Lit l : it->second) {
            int v = value(l);
            if (v > 0) {
                reset();
                return "hint " + std::to_string(h) + " is satisfied";
            }
            if (v == 0) {
                if (unit == 0) unit = l;
                else if (unit != l) multiple = true;
            }
        }
        if (multiple) {
            reset();
            return "hint " + std::to_string(h) + " is neither unit nor falsified";
        }
        if (unit == 0) {
            reset();
            return std::nullopt;
        }
        assign_true(unit);
    }
    reset();
    return "hints exhausted without a conflict";
}

StepResult ProofState::check_xor_add(const Xor& xr, std::span<const Id> xor_hints) const
{
    if (auto e = check_range(xr)) return e;
    if (xor_hints.empty()) return "XOR addition without hints";
    PackedXor sum(Xor{}, num_vars_);
    for (Id h : xor_hints) {
        auto it = xors_.find(h);
        if (it == xors_.end()) return "hint " + std::to_string(h) + " is not a live XOR";
        sum ^= it->second;
    }
    if (!(sum == PackedXor(xr, num_vars_))) return "XOR is not the sum of its hints";
    return std::nullopt;
}

StepResult ProofState::check_clause_from_xors(const Clause& clause, std::span<const Id> xor_hints) const
{
    if (auto e = check_range(clause)) return e;
    if (xor_hints.empty()) return "clause implication without XOR hints";
    PackedXor sum(Xor{}, num_vars_);
    for (Id h : xor_hints) {
        auto it = xors_.find(h);
        if (it == xors_.end()) return "hint " + std::to_string(h) + " is not a live XOR";
        sum ^= it->second;
    }

    // Polarity of each clause variable: +1 positive only, -1 negative only.
    std::unordered_map<Var, int> polarity;
    for (Lit l : clause) {
        int p = l > 0 ? 1 : -1;
        auto [it, fresh] = polarity.emplace(lit_var(l), p);
        if (!fresh && it->second != p) return std::nullopt;  // tautology
    }

    // The single point falsifying the clause sets v true iff v occurs negatively.
    bool parity = false;
    std::optional<Var> stray;
    sum.for_each_var([&](Var v) {
        auto it = polarity.find(v);
        if (it == polarity.end()) {
            if (!stray) stray = v;
            return;
        }
        if (it->second < 0) parity = !parity;
    });
    if (stray) return "XOR variable " + std::to_string(*stray) + " does not occur in the clause";
    if (parity == sum.rhs()) return "the clause's falsifying point satisfies the XOR";
    return std::nullopt;
}

StepResult ProofState::check_xor_from_clauses(const Xor& xr, std::span<const Id> clause_hints) const
{
    if (auto e = check_range(xr)) return e;
    const size_t k = xr.vars.size();
    if (k > cfg_.xor_width_cap) {
        return "XOR width " + std::to_string(k) + " exceeds the cap of " + std::to_string(cfg_.xor_width_cap);
    }
    std::unordered_map<Var, size_t> index;
    for (size_t i = 0; i < k; i++) index.emplace(xr.vars[i], i);

    // A clause over the XOR's variables is falsified exactly at the points p
    // with (p & mask) == value.
    struct Cube {
        uint64_t mask;
        uint64_t value;
    };
    std::vector<Cube> cubes;
    for (Id h : clause_hints) {
        auto it = clauses_.find(h);
        if (it == clauses_.end()) return "hint " + std::to_string(h) + " is not a live clause";
        Cube c{0, 0};
        bool usable = true;
        for (Lit l : it->second) {
            auto pos = index.find(lit_var(l));
            if (pos == index.end()) {
                usable = false;
                break;
            }
            uint64_t bit = uint64_t{1} << pos->second;
            uint64_t want = l > 0 ? 0 : bit;
            if ((c.mask & bit) && (c.value & bit) != want) {
                usable = false;
                break;
            }
            c.mask |= bit;
            c.value |= want;
        }
        if (usable) cubes.push_back(c);
    }

    const uint64_t points = uint64_t{1} << k;
    for (uint64_t p = 0; p < points; p++) {
        bool parity = __builtin_popcountll(p) & 1;
        if (parity == xr.rhs) continue;
        bool covered = std::any_of(cubes.begin(), cubes.end(), [&](const Cube& c) { return (p & c.mask) == c.value; });
        if (!covered) return "falsifying point " + std::to_string(p) + " of the XOR is not excluded by the hints";
    }
    return std::nullopt;
}

StepResult ProofState::check_orig_xor(const Xor& xr) const
{
    if (!input_xors_.count({xr.vars, xr.rhs})) return "XOR does not occur in the input formula";
    return std::nullopt;
}

StepResult ProofState::apply(const Step& step)
{
    return std::visit(
        [&](const auto& s) -> StepResult {
            using T = std::decay_t<decltype(s)>;
            if constexpr (std::is_same_v<T, OrigXor>) {
                if (auto e = check_orig_xor(s.xr)) return e;
                return insert_xor(s.id, s.xr);
            } else if constexpr (std::is_same_v<T, XorFromClauses>) {
                if (s.id <= last_xor_id_) return "XOR ID " + std::to_string(s.id) + " is not fresh";
                if (auto e = check_xor_from_clauses(s.xr, s.clause_hints)) return e;
                return insert_xor(s.id, s.xr);
            } else if constexpr (std::is_same_v<T, XorAdd>) {
                if (s.id <= last_xor_id_) return "XOR ID " + std::to_string(s.id) + " is not fresh";
                if (auto e = check_xor_add(s.xr, s.xor_hints)) return e;
                return insert_xor(s.id, s.xr);
            } else if constexpr (std::is_same_v<T, ClauseFromXors>) {
                if (s.id <= last_clause_id_) return "clause ID " + std::to_string(s.id) + " is not fresh";
                if (auto e = check_clause_from_xors(s.clause, s.xor_hints)) return e;
                return insert_clause(s.id, s.clause);
            } else if constexpr (std::is_same_v<T, RupClause>) {
                if (s.id <= last_clause_id_) return "clause ID " + std::to_string(s.id) + " is not fresh";
                if (auto e = check_rup(s.clause, s.clause_hints)) return e;
                return insert_clause(s.id, s.clause);
            } else if constexpr (std::is_same_v<T, DeleteClauses>) {
                for (Id id : s.ids) {
                    if (clauses_.erase(id) == 0) return "deleted clause " + std::to_string(id) + " is not live";
                }
                return std::nullopt;
            } else {
                for (Id id : s.ids) {
                    if (xors_.erase(id) == 0) return "deleted XOR " + std::to_string(id) + " is not live";
                }
                return std::nullopt;
            }
        },
        step);
}

CheckOutcome check_proof(const CnfXorFormula& f, const Proof& proof, CheckerConfig cfg)
{
    ProofState state(f, cfg);
    for (size_t i = 0; i < proof.size(); i++) {
        if (auto err = state.apply(proof[i])) return CheckOutcome{false, i, *err};
    }
    if (!state.empty_derived()) return CheckOutcome{false, proof.size(), "no empty clause"};
    return CheckOutcome{true, proof.size(), ""};
}

}  // namespace amc::xlrup
