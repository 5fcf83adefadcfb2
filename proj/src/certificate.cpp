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

#include "amc/certificate.hpp"

#include <charconv>
#include <fstream>
#include <sstream>

namespace amc {

namespace {

struct Record {
    size_t line_no;
    std::vector<long long> ints;

    bool is_scalar() const { return ints.size() == 1; }
};

std::vector<Record> tokenize(std::string_view text)
{
    std::vector<Record> out;
    size_t line_no = 0;
    size_t pos = 0;
    while (pos <= text.size()) {
        size_t nl = text.find('\n', pos);
        if (nl == std::string_view::npos) nl = text.size();
        std::string_view line = text.substr(pos, nl - pos);
        pos = nl + 1;
        line_no++;
        if (auto c = line.find("//"); c != std::string_view::npos) line = line.substr(0, c);

        Record r{line_no, {}};
        size_t i = 0;
        while (i < line.size()) {
            while (i < line.size() && std::isspace(static_cast<unsigned char>(line[i]))) i++;
            size_t j = i;
            while (j < line.size() && !std::isspace(static_cast<unsigned char>(line[j]))) j++;
            if (j > i) {
                long long v = 0;
                auto [ptr, ec] = std::from_chars(line.data() + i, line.data() + j, v);
                if (ec != std::errc() || ptr != line.data() + j) {
                    throw CertificateParseError("line " + std::to_string(line_no) + ": expected integer, found '"
                                                + std::string(line.substr(i, j - i)) + "'");
                }
                r.ints.push_back(v);
            }
            i = j;
        }
        if (!r.ints.empty()) out.push_back(std::move(r));
    }
    return out;
}

class Reader {
public:
    Reader(std::vector<Record> recs, size_t num_vars) : recs_(std::move(recs)), num_vars_(num_vars) {}

    bool done() const { return pos_ >= recs_.size(); }

    uint64_t scalar(const char* what)
    {
        if (done()) throw CertificateParseError(std::string("unexpected end of certificate, expected ") + what);
        const auto& r = recs_[pos_];
        if (!r.is_scalar()) {
            throw CertificateParseError("line " + std::to_string(r.line_no) + ": expected " + what
                                        + ", found a solution line");
        }
        if (r.ints[0] < 0) throw CertificateParseError("line " + std::to_string(r.line_no) + ": negative " + what);
        pos_++;
        return static_cast<uint64_t>(r.ints[0]);
    }

    std::vector<Assignment> solutions()
    {
        const size_t count_line = done() ? 0 : recs_[pos_].line_no;
        uint64_t n = scalar("solution count");
        std::vector<Assignment> out;
        out.reserve(n);
        for (uint64_t k = 0; k < n; k++) {
            if (done() || recs_[pos_].is_scalar()) {
                throw CertificateParseError("line " + std::to_string(count_line) + ": count/line mismatch, "
                                            + std::to_string(n) + " solutions announced but " + std::to_string(k)
                                            + " listed");
            }
            const auto& r = recs_[pos_++];
            if (r.ints.back() != 0) {
                throw CertificateParseError("line " + std::to_string(r.line_no) + ": solution missing 0 terminator");
            }
            std::vector<Lit> lits;
            for (size_t i = 0; i + 1 < r.ints.size(); i++) {
                if (r.ints[i] == 0 || r.ints[i] > INT32_MAX || r.ints[i] < -INT32_MAX) {
                    throw CertificateParseError("line " + std::to_string(r.line_no) + ": bad literal");
                }
                lits.push_back(static_cast<Lit>(r.ints[i]));
            }
            try {
                out.push_back(Assignment::from_literals(lits, num_vars_));
            } catch (const FormulaError& e) {
                throw CertificateParseError("line " + std::to_string(r.line_no) + ": " + e.what());
            }
        }
        return out;
    }

private:
    std::vector<Record> recs_;
    size_t num_vars_;
    size_t pos_ = 0;
};

void print_list(std::ostringstream& out, const std::vector<Assignment>& models)
{
    out << models.size() << '\n';
    for (const auto& w : models) {
        for (Lit l : w.to_literals()) out << l << ' ';
        out << "0\n";
    }
}

}  // namespace

std::string print_certificate(const Certificate& cert)
{
    std::ostringstream out;
    out << cert.m0 << '\n';
    print_list(out, cert.init_models);
    for (const auto& r : cert.rounds) {
        out << r.m << '\n';
        print_list(out, r.list_lo);
        if (r.list_hi) print_list(out, *r.list_hi);
    }
    return out.str();
}

Certificate parse_certificate(std::string_view text, size_t num_vars, size_t proj_size)
{
    Reader rd(tokenize(text), num_vars);
    Certificate cert;
    cert.m0 = rd.scalar("m0");
    cert.init_models = rd.solutions();
    while (!rd.done()) {
        CertRound r;
        r.m = rd.scalar("round value of m");
        r.list_lo = rd.solutions();
        if (r.m < proj_size) r.list_hi = rd.solutions();
        cert.rounds.push_back(std::move(r));
    }
    return cert;
}

Certificate read_certificate_file(const std::string& path, size_t num_vars, size_t proj_size)
{
    std::ifstream in(path, std::ios::binary);
    if (!in) throw CertificateParseError("cannot open certificate '" + path + "'");
    std::stringstream ss;
    ss << in.rdbuf();
    return parse_certificate(ss.str(), num_vars, proj_size);
}

}  // namespace amc
