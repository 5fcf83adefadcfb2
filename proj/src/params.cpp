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

#include "amc/params.hpp"

#include <algorithm>
#include <cctype>
#include <string>
#include <vector>

namespace amc {

namespace {

BigInt pow10(uint64_t e)
{
    BigInt r = 1;
    for (uint64_t i = 0; i < e; i++) r *= 10;
    return r;
}

BigInt ceil_div(const Rational& q)
{
    BigInt n = boost::multiprecision::numerator(q);
    BigInt d = boost::multiprecision::denominator(q);
    BigInt quot = n / d;
    if (quot * d != n && n > 0) quot += 1;
    return quot;
}

// Caps t for pathological delta values.
constexpr uint64_t kMaxRounds = 1u << 16;

}  // namespace

Rational parse_decimal(std::string_view text)
{
    auto fail = [&]() { return ParamError("not a decimal number: '" + std::string(text) + "'"); };
    if (text.empty()) throw fail();

    if (auto slash = text.find('/'); slash != std::string_view::npos) {
        Rational num = parse_decimal(text.substr(0, slash));
        Rational den = parse_decimal(text.substr(slash + 1));
        if (den == 0) throw fail();
        return num / den;
    }

    size_t i = 0;
    bool neg = false;
    if (text[i] == '+' || text[i] == '-') {
        neg = text[i] == '-';
        i++;
    }
    BigInt mant = 0;
    uint64_t frac_digits = 0;
    bool any_digit = false;
    bool in_frac = false;
    for (; i < text.size(); i++) {
        char c = text[i];
        if (std::isdigit(static_cast<unsigned char>(c))) {
            mant = mant * 10 + (c - '0');
            any_digit = true;
            if (in_frac) frac_digits++;
        } else if (c == '.' && !in_frac) {
            in_frac = true;
        } else {
            break;
        }
    }
    if (!any_digit) throw fail();

    long long exp = 0;
    if (i < text.size()) {
        if (text[i] != 'e' && text[i] != 'E') throw fail();
        i++;
        bool eneg = false;
        if (i < text.size() && (text[i] == '+' || text[i] == '-')) {
            eneg = text[i] == '-';
            i++;
        }
        if (i >= text.size()) throw fail();
        for (; i < text.size(); i++) {
            if (!std::isdigit(static_cast<unsigned char>(text[i]))) throw fail();
            exp = exp * 10 + (text[i] - '0');
            if (exp > 1000) throw fail();
        }
        if (eneg) exp = -exp;
    }

    long long scale = exp - static_cast<long long>(frac_digits);
    Rational r = scale >= 0 ? Rational(mant * pow10(static_cast<uint64_t>(scale)))
                            : Rational(mant, pow10(static_cast<uint64_t>(-scale)));
    return neg ? Rational(-r) : r;
}

PacParams make_params(const Rational& epsilon, const Rational& delta, uint64_t min_rounds)
{
    if (epsilon <= 0) throw ParamError("epsilon must be positive");
    if (delta <= 0 || delta > 1) throw ParamError("delta must lie in (0, 1]");
    if (min_rounds == 0) throw ParamError("minimum number of rounds must be positive");
    return PacParams{epsilon, delta, min_rounds};
}

uint64_t compute_thresh(const Rational& epsilon)
{
    if (epsilon <= 0) throw ParamError("epsilon must be positive");
    const Rational one = 1;
    Rational inv = one + one / epsilon;
    Rational value = Rational(984, 100) * (one + epsilon / (one + epsilon)) * inv * inv;
    BigInt c = ceil_div(value);
    if (c >= BigInt(std::numeric_limits<uint64_t>::max() - 1)) throw ParamError("epsilon too small");
    return static_cast<uint64_t>(c) + 1;
}

Rational binomial_tail(uint64_t t, uint64_t k, const Rational& p)
{
    if (k > t) return 0;
    const Rational q = Rational(1) - p;
    // Powers of p and q up to t, then C(t, i) incrementally.
    std::vector<Rational> ppow(t + 1), qpow(t + 1);
    ppow[0] = 1;
    qpow[0] = 1;
    for (uint64_t i = 1; i <= t; i++) {
        ppow[i] = ppow[i - 1] * p;
        qpow[i] = qpow[i - 1] * q;
    }
    Rational sum = 0;
    BigInt binom = 1;  // C(t, 0)
    for (uint64_t i = 0; i <= t; i++) {
        if (i > 0) binom = binom * (t - i + 1) / i;
        if (i >= k) sum += Rational(binom) * ppow[i] * qpow[t - i];
    }
    return sum;
}

uint64_t compute_t(const Rational& delta, uint64_t min_rounds)
{
    if (delta <= 0 || delta > 1) throw ParamError("delta must lie in (0, 1]");
    if (min_rounds == 0) throw ParamError("minimum number of rounds must be positive");
    const Rational p = round_failure_bound();
    uint64_t t = min_rounds % 2 == 1 ? min_rounds : min_rounds + 1;
    for (; t <= kMaxRounds; t += 2) {
        if (binomial_tail(t, (t + 1) / 2, p) <= delta) return t;
    }
    throw ParamError("delta too small: more than " + std::to_string(kMaxRounds) + " rounds needed");
}

uint64_t find_median(std::span<const uint64_t> values)
{
    if (values.empty()) throw std::invalid_argument("median of an empty list");
    std::vector<uint64_t> sorted(values.begin(), values.end());
    std::sort(sorted.begin(), sorted.end());
    return sorted[sorted.size() / 2];
}

}  // namespace amc
