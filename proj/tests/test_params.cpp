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

#include "amc/params.hpp"

using namespace amc;

TEST(ParseDecimal, ExactForms)
{
    EXPECT_EQ(parse_decimal("0.8"), Rational(4, 5));
    EXPECT_EQ(parse_decimal("1"), Rational(1));
    EXPECT_EQ(parse_decimal("2.5e-1"), Rational(1, 4));
    EXPECT_EQ(parse_decimal("1E2"), Rational(100));
    EXPECT_EQ(parse_decimal("3/4"), Rational(3, 4));
    EXPECT_EQ(parse_decimal(".5"), Rational(1, 2));
    EXPECT_EQ(parse_decimal("0.1"), Rational(1, 10));
}

TEST(ParseDecimal, Malformed)
{
    for (const char* bad : {"", "abc", "1.2.3", "1/0", "1e", "0x10", "1 "}) {
        EXPECT_THROW(parse_decimal(bad), ParamError) << bad;
    }
}

TEST(MakeParams, Ranges)
{
    EXPECT_NO_THROW(make_params(Rational(4, 5), Rational(1, 5)));
    EXPECT_NO_THROW(make_params(Rational(1), Rational(1)));
    EXPECT_THROW(make_params(Rational(0), Rational(1, 5)), ParamError);
    EXPECT_THROW(make_params(Rational(-1), Rational(1, 5)), ParamError);
    EXPECT_THROW(make_params(Rational(1), Rational(0)), ParamError);
    EXPECT_THROW(make_params(Rational(1), Rational(3, 2)), ParamError);
    EXPECT_THROW(make_params(Rational(1), Rational(1, 2), 0), ParamError);
}

TEST(Thresh, KnownValues)
{
    EXPECT_EQ(compute_thresh(parse_decimal("0.8")), 73u);
    EXPECT_EQ(compute_thresh(Rational(1)), 61u);
    EXPECT_EQ(compute_thresh(Rational(3)), 32u);
    // Frozen from an exact-fraction evaluation outside this code base.
    EXPECT_EQ(compute_thresh(parse_decimal("0.5")), 120u);
    EXPECT_EQ(compute_thresh(Rational(2)), 38u);
    EXPECT_EQ(compute_thresh(parse_decimal("0.1")), 1300u);
}

TEST(Thresh, NonIncreasingInEpsilon)
{
    uint64_t prev = UINT64_MAX;
    for (int i = 1; i <= 200; i++) {
        uint64_t th = compute_thresh(Rational(i, 20));
        EXPECT_LE(th, prev) << i;
        prev = th;
    }
}

TEST(Thresh, RejectsNonPositive)
{
    EXPECT_THROW(compute_thresh(Rational(0)), ParamError);
}

TEST(BinomialTail, Examples)
{
    const Rational p(9, 25);
    EXPECT_EQ(binomial_tail(1, 1, p), p);
    EXPECT_EQ(binomial_tail(2, 0, Rational(1, 3)), Rational(1));
    EXPECT_EQ(binomial_tail(5, 3, p), Rational(2450169, 9765625));
    EXPECT_GT(binomial_tail(5, 3, p), Rational(1, 4));
}

TEST(RoundCount, KnownValues)
{
    EXPECT_EQ(compute_t(parse_decimal("0.2")), 9u);
    EXPECT_EQ(compute_t(parse_decimal("0.5")), 1u);
    EXPECT_EQ(compute_t(parse_decimal("0.25")), 7u);
    EXPECT_EQ(compute_t(parse_decimal("0.1")), 21u);
    EXPECT_EQ(compute_t(parse_decimal("0.05")), 33u);
    EXPECT_EQ(compute_t(parse_decimal("0.01")), 67u);
    EXPECT_EQ(compute_t(parse_decimal("0.001")), 117u);
    EXPECT_EQ(compute_t(Rational(1)), 1u);
}

TEST(RoundCount, MinRounds)
{
    EXPECT_EQ(compute_t(parse_decimal("0.2"), 10), 11u);
    EXPECT_EQ(compute_t(parse_decimal("0.2"), 4), 9u);
    EXPECT_EQ(compute_t(parse_decimal("0.5"), 3), 3u);
}

TEST(RoundCount, OddMonotoneAndMinimal)
{
    const Rational p = round_failure_bound();
    uint64_t prev = 0;
    for (int i = 1000; i >= 1; i -= 7) {
        Rational delta(i, 1000);
        uint64_t t = compute_t(delta);
        EXPECT_EQ(t % 2, 1u);
        EXPECT_GE(t, prev);
        prev = t;
        EXPECT_LE(binomial_tail(t, (t + 1) / 2, p), delta);
        if (t > 1) EXPECT_GT(binomial_tail(t - 2, (t - 1) / 2, p), delta);
    }
}

TEST(RoundCount, RejectsOutOfRange)
{
    EXPECT_THROW(compute_t(Rational(0)), ParamError);
    EXPECT_THROW(compute_t(Rational(2)), ParamError);
}

TEST(Median, Examples)
{
    std::vector<uint64_t> a{204, 128, 256};
    EXPECT_EQ(find_median(a), 204u);
    std::vector<uint64_t> b{5};
    EXPECT_EQ(find_median(b), 5u);
    std::vector<uint64_t> c{90, 10, 80, 20, 70, 30, 60, 40, 50};
    EXPECT_EQ(find_median(c), 50u);
    std::vector<uint64_t> d{4, 1, 3, 2};
    EXPECT_EQ(find_median(d), 3u);
    EXPECT_THROW(find_median(std::vector<uint64_t>{}), std::invalid_argument);
}
