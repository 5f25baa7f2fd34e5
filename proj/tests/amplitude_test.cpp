// Copyright 2026 The qpigeon Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include <gtest/gtest.h>

#include "qpigeon/amplitude.hpp"

using namespace qpigeon;

TEST(GaussianRational, Arithmetic) {
    Exact a(Rational(1, 2), Rational(-3, 4));
    Exact b(2, 1);
    EXPECT_EQ(a + b, Exact(Rational(5, 2), Rational(1, 4)));
    EXPECT_EQ(a * b, Exact(Rational(7, 4), Rational(-1)));
    EXPECT_EQ((a * b) / b, a);
    EXPECT_EQ(Exact::i() * Exact::i(), Exact(-1));
    EXPECT_EQ(conj(a), Exact(Rational(1, 2), Rational(3, 4)));
    EXPECT_EQ(abs2(Exact(3, 4)), Rational(25));
    EXPECT_TRUE(Exact().is_zero());
    EXPECT_FALSE(Exact(0, 1).is_zero());
}

TEST(GaussianRational, DivisionByZeroThrows) { EXPECT_ANY_THROW(Exact(1) / Exact(0)); }

TEST(GaussianRational, Pow) {
    EXPECT_EQ(pow(Exact(1, 1), 2), Exact(0, 2));
    EXPECT_EQ(pow(Exact(0, 1), 4), Exact(1));
    EXPECT_EQ(pow(Exact(2), -2), Exact(Rational(1, 4)));
    EXPECT_EQ(pow(Exact(5, 7), 0), Exact(1));
}

TEST(GaussianRational, ExactSqrt) {
    EXPECT_EQ(exact_sqrt(Rational(9, 4)), Rational(3, 2));
    EXPECT_EQ(exact_sqrt(Rational(0)), Rational(0));
    EXPECT_FALSE(exact_sqrt(Rational(2)).has_value());
    EXPECT_FALSE(exact_sqrt(Rational(1, 3)).has_value());
}

TEST(GaussianRational, TextForms) {
    EXPECT_EQ(to_string(Exact(0)), "0");
    EXPECT_EQ(to_string(Exact(Rational(1, 3))), "1/3");
    EXPECT_EQ(to_string(Exact(0, -1)), "-i");
    EXPECT_EQ(to_string(Exact(Rational(1, 2), Rational(-3, 4))), "1/2-3/4i");
}

TEST(GaussianRational, ParseRoundTrip) {
    for (const auto& z : {Exact(0), Exact(1), Exact(-1), Exact(0, 1), Exact(0, -1), Exact(Rational(-1, 2), 1),
                          Exact(Rational(5, 3), Rational(-7, 9)), Exact(12345678901LL, -3)}) {
        EXPECT_EQ(parse_gaussian(to_string(z)), z) << to_string(z);
    }
    EXPECT_EQ(parse_gaussian("i"), Exact(0, 1));
    EXPECT_EQ(parse_gaussian("-1/2+i"), Exact(Rational(-1, 2), 1));
    EXPECT_EQ(parse_gaussian("2i"), Exact(0, 2));
}

TEST(GaussianRational, ParseRejectsGarbage) {
    for (const char* bad : {"", "x", "1/0", "1+", "i2", "1//2", "1.5"}) {
        EXPECT_ANY_THROW(parse_gaussian(bad)) << bad;
    }
}

TEST(GaussianRational, FloatConversion) {
    Float z = to_float(Exact(Rational(1, 4), Rational(-1, 8)));
    EXPECT_DOUBLE_EQ(z.real(), 0.25);
    EXPECT_DOUBLE_EQ(z.imag(), -0.125);
}

TEST(GaussianRational, EigenMatrixProducts) {
    Eigen::Matrix<Exact, 2, 2> m;
    m << Exact(1), Exact(0, 1), Exact(0, -1), Exact(1);
    Eigen::Matrix<Exact, 2, 1> v(Exact(1), Exact(0, -1));
    Eigen::Matrix<Exact, 2, 1> r = m * v;
    EXPECT_EQ(r[0], Exact(2));
    EXPECT_EQ(r[1], Exact(0, -2));
}
