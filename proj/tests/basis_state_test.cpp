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

#include "qpigeon/state.hpp"

using namespace qpigeon;

TEST(Basis, LexicographicConfigurations) {
    auto configs = enumerate_configurations(2, 3);
    ASSERT_EQ(configs.size(), 9u);
    EXPECT_EQ(to_string(configs.front()), "AA");
    EXPECT_EQ(to_string(configs[1]), "AB");
    EXPECT_EQ(to_string(configs[3]), "BA");
    EXPECT_EQ(to_string(configs.back()), "CC");
    EXPECT_TRUE(std::is_sorted(configs.begin(), configs.end()));
}

TEST(Basis, ParseConfiguration) {
    EXPECT_EQ(parse_configuration("ABBA", 2).boxes, (std::vector<int>{0, 1, 1, 0}));
    EXPECT_ANY_THROW(parse_configuration("ABC", 2));
    EXPECT_ANY_THROW(parse_configuration("a", 2));
}

TEST(Basis, CheckedPower) {
    EXPECT_EQ(checked_power(2, 10), 1024u);
    EXPECT_EQ(checked_power(3, 0), 1u);
    EXPECT_FALSE(checked_power(2, 64).has_value());
    EXPECT_FALSE(checked_power(10, 30).has_value());
}

TEST(Basis, BudgetExceeded) {
    EXPECT_THROW(Basis::distinguishable(20, 2, 1000), ResourceLimit);
    EXPECT_THROW(Basis::distinguishable(70, 2), ResourceLimit);
    EXPECT_NO_THROW(Basis::distinguishable(10, 2, 1024));
}

TEST(Basis, FockSizeIsStarsAndBars) {
    // C(N + M - 1, M - 1)
    EXPECT_EQ(Basis::fock(2, 4)->size(), 5u);
    EXPECT_EQ(Basis::fock(3, 3)->size(), 10u);
    EXPECT_EQ(Basis::fock(4, 2)->size(), 10u);
    auto b = Basis::fock(2, 4);
    for (std::size_t k = 0; k < b->size(); ++k) {
        auto occ = b->occupancy_of(k);
        EXPECT_EQ(occ[0] + occ[1], 4);
        EXPECT_EQ(b->index_of(b->label(k)), k);
    }
}

TEST(Basis, OccupancyOfDistinguishableLabel) {
    auto b = Basis::distinguishable(3, 2);
    auto idx = b->index_of(parse_configuration("ABA", 2).boxes);
    ASSERT_TRUE(idx.has_value());
    EXPECT_EQ(b->occupancy_of(*idx), (Occupancy{2, 1}));
    EXPECT_EQ(b->label_string(*idx), "ABA");
}

TEST(State, RejectsAllZero) {
    EXPECT_THROW(make_state<Exact>(2, 2, std::map<std::string, Exact>{{"AA", Exact(0)}}), InvalidState);
}

TEST(State, RejectsBadKeys) {
    EXPECT_THROW(make_state<Exact>(2, 2, std::map<std::string, Exact>{{"AAA", Exact(1)}}), InvalidState);
    EXPECT_ANY_THROW(make_state<Exact>(2, 2, std::map<std::string, Exact>{{"AC", Exact(1)}}));
    EXPECT_THROW(make_fock_state<Exact>(2, {{{2, 0}, Exact(1)}, {{1, 0}, Exact(1)}}), InvalidState);
    EXPECT_THROW(make_fock_state<Exact>(2, {{{-1, 3}, Exact(1)}}), InvalidState);
}

TEST(State, NormAndScaling) {
    auto s = make_state<Exact>(2, 2, std::map<std::string, Exact>{{"AA", Exact(1, 1)}, {"BB", Exact(2)}});
    EXPECT_EQ(s.norm_squared(), Rational(6));
    EXPECT_EQ(s.scaled(Exact(0, 1)).norm_squared(), Rational(6));
    auto f = s.cast<Float>();
    EXPECT_DOUBLE_EQ(f.norm_squared(), 6.0);
}

TEST(State, InnerProductIsAntilinearInBra) {
    auto a = make_state<Exact>(1, 2, std::map<std::string, Exact>{{"A", Exact(0, 1)}});
    auto b = make_state<Exact>(1, 2, std::map<std::string, Exact>{{"A", Exact(1)}});
    EXPECT_EQ(inner_product(a, b), Exact(0, -1));
    EXPECT_EQ(inner_product(b, a), Exact(0, 1));
}

TEST(PrePost, OrthogonalPairThrows) {
    auto a = make_state<Exact>(1, 2, std::map<std::string, Exact>{{"A", Exact(1)}});
    auto b = make_state<Exact>(1, 2, std::map<std::string, Exact>{{"B", Exact(1)}});
    EXPECT_THROW(PrePost<Exact>(a, b), ZeroOverlap);
    EXPECT_THROW(PrePost<Float>(a.cast<Float>(), b.cast<Float>()), ZeroOverlap);
}

TEST(PrePost, DomainMismatchThrows) {
    auto a = make_state<Exact>(1, 2, std::map<std::string, Exact>{{"A", Exact(1)}});
    auto b = make_state<Exact>(2, 2, std::map<std::string, Exact>{{"AA", Exact(1)}});
    EXPECT_THROW(PrePost<Exact>(a, b), DomainMismatch);
    EXPECT_THROW(inner_product(a, b), DomainMismatch);
}

TEST(PrePost, CastKeepsOverlap) {
    auto pre = make_state<Exact>(2, 2, std::map<std::string, Exact>{{"AA", Exact(1)}, {"AB", Exact(0, 1)}});
    auto post = make_state<Exact>(2, 2, std::map<std::string, Exact>{{"AA", Exact(2)}, {"AB", Exact(1)}});
    PrePost<Exact> pair(pre, post, "x");
    auto f = pair.cast<Float>();
    EXPECT_EQ(pair.overlap(), Exact(2, 1));
    EXPECT_NEAR(std::abs(f.overlap() - Float(2, 1)), 0.0, 1e-15);
    EXPECT_EQ(f.name(), "x");
    EXPECT_EQ(pair.params().particles, 2);
}
