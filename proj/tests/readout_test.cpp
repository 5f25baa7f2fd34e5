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

#include <cmath>

#include "qpigeon/abl.hpp"
#include "qpigeon/readout.hpp"
#include "qpigeon/scenarios.hpp"

using namespace qpigeon;

namespace {

// pre = |AA> + |AB>, post = |AA> - 2|AB>: <post|P_same|pre> = 1 and
// <post|P_split|pre> = -2, so the parity weak value is -3.
PrePost<Exact> anomalous_pair() {
    return {make_state<Exact>(2, 2, std::map<std::string, Exact>{{"AA", 1}, {"AB", 1}}),
            make_state<Exact>(2, 2, std::map<std::string, Exact>{{"AA", 1}, {"AB", -2}})};
}

// Postselected pointer mean over the coupling for one dichotomic observable
// with branch elements a (+1) and b (-1), Gaussian pointer of spread s:
// (|a|^2 - |b|^2) / (|a|^2 + |b|^2 + 2 Re(a conj b) exp(-g^2 / 2 s^2)).
double closed_form_mean(std::complex<double> a, std::complex<double> b, double g, double s) {
    double cross = 2.0 * (a * std::conj(b)).real() * std::exp(-g * g / (2.0 * s * s));
    return (std::norm(a) - std::norm(b)) / (std::norm(a) + std::norm(b) + cross);
}

}  // namespace

TEST(Shots, EngineDependsOnlyOnSeedAndShot) {
    auto a = shot_engine(1, 5);
    auto b = shot_engine(1, 5);
    auto c = shot_engine(1, 6);
    auto d = shot_engine(2, 5);
    auto x = a();
    EXPECT_EQ(x, b());
    EXPECT_NE(x, c());
    EXPECT_NE(x, d());
    auto e = shot_engine(9, 0);
    for (int k = 0; k < 1000; ++k) {
        double u = uniform01(e);
        ASSERT_GE(u, 0.0);
        ASSERT_LT(u, 1.0);
    }
}

TEST(Pairs, Enumeration) {
    auto p = all_parity_pairs(4);
    ASSERT_EQ(p.size(), 6u);
    EXPECT_EQ(p.front(), (ParityPair{1, 2}));
    EXPECT_EQ(p.back(), (ParityPair{3, 4}));
    EXPECT_EQ(to_string(ParityPair{2, 3}), "parity(2,3)");
}

TEST(Strong, SameSeedSameRecords) {
    auto pair = separable_scenario(3).cast<Float>();
    auto r1 = strong_parity_run(pair, {1, 2}, 2000, 42, true);
    auto r2 = strong_parity_run(pair, {1, 2}, 2000, 42, true);
    auto r3 = strong_parity_run(pair, {1, 2}, 2000, 43, true);
    EXPECT_EQ(r1.records, r2.records);
    EXPECT_NE(r1.records, r3.records);
    ASSERT_EQ(r1.records.size(), 2000u);
    auto prefix = strong_parity_run(pair, {1, 2}, 500, 42, true);
    EXPECT_TRUE(std::equal(prefix.records.begin(), prefix.records.end(), r1.records.begin()));
}

TEST(Strong, ConditionalFrequencyMatchesAbl) {
    auto exact = anomalous_pair();
    Domain d{Representation::kDistinguishable, 2, 2};
    double p = abl_probability(exact, pair_parity(d, 1, 2), 1).probability.get_d();
    EXPECT_DOUBLE_EQ(p, 0.2);
    const std::uint64_t shots = 200000;
    auto run = strong_parity_run(exact.cast<Float>(), {1, 2}, shots, 7);
    EXPECT_DOUBLE_EQ(run.exact_conditional_plus, p);
    ASSERT_GT(run.postselected(), 0u);
    EXPECT_LE(std::abs(run.conditional_plus() - p), 4.0 / std::sqrt(double(shots)));
    EXPECT_EQ(run.prepared_plus + run.prepared_minus, shots);
}

TEST(Strong, SeparablePairNeverPostselectedTogether) {
    auto run = strong_parity_run(separable_scenario(3).cast<Float>(), {1, 3}, 50000, 3);
    EXPECT_EQ(run.postselected_plus, 0u);
    EXPECT_GT(run.postselected_minus, 0u);
    EXPECT_GT(run.prepared_plus, 0u);
    EXPECT_EQ(run.exact_conditional_plus, 0.0);
}

TEST(Strong, EntangledPairShowsPlus) {
    auto run = strong_parity_run(entangled_counterexample(3).cast<Float>(), {1, 2}, 20000, 3);
    EXPECT_GT(run.postselected_plus, 0u);
    EXPECT_EQ(run.postselected_minus, 0u);
}

TEST(Strong, RejectsBadInput) {
    auto pair = separable_scenario(3).cast<Float>();
    EXPECT_THROW(strong_parity_run(pair, {1, 1}, 10), std::invalid_argument);
    EXPECT_THROW(strong_parity_run(pair, {1, 4}, 10), std::invalid_argument);
    EXPECT_THROW(strong_parity_run(fock_four_pigeons().cast<Float>(), {1, 2}, 10), DomainMismatch);
}

TEST(Simultaneous, ImpossiblePatternsNeverOccur) {
    auto pair = separable_scenario(3).cast<Float>();
    auto run = simultaneous_parity_run(pair, all_parity_pairs(3), 50000, 11);
    for (const auto& [pattern, count] : run.prepared_counts) {
        ASSERT_EQ(pattern.size(), 3u);
        // s12 s13 s23 = +1 on every configuration of two boxes.
        EXPECT_EQ(pattern[0] * pattern[1] * pattern[2], 1) << to_string(pattern);
    }
    ParityPattern impossible = {-1, -1, -1};
    EXPECT_EQ(run.prepared_counts.count(impossible), 0u);
    auto it = run.exact_conditional.find(impossible);
    EXPECT_TRUE(it == run.exact_conditional.end() || it->second == 0.0);
    EXPECT_TRUE(run.nondeterministic(0.01));
    double total = 0.0;
    for (const auto& [pattern, p] : run.exact_conditional) total += p;
    EXPECT_NEAR(total, 1.0, 1e-12);
}

TEST(Simultaneous, FrequenciesTrackExactDistribution) {
    auto pair = separable_scenario(3).cast<Float>();
    const std::uint64_t shots = 100000;
    auto run = simultaneous_parity_run(pair, all_parity_pairs(3), shots, 5);
    auto freq = run.conditional();
    for (const auto& [pattern, p] : run.exact_conditional) {
        double f = freq.count(pattern) ? freq.at(pattern) : 0.0;
        EXPECT_LE(std::abs(f - p), 4.0 / std::sqrt(double(run.postselected))) << to_string(pattern);
    }
}

TEST(Simultaneous, EntangledIsDeterministic) {
    auto run = simultaneous_parity_run(entangled_counterexample(3).cast<Float>(), all_parity_pairs(3), 5000, 1);
    EXPECT_FALSE(run.nondeterministic(0.01));
    std::size_t seen = 0;
    for (const auto& [pattern, count] : run.postselected_counts) {
        if (count > 0) {
            ++seen;
            EXPECT_EQ(pattern, (ParityPattern{1, 1, 1}));
        }
    }
    EXPECT_EQ(seen, 1u);
}

TEST(Weak, QuadratureMatchesClosedForm) {
    auto pair = anomalous_pair().cast<Float>();
    for (double g : {0.3, 0.1, 0.03}) {
        PointerModel pointer;
        pointer.coupling = g;
        double oracle = closed_form_mean(1.0, -2.0, g, 1.0);
        EXPECT_NEAR(conditional_mean_over_coupling(pair, {{1, 2}}, pointer, 0), oracle, 1e-6) << g;
    }
}

TEST(Weak, BiasShrinksAsCouplingWeakens) {
    auto pair = anomalous_pair().cast<Float>();
    double previous = 1e9;
    for (double g : {0.3, 0.1, 0.03}) {
        double bias = std::abs(closed_form_mean(1.0, -2.0, g, 1.0) - (-3.0));
        EXPECT_LT(bias, previous) << g;
        previous = bias;
        PointerModel pointer;
        pointer.coupling = g;
        EXPECT_NEAR(std::abs(conditional_mean_over_coupling(pair, {{1, 2}}, pointer, 0) + 3.0), bias, 1e-6);
    }
    EXPECT_LT(previous, 0.01);
}

TEST(Weak, SampledMeanMatchesClosedForm) {
    auto pair = anomalous_pair().cast<Float>();
    PointerModel pointer;
    pointer.coupling = 0.3;
    auto run = weak_parity_run(pair, {{1, 2}}, pointer, 40000, 17);
    ASSERT_EQ(run.estimates.size(), 1u);
    double oracle = closed_form_mean(1.0, -2.0, 0.3, 1.0);
    EXPECT_NEAR(run.expected[0], oracle, 1e-6);
    EXPECT_LE(std::abs(run.estimates[0] - oracle), 5.0 * run.standard_errors[0]);
    EXPECT_GT(run.postselection_probability, 0.0);
    EXPECT_LE(run.postselection_probability, 1.0);
}

TEST(Weak, SeparableParitiesReadMinusOne) {
    auto pair = separable_scenario(3).cast<Float>();
    PointerModel pointer;
    pointer.coupling = 0.1;
    auto run = weak_parity_run(pair, all_parity_pairs(3), pointer, 20000, 23);
    for (std::size_t k = 0; k < run.estimates.size(); ++k) {
        EXPECT_NEAR(run.estimates[k], -1.0, 0.15) << k;
        EXPECT_NEAR(run.estimates[k], run.expected[k], 5.0 * run.standard_errors[k]) << k;
    }
    EXPECT_TRUE(run.warnings.empty());
}

TEST(Weak, Reproducible) {
    auto pair = separable_scenario(3).cast<Float>();
    PointerModel pointer;
    auto a = weak_parity_run(pair, {{1, 2}, {2, 3}}, pointer, 300, 99, true);
    auto b = weak_parity_run(pair, {{1, 2}, {2, 3}}, pointer, 300, 99, true);
    EXPECT_EQ(a.records, b.records);
    EXPECT_EQ(a.estimates, b.estimates);
}

TEST(Weak, StrongCouplingWarnsAndBadPointerThrows) {
    auto pair = separable_scenario(3).cast<Float>();
    PointerModel strong;
    strong.coupling = 0.5;
    EXPECT_FALSE(weak_parity_run(pair, {{1, 2}}, strong, 100, 1).warnings.empty());
    PointerModel bad;
    bad.spread = 0.0;
    EXPECT_THROW(weak_parity_run(pair, {{1, 2}}, bad, 10, 1), std::invalid_argument);
    EXPECT_THROW(weak_parity_run(pair, {}, PointerModel{}, 10, 1), std::invalid_argument);
    EXPECT_THROW(conditional_mean_over_coupling(pair, {{1, 2}}, PointerModel{}, 3), std::out_of_range);
}
