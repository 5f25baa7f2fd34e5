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
#include "qpigeon/properties.hpp"
#include "qpigeon/scenarios.hpp"
#include "qpigeon/trace.hpp"

using namespace qpigeon;

namespace {

Rational factorial(int n) {
    Rational f(1);
    for (int k = 2; k <= n; ++k) f *= k;
    return f;
}

// Taylor coefficient of eps^p in cos(a eps) or sin(a eps).
Exact trig_coefficient(bool is_cos, int a, int p) {
    if ((p % 2 == 0) != is_cos) return Exact(0);
    Rational c(1);
    for (int k = 0; k < p; ++k) c *= a;
    c /= factorial(p);
    int quarter = is_cos ? p / 2 : (p - 1) / 2;
    return Exact(quarter % 2 ? Rational(-c) : c);
}

EnvCoupling single_mode_twice() {
    EnvCoupling env;
    env.particles = 1;
    env.boxes = 2;
    env.mode_labels = {"m"};
    env.couplings = {{1, 0, 0}, {1, 0, 0}};
    return env;
}

}  // namespace

TEST(EpsSeries, TrigCoefficients) {
    auto c = EpsSeries::cos_series(8);
    auto s = EpsSeries::sin_series(8);
    for (int p = 0; p <= 8; ++p) {
        EXPECT_EQ(c.coefficient(p), trig_coefficient(true, 1, p)) << p;
        EXPECT_EQ(s.coefficient(p), trig_coefficient(false, 1, p)) << p;
    }
}

TEST(EpsSeries, PythagoreanIdentity) {
    auto c = EpsSeries::cos_series(10);
    auto s = EpsSeries::sin_series(10);
    EXPECT_EQ(c * c + s * s, EpsSeries(Exact(1), 10));
}

TEST(EpsSeries, DoubleAngleComposition) {
    auto c = EpsSeries::cos_series(9);
    auto s = EpsSeries::sin_series(9);
    auto c2 = c * c - s * s;
    auto s2 = (s * c) * Exact(2);
    for (int p = 0; p <= 9; ++p) {
        EXPECT_EQ(c2.coefficient(p), trig_coefficient(true, 2, p)) << p;
        EXPECT_EQ(s2.coefficient(p), trig_coefficient(false, 2, p)) << p;
    }
}

TEST(EpsSeries, LeadingOrderAndTruncation) {
    EpsSeries z(4);
    EXPECT_TRUE(z.is_zero());
    EXPECT_FALSE(z.leading_order().has_value());
    z.set_coefficient(3, Exact(0, 2));
    EXPECT_EQ(z.leading_order(), 3);
    auto sq = z * z;
    EXPECT_TRUE(sq.is_zero());
    EXPECT_NEAR(std::abs(z.evaluate(0.1) - Float(0, 2e-3)), 0.0, 1e-15);
    EXPECT_ANY_THROW(z.set_coefficient(5, Exact(1)));
}

TEST(Evolution, RepeatedCouplingIsDoubleAngleRotation) {
    auto pre = make_state<Float>(1, 2, std::map<std::string, Float>{{"A", 1.0}, {"B", 1.0}});
    for (double eps : {0.3, 0.01}) {
        auto joint = evolve_with_environment(pre, single_mode_twice(), FloatBackend{eps});
        auto idx_a = *pre.basis().index_of(std::vector<int>{0});
        auto idx_b = *pre.basis().index_of(std::vector<int>{1});
        EXPECT_NEAR(std::abs(joint.mode(idx_a, 0).ground - std::cos(2 * eps)), 0.0, 1e-15);
        EXPECT_NEAR(std::abs(joint.mode(idx_a, 0).excited - std::sin(2 * eps)), 0.0, 1e-15);
        EXPECT_NEAR(std::abs(joint.mode(idx_b, 0).ground - 1.0), 0.0, 1e-15);
        EXPECT_NEAR(std::abs(joint.mode(idx_b, 0).excited), 0.0, 1e-15);
    }
    auto exact = evolve_with_environment(make_state<Exact>(1, 2, std::map<std::string, Exact>{{"A", 1}}),
                                         single_mode_twice(), SeriesBackend{7});
    for (int p = 0; p <= 7; ++p) {
        EXPECT_EQ(exact.mode(0, 0).ground.coefficient(p), trig_coefficient(true, 2, p));
        EXPECT_EQ(exact.mode(0, 0).excited.coefficient(p), trig_coefficient(false, 2, p));
    }
}

TEST(Evolution, PreservesNorm) {
    for (const auto& pair : {separable_scenario(3), four_pigeons(), no_pair_scenario(4)}) {
        auto f = pair.cast<Float>();
        for (double eps : {0.5, 0.01}) {
            auto joint = evolve_with_environment(f.pre(), default_couplings(pair.domain().particles, 2),
                                                 FloatBackend{eps});
            EXPECT_NEAR(joint.norm_squared(), f.pre().norm_squared(), 1e-12 * f.pre().norm_squared());
        }
        auto nonlocal = evolve_with_environment(f.pre(), nonlocal_parity_couplings(pair.domain().particles, 1, 2),
                                                FloatBackend{0.2});
        EXPECT_NEAR(nonlocal.norm_squared(), f.pre().norm_squared(), 1e-12 * f.pre().norm_squared());
    }
}

TEST(Evolution, ZerothOrderIsOverlap) {
    std::mt19937_64 engine(3);
    for (int trial = 0; trial < 40; ++trial) {
        auto pair = random_instance(engine, 4);
        int n = pair.domain().particles;
        auto env = postselect_environment(
            evolve_with_environment(pair.pre(), default_couplings(n, 2), SeriesBackend{4}), pair.post());
        EXPECT_EQ(env.amplitude(0).coefficient(0), pair.overlap());
        for (const auto& [mask, series] : env.amplitudes) {
            if (mask != 0) {
                EXPECT_EQ(series.coefficient(0), Exact(0));
                // Every excited mode costs at least one power of eps.
                EXPECT_GE(series.leading_order().value_or(99), std::popcount(mask));
            }
        }
    }
}

TEST(Evolution, NonlocalPairSecondOrderIsSameBoxElement) {
    std::mt19937_64 engine(5);
    for (int trial = 0; trial < 60; ++trial) {
        auto pair = random_instance(engine, 4);
        int n = pair.domain().particles;
        if (n < 2) continue;
        auto coupling = nonlocal_parity_couplings(n, 1, 2);
        auto env = postselect_environment(evolve_with_environment(pair.pre(), coupling, SeriesBackend{4}),
                                          pair.post());
        Exact same(0);
        const auto& basis = pair.pre().basis();
        for (std::size_t k = 0; k < basis.size(); ++k) {
            auto label = basis.label(k);
            if (label[0] == label[1]) same += conj(pair.post().amplitude(k)) * pair.pre().amplitude(k);
        }
        auto both = env.amplitude(parse_mask(coupling, "{I,II}"));
        EXPECT_EQ(both.coefficient(1), Exact(0));
        EXPECT_EQ(both.coefficient(2), same);
    }
}

TEST(Evolution, FloatMatchesSeries) {
    auto pair = no_pair_scenario(4);
    auto env = default_couplings(4, 2);
    auto exact = postselect_environment(evolve_with_environment(pair.pre(), env, SeriesBackend{8}), pair.post());
    auto f = pair.cast<Float>();
    const double eps = 1e-2;
    auto flt = postselect_environment(evolve_with_environment(f.pre(), env, FloatBackend{eps}), f.post());
    for (const auto& [mask, series] : exact.amplitudes) {
        EXPECT_NEAR(std::abs(series.evaluate(eps) - flt.amplitude(mask)), 0.0, 1e-12) << mask_to_string(env, mask);
    }
}

TEST(Orders, FourPigeonPairs) {
    auto pair = four_pigeons();
    auto env = default_couplings(4, 2);
    auto flat = trace_order(pair, env, parse_mask(env, "{1A,2A}"));
    EXPECT_TRUE(flat.vanishes);
    EXPECT_EQ(flat.order, 5);
    auto cross = trace_order(pair, env, parse_mask(env, "{1A,3A}"));
    EXPECT_FALSE(cross.vanishes);
    EXPECT_EQ(cross.order, 2);
    std::vector<double> grid = {1e-2, 1e-3};
    auto f = pair.cast<Float>();
    EXPECT_TRUE(leading_order_float(f, env, parse_mask(env, "{1A,2A}"), grid).vanishes);
    auto fit = leading_order_float(f, env, parse_mask(env, "{1A,3A}"), grid);
    EXPECT_EQ(fit.order, 2);
    EXPECT_LT(fit.residual, kOrderSlopeTolerance);
}

TEST(Orders, SeparableNonlocalPair) {
    auto env = nonlocal_parity_couplings(3, 1, 2);
    auto mask = parse_mask(env, "{I,II}");
    EXPECT_TRUE(trace_order(separable_scenario(3), env, mask).vanishes);
    auto ent = trace_order(entangled_counterexample(3), env, mask);
    EXPECT_FALSE(ent.vanishes);
    EXPECT_EQ(ent.order, 2);
}

TEST(Orders, NoPairLocalPairsVanish) {
    std::vector<int> coupled = {1, 2};
    auto env = local_couplings(4, 2, coupled);
    EXPECT_EQ(env.mode_labels, (std::vector<std::string>{"1A", "1B", "2A", "2B"}));
    auto pair = no_pair_scenario(4);
    EXPECT_TRUE(trace_order(pair, env, parse_mask(env, "{1A,2A}")).vanishes);
    EXPECT_TRUE(trace_order(pair, env, parse_mask(env, "{1B,2B}")).vanishes);
}

TEST(OrderFit, RecoversPowerLaw) {
    std::vector<double> eps = {1e-2, 1e-3, 1e-4};
    for (int p = 1; p <= 4; ++p) {
        std::vector<double> mags;
        for (double e : eps) mags.push_back(3.0 * std::pow(e, p));
        auto fit = fit_leading_order(eps, mags, 1e-300);
        EXPECT_FALSE(fit.vanishes);
        EXPECT_EQ(fit.order, p);
        EXPECT_NEAR(fit.slope, p, 1e-9);
    }
}

TEST(OrderFit, ErrorPaths) {
    std::vector<double> eps = {1e-2, 1e-3};
    std::vector<double> mixed = {1e-4, 0.0};
    EXPECT_ANY_THROW(fit_leading_order(eps, mixed, 1e-12));
    std::vector<double> one = {1.0};
    EXPECT_ANY_THROW(fit_leading_order(std::span<const double>(one), std::span<const double>(one), 0.0));
    std::vector<double> flat = {1e-2, 1e-2};
    std::vector<double> mags = {1.0, 1.0};
    EXPECT_ANY_THROW(fit_leading_order(flat, mags, 0.0));
}

TEST(Masks, RoundTripAndErrors) {
    auto env = default_couplings(3, 2);
    for (const char* text : {"{}", "{1A}", "{1A,2B}", "{1B,2A,3B}"}) {
        EXPECT_EQ(mask_to_string(env, parse_mask(env, text)), text);
    }
    EXPECT_THROW(parse_mask(env, "{4A}"), ConfigError);
    auto nl = nonlocal_parity_couplings(3, 1, 3);
    EXPECT_EQ(mask_to_string(nl, parse_mask(nl, "{II,I}")), "{I,II}");
}

TEST(Couplings, SignaturesCountDrives) {
    auto nl = nonlocal_parity_couplings(2, 1, 2);
    EXPECT_EQ(excitation_signature(nl, std::vector<int>{0, 0}), (std::vector<int>{1, 1}));
    EXPECT_EQ(excitation_signature(nl, std::vector<int>{1, 1}), (std::vector<int>{1, 1}));
    auto split = excitation_signature(nl, std::vector<int>{0, 1});
    EXPECT_EQ(split[0] + split[1], 2);
    EXPECT_TRUE(split[0] == 0 || split[1] == 0);
}

TEST(Couplings, DomainChecks) {
    auto pair = four_pigeons();
    EXPECT_THROW(evolve_with_environment(pair.pre(), default_couplings(3, 2), SeriesBackend{4}), DomainMismatch);
    auto fock = fock_four_pigeons();
    EXPECT_THROW(evolve_with_environment(fock.pre(), default_couplings(4, 2), SeriesBackend{4}), DomainMismatch);
}
