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

#include "qpigeon/abl.hpp"
#include "qpigeon/properties.hpp"
#include "qpigeon/readout.hpp"

using namespace qpigeon;

namespace {

// Independent count of particles in `box` for basis label `index`.
int count_in(const Basis& b, std::size_t index, int box) {
    int n = 0;
    for (int x : b.label(index)) n += x == box;
    return n;
}

}  // namespace

TEST(Properties, AblNormalization) {
    auto out = check_abl_normalization(kDefaultSeed, 500);
    EXPECT_TRUE(out.passed()) << out.first_failure;
    EXPECT_EQ(out.cases, 500u);
    EXPECT_EQ(out.witnesses, 500u);
}

TEST(Properties, Homogeneity) {
    auto out = check_homogeneity(kDefaultSeed, 500);
    EXPECT_TRUE(out.passed()) << out.first_failure;
}

TEST(Properties, DichotomicTheoremWithWitnesses) {
    auto out = check_dichotomic_theorem(kDefaultSeed, 1000);
    EXPECT_TRUE(out.passed()) << out.first_failure;
    EXPECT_GT(out.witnesses, 20u);
}

TEST(Properties, ExpansionIdentities) {
    auto out = check_expansion_identities(6);
    EXPECT_TRUE(out.passed()) << out.first_failure;
    EXPECT_GT(out.cases, 50u);
}

TEST(Properties, GeneratorIsSeeded) {
    std::mt19937_64 a(1), b(1);
    for (int k = 0; k < 20; ++k) {
        auto p = random_instance(a, 3);
        auto q = random_instance(b, 3);
        EXPECT_EQ(p.pre().amplitudes(), q.pre().amplitudes());
        EXPECT_EQ(random_dichotomic(a, p.domain()).descriptor(), random_dichotomic(b, q.domain()).descriptor());
    }
}

// Test-side oracle: the exactly-k count of a configuration decomposes by
// inclusion-exclusion over subsets, so P^{>K} = sum_{k>K} P^{=k}.
TEST(Properties, CountingIdentitiesByDirectCount) {
    for (int n = 1; n <= 7; ++n) {
        Domain d{Representation::kDistinguishable, n, 2};
        auto basis = Basis::distinguishable(n, 2);
        for (int box = 0; box < 2; ++box) {
            for (std::size_t i = 0; i < basis->size(); ++i) {
                int c = count_in(*basis, i, box);
                Rational above(0);
                for (int k = 1; k <= n; ++k) above += count_projector(d, box, Relation::kEqual, k).eigenvalue(*basis, i);
                EXPECT_EQ(count_projector(d, box, Relation::kGreater, 0).eigenvalue(*basis, i), above);
                EXPECT_EQ(above, c > 0 ? 1 : 0);
                Rational products(0);
                for (std::uint32_t s = 0; s < (1u << n); ++s) {
                    if (std::popcount(s) != c) continue;
                    Rational term(1);
                    for (int m = 0; m < n; ++m) {
                        int in = basis->label(i)[static_cast<std::size_t>(m)] == box;
                        term *= (s >> m) & 1u ? in : 1 - in;
                    }
                    products += term;
                }
                EXPECT_EQ(products, 1);
            }
        }
    }
}

// Random instances: a two-valued weak value equal to an eigenvalue always
// comes with the matching element of reality, checked with a direct
// element sum.
TEST(Properties, DichotomicTheoremDirect) {
    std::mt19937_64 engine(2024);
    int hits = 0;
    for (int trial = 0; trial < 400; ++trial) {
        auto pair = random_instance(engine, 3);
        auto obs = random_dichotomic(engine, pair.domain());
        const auto& basis = pair.pre().basis();
        auto spectrum = obs.spectrum(basis);
        if (spectrum.size() != 2) continue;
        for (const auto& c : spectrum) {
            Exact sel(0), rej(0);
            for (std::size_t k = 0; k < basis.size(); ++k) {
                Exact t = conj(pair.post().amplitude(k)) * pair.pre().amplitude(k);
                (obs.eigenvalue(basis, k) == c ? sel : rej) += t;
            }
            bool reality = !sel.is_zero() && rej.is_zero();
            EXPECT_EQ(weak_value(pair, obs) == Exact(c), reality) << obs.descriptor();
            hits += reality;
        }
    }
    EXPECT_GT(hits, 0);
}
