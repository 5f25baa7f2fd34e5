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

#include "qpigeon/reproduce.hpp"
#include "qpigeon/scenarios.hpp"

using namespace qpigeon;

namespace {

ReproduceOptions quick() {
    ReproduceOptions o;
    o.shots = 40000;
    o.property_cases = 200;
    return o;
}

bool depends_on(const CheckRecord& r, const std::string& scenario) {
    if (!r.data.contains("depends_on")) return false;
    for (const auto& name : r.data["depends_on"]) {
        if (name == scenario) return true;
    }
    return false;
}

}  // namespace

TEST(Reproduce, AllCriteriaPass) {
    auto report = reproduce_paper(quick());
    auto verdicts = criterion_verdicts(report);
    ASSERT_EQ(verdicts.size(), 9u);
    for (const auto& [criterion, ok] : verdicts) EXPECT_TRUE(ok) << "criterion " << criterion;
    EXPECT_EQ(report.exit_code(), 0);
    for (const auto& r : report.records) {
        EXPECT_TRUE(r.data.contains("criterion")) << r.id;
        EXPECT_NE(r.verdict, Verdict::kInfo) << r.id;
    }
}

TEST(Reproduce, FlippedMiddleSignBreaksOnlyFourPigeonClaims) {
    auto o = quick();
    o.flip_four_pigeon_middle_sign = true;
    auto report = reproduce_paper(o);
    EXPECT_EQ(report.exit_code(), 1);
    std::size_t failed = 0;
    for (const auto& r : report.records) {
        if (r.verdict != Verdict::kFail) continue;
        ++failed;
        EXPECT_TRUE(depends_on(r, "four_pigeons")) << r.id << " " << r.subject;
    }
    EXPECT_GT(failed, 0u);
    for (const auto& r : report.records) {
        int c = r.data["criterion"].get<int>();
        if (c == 1 || c == 3) {
            EXPECT_EQ(r.verdict, Verdict::kFail) << r.id << " " << r.subject;
        }
    }
    auto verdicts = criterion_verdicts(report);
    for (int c : {2, 4, 5, 7, 8, 9}) EXPECT_TRUE(verdicts[c]) << "criterion " << c;
    EXPECT_FALSE(verdicts[1]);
    EXPECT_FALSE(verdicts[3]);
}

TEST(Reproduce, FlippedPairMatchesPreselection) {
    auto flipped = four_pigeons_flipped_middle_sign();
    EXPECT_EQ(flipped.pre().amplitudes(), flipped.post().amplitudes());
    EXPECT_EQ(flipped.pre().amplitudes(), four_pigeons().pre().amplitudes());
}

TEST(Reproduce, TitlesCoverEveryCriterion) {
    const auto& titles = criterion_titles();
    ASSERT_EQ(titles.size(), 9u);
    for (int c = 1; c <= 9; ++c) EXPECT_FALSE(titles.at(c).empty());
}
