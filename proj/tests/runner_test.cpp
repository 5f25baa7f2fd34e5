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

#include "qpigeon/config.hpp"
#include "qpigeon/runner.hpp"
#include "qpigeon/scenarios.hpp"

using namespace qpigeon;

namespace {

RunConfig config_for(const std::string& scenario, std::vector<CheckConfig> checks, Backend backend = Backend::kBoth) {
    RunConfig c;
    c.scenario.name = scenario;
    c.backend = backend;
    c.checks = std::move(checks);
    return c;
}

CheckConfig check(CheckKind kind, std::string observable = "", std::optional<std::string> expected = {}) {
    CheckConfig c;
    c.kind = kind;
    c.observable = std::move(observable);
    c.expected = std::move(expected);
    return c;
}

}  // namespace

TEST(Runner, RegistryClaimsPass) {
    for (const auto& info : scenario_registry()) {
        auto report = run(config_for(info.name, {check(CheckKind::kClaims)}));
        EXPECT_EQ(report.exit_code(), kExitPass) << info.name;
        EXPECT_FALSE(report.records.empty()) << info.name;
    }
}

TEST(Runner, WrongExpectationExitsOne) {
    auto report = run(config_for("four_pigeons", {check(CheckKind::kAbl, "count(A,>,1)", "1/2")}));
    EXPECT_EQ(report.exit_code(), kExitClaimFailure);
    EXPECT_EQ(report.failures(), 1u);
    auto ok = run(config_for("four_pigeons", {check(CheckKind::kAbl, "count(A,>,1)", "0")}));
    EXPECT_EQ(ok.exit_code(), kExitPass);
}

TEST(Runner, ReportOnlyChecksAreInfo) {
    auto report = run(config_for("separable_scenario", {check(CheckKind::kWeakValue, "sigma_z(2)")}));
    ASSERT_EQ(report.records.size(), 1u);
    EXPECT_EQ(report.records[0].verdict, Verdict::kInfo);
    EXPECT_EQ(report.records[0].value, "i");
    EXPECT_EQ(report.exit_code(), kExitPass);
}

TEST(Runner, ConfigurationProblemsThrow) {
    RunConfig impossible = config_for("nk_scenario", {check(CheckKind::kClaims)});
    impossible.scenario.particles = 3;
    impossible.scenario.threshold = 1;
    impossible.scenario.boxes = 2;
    EXPECT_THROW(run(impossible), ImpossibleScenario);
    EXPECT_THROW(run(config_for("seven_pigeons", {check(CheckKind::kClaims)})), NotFound);
    EXPECT_THROW(run(config_for("four_pigeons", {check(CheckKind::kAbl, "count(Z,>,1)", "0")})), ConfigError);
    CheckConfig trace = check(CheckKind::kTrace);
    EXPECT_THROW(run(config_for("fock_four_pigeons", {trace})), DomainMismatch);
}

TEST(Runner, TraceChecks) {
    CheckConfig t = check(CheckKind::kTrace, "", "zero");
    t.couplings = "nonlocal";
    t.particles = {1, 2};
    t.masks = {"{I,II}"};
    EXPECT_EQ(run(config_for("separable_scenario", {t})).exit_code(), kExitPass);
    EXPECT_EQ(run(config_for("entangled_counterexample", {t})).exit_code(), kExitClaimFailure);
    t.expected = "2";
    EXPECT_EQ(run(config_for("entangled_counterexample", {t})).exit_code(), kExitPass);
    CheckConfig table = check(CheckKind::kTrace);
    auto full = run(config_for("four_pigeons", {table}, Backend::kExact));
    EXPECT_GT(full.records.size(), 4u);
}

TEST(Runner, CrossBackendRecordsCarryBothValues) {
    auto report = run(config_for("no_pair_scenario", {check(CheckKind::kAbl, "subset({1,2,3},A)", "1/26")}));
    ASSERT_EQ(report.records.size(), 1u);
    EXPECT_EQ(report.records[0].verdict, Verdict::kPass);
    const auto& data = report.records[0].data;
    EXPECT_TRUE(data.contains("exact"));
    EXPECT_TRUE(data.contains("float"));
}

TEST(Runner, EvaluateClaimFlagsWrongValue) {
    auto pair = separable_scenario(3);
    ExpectedClaim claim{ExpectedClaim::Kind::kWeakValue, "parity(1,2)", "", "1"};
    EXPECT_EQ(evaluate_claim(pair, claim, Backend::kExact, "a").verdict, Verdict::kFail);
    claim.expected = "-1";
    EXPECT_EQ(evaluate_claim(pair, claim, Backend::kFloat, "b").verdict, Verdict::kPass);
}

TEST(Runner, InlineScenarios) {
    ScenarioRef ref;
    ref.name = "inline";
    ref.boxes = 2;
    ref.pre = {{"AA", "1"}, {"BB", "1"}};
    ref.post = {{"AA", "1"}, {"BB", "i"}};
    auto pair = build_scenario(ref);
    EXPECT_EQ(pair.domain().particles, 2);
    EXPECT_EQ(pair.overlap(), Exact(1, -1));
    ScenarioRef fock = ref;
    fock.representation = Representation::kFock;
    fock.pre = {{"2,0", "1"}, {"0,2", "1"}};
    fock.post = {{"2,0", "1"}, {"1,1", "1"}};
    EXPECT_EQ(build_scenario(fock).domain().representation, Representation::kFock);
    ScenarioRef orthogonal = ref;
    orthogonal.post = {{"AB", "1"}};
    EXPECT_THROW(build_scenario(orthogonal), ZeroOverlap);
    ScenarioRef garbage = ref;
    garbage.pre = {{"AA", "one"}};
    EXPECT_ANY_THROW(build_scenario(garbage));
}

TEST(Runner, ReadoutChecks) {
    CheckConfig strong = check(CheckKind::kStrongReadout, "", "no_plus");
    strong.shots = 20000;
    CheckConfig joint = check(CheckKind::kSimultaneousReadout, "", "nondeterministic");
    joint.shots = 20000;
    auto report = run(config_for("separable_scenario", {strong, joint}, Backend::kFloat));
    EXPECT_EQ(report.exit_code(), kExitPass);
    strong.expected = "plus_present";
    EXPECT_EQ(run(config_for("separable_scenario", {strong}, Backend::kFloat)).exit_code(), kExitClaimFailure);
    EXPECT_EQ(run(config_for("entangled_counterexample", {strong}, Backend::kFloat)).exit_code(), kExitPass);
}

TEST(Runner, SameSeedSameReport) {
    CheckConfig weak = check(CheckKind::kWeakReadout, "", "-1");
    weak.shots = 2000;
    weak.pairs = {{1, 2}};
    auto a = run(config_for("separable_scenario", {weak}, Backend::kFloat));
    auto b = run(config_for("separable_scenario", {weak}, Backend::kFloat));
    ASSERT_EQ(a.records.size(), b.records.size());
    for (std::size_t k = 0; k < a.records.size(); ++k) {
        EXPECT_EQ(a.records[k].value, b.records[k].value);
        EXPECT_EQ(a.records[k].data, b.records[k].data);
    }
}

TEST(Runner, ParseReal) {
    EXPECT_EQ(parse_real("-3/2"), Rational(-3, 2));
    EXPECT_THROW(parse_real("1+i"), ConfigError);
    EXPECT_THROW(parse_real("x"), ConfigError);
}

TEST(Runner, ListScenarios) {
    auto report = list_scenarios();
    EXPECT_EQ(report.records.size(), scenario_registry().size());
    for (const auto& r : report.records) EXPECT_EQ(r.verdict, Verdict::kInfo);
}

TEST(Report, StructuredRendering) {
    auto report = run(config_for("four_pigeons", {check(CheckKind::kAbl, "count(A,<=,1)", "1")}));
    auto doc = nlohmann::json::parse(render_structured(report));
    EXPECT_EQ(doc["schema"], kReportSchema);
    EXPECT_EQ(doc["records"][0]["verdict"], "PASS");
    EXPECT_EQ(rational_json(Rational(-1, 3)), (nlohmann::ordered_json{{"num", -1}, {"den", 3}}));
    std::string text = render_text(report);
    EXPECT_NE(text.find("count(A,<=,1)"), std::string::npos);
}
