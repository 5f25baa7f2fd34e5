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

#ifndef QPIGEON_RUNNER_HPP
#define QPIGEON_RUNNER_HPP

#include <string>
#include <vector>

#include "qpigeon/config.hpp"
#include "qpigeon/report.hpp"
#include "qpigeon/scenarios.hpp"
#include "qpigeon/state.hpp"
#include "qpigeon/trace.hpp"

namespace qpigeon {

/// Stable process exit codes.
inline constexpr int kExitPass = 0;
inline constexpr int kExitClaimFailure = 1;
inline constexpr int kExitConfigError = 2;

/// Tolerance for float values compared against exact rationals.
inline constexpr double kCrossBackendTolerance = 1e-12;

inline constexpr std::uint64_t kDefaultShots = 100000;

/// Scenario registry as a report: one info record per constructor with its
/// parameter range and anchor.
Report list_scenarios();

/// Resolves a registry reference (with overrides) or inline states.
/// Impossible parameters throw ImpossibleScenario with the reason.
PrePost<Exact> build_scenario(const ScenarioRef& ref);

/// Real rational from text such as "-3/2"; ConfigError on bad syntax or a
/// nonzero imaginary part.
Rational parse_real(const std::string& text);

/// One ABL / element-of-reality / weak-value claim on the chosen backends.
/// With Backend::kBoth the float value must also agree with the exact one.
CheckRecord evaluate_claim(const PrePost<Exact>& pair, const ExpectedClaim& claim, Backend backend,
                           const std::string& id);

struct TraceRequest {
    EnvCoupling env;
    std::string mask;
    /// "zero" or a decimal order; empty for report-only.
    std::string expected;
    int truncation = 4;
    std::vector<double> eps_grid = {1e-2, 1e-3};
};

CheckRecord evaluate_trace(const PrePost<Exact>& pair, const TraceRequest& request, Backend backend,
                           const std::string& id);

/// Builds the couplings named in a trace check for the scenario domain.
EnvCoupling couplings_for(const CheckConfig& check, const Domain& domain);

/// Executes every check of the config in order. Configuration problems throw
/// (ConfigError, ImpossibleScenario, DomainMismatch, NotFound, std::invalid_argument).
Report run(const RunConfig& config);

}  // namespace qpigeon

#endif  // QPIGEON_RUNNER_HPP
