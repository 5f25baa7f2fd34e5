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

#ifndef QPIGEON_SCENARIOS_HPP
#define QPIGEON_SCENARIOS_HPP

#include <functional>
#include <string>
#include <vector>

#include "qpigeon/state.hpp"

namespace qpigeon {

// Every constructor builds Gaussian-integer amplitude tables; use
// PrePost::cast<Float>() for the floating-point backend.

/// Four particles, two boxes: pre {AAAA, AABB, BBBB}, post with the middle
/// sign flipped.
PrePost<Exact> four_pigeons();

/// pre = |A..A> + |A^{K+1} B^{N-K-1}> + |B..B>, post with the middle sign
/// flipped. Boxes beyond B stay empty. Throws ImpossibleScenario for
/// N = 2K+1 with two boxes and for N = 1, K = 0.
PrePost<Exact> nk_scenario(int particles, int threshold, int boxes);

/// Fock version of four_pigeons: occupancies (4,0), (2,2), (0,4).
PrePost<Exact> fock_four_pigeons();

/// pre = prod(|A> - i|B>) + prod(|B> - i|A>), post = prod(|A> + |B>). N >= 3.
PrePost<Exact> no_pair_scenario(int particles);

/// pre = prod(|A> + |B>), post = prod(|A> + i|B>). N >= 3.
PrePost<Exact> separable_scenario(int particles);

/// pre = |A..A> + |B..B>, post = |A..A> + i|B..B>. N >= 2.
PrePost<Exact> entangled_counterexample(int particles);

/// One claim a scenario is expected to satisfy.
struct ExpectedClaim {
    enum class Kind { kAbl, kReality, kWeakValue };
    Kind kind = Kind::kAbl;
    std::string observable;
    /// Eigenvalue c for kAbl / kReality; unused for kWeakValue.
    std::string eigenvalue = "1";
    /// Rational probability, "true"/"false", or a complex rational.
    std::string expected;

    friend bool operator==(const ExpectedClaim&, const ExpectedClaim&) = default;
};

const char* to_string(ExpectedClaim::Kind kind);
ExpectedClaim::Kind parse_claim_kind(const std::string& text);

struct ScenarioSpec {
    std::string name;
    ScenarioParams params;
    Representation representation = Representation::kDistinguishable;
    std::vector<ExpectedClaim> claims;

    friend bool operator==(const ScenarioSpec&, const ScenarioSpec&) = default;
};

struct ScenarioInfo {
    std::string name;
    /// Short description of the construction this entry reproduces.
    std::string anchor;
    /// Human-readable validity region of the parameters.
    std::string parameter_range;
    ScenarioParams default_params;
    Representation representation;
    std::function<PrePost<Exact>(const ScenarioParams&)> build;
    std::function<std::vector<ExpectedClaim>(const ScenarioParams&)> claims;
};

/// All six scenario constructors, in a fixed order.
const std::vector<ScenarioInfo>& scenario_registry();

/// Throws NotFound for unknown names.
const ScenarioInfo& find_scenario(const std::string& name);

/// Spec for a registry entry with its default or given parameters.
ScenarioSpec scenario_spec(const std::string& name);
ScenarioSpec scenario_spec(const std::string& name, const ScenarioParams& params);

}  // namespace qpigeon

#endif  // QPIGEON_SCENARIOS_HPP
