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

#include "qpigeon/scenarios.hpp"

#include <array>

#include "qpigeon/errors.hpp"

namespace qpigeon {

namespace {

using Vec = AmplitudeVector<Exact>;

Vec zeros(const Basis& basis) { return Vec::Constant(static_cast<Eigen::Index>(basis.size()), Exact(0)); }

/// Dense expansion of prod_n (factors[A] |A>_n + factors[B] |B>_n + ...).
Vec product_state(const Basis& basis, const std::vector<Exact>& factors) {
    Vec out(static_cast<Eigen::Index>(basis.size()));
    for (std::size_t k = 0; k < basis.size(); ++k) {
        Exact amp(1);
        for (int b : basis.label(k)) {
            amp *= factors[static_cast<std::size_t>(b)];
            if (amp.is_zero()) {
                break;
            }
        }
        out[static_cast<Eigen::Index>(k)] = amp;
    }
    return out;
}

void add_at(Vec& v, const Basis& basis, const std::vector<int>& label, const Exact& value) {
    v[static_cast<Eigen::Index>(*basis.index_of(label))] += value;
}

void require_min_particles(int particles, int minimum, const char* name) {
    if (particles < minimum) {
        throw std::invalid_argument(std::string(name) + " needs at least " + std::to_string(minimum) +
                                    " particles, got " + std::to_string(particles));
    }
}

ScenarioParams nk_params(int n, int k, int m) { return {n, k, m}; }
ScenarioParams n_params(int n) { return {n, -1, 2}; }

std::vector<std::pair<int, int>> all_pairs(int n) {
    std::vector<std::pair<int, int>> out;
    for (int j = 1; j <= n; ++j) {
        for (int k = j + 1; k <= n; ++k) {
            out.emplace_back(j, k);
        }
    }
    return out;
}

std::vector<std::array<int, 3>> all_triples(int n) {
    std::vector<std::array<int, 3>> out;
    for (int j = 1; j <= n; ++j) {
        for (int k = j + 1; k <= n; ++k) {
            for (int l = k + 1; l <= n; ++l) {
                out.push_back({j, k, l});
            }
        }
    }
    return out;
}

std::string set_text(std::initializer_list<int> ps) {
    std::string s = "{";
    bool first = true;
    for (int p : ps) {
        s += (first ? "" : ",") + std::to_string(p);
        first = false;
    }
    return s + "}";
}

using Kind = ExpectedClaim::Kind;

std::vector<ExpectedClaim> counting_claims(int boxes, int threshold, int particles) {
    std::vector<ExpectedClaim> out;
    for (int x = 0; x < boxes; ++x) {
        std::string box(1, box_letter(x));
        out.push_back({Kind::kReality, "count(" + box + ",<=," + std::to_string(threshold) + ")", "1", "true"});
        out.push_back({Kind::kAbl, "count(" + box + ",<=," + std::to_string(threshold) + ")", "1", "1"});
        if (threshold == 1 && particles == 4 && boxes == 2) {
            out.push_back({Kind::kReality, "count(" + box + ",=,0)", "1", "true"});
            out.push_back({Kind::kAbl, "count(" + box + ",=,0)", "1", "1"});
            out.push_back({Kind::kReality, "count(" + box + ",=,4)", "1", "true"});
            out.push_back({Kind::kAbl, "count(" + box + ",=,4)", "1", "1"});
        }
    }
    return out;
}

std::vector<ExpectedClaim> no_pair_claims(const ScenarioParams& p) {
    std::vector<ExpectedClaim> out;
    for (auto [j, k] : all_pairs(p.particles)) {
        for (int x = 0; x < 2; ++x) {
            std::string obs = "subset(" + set_text({j, k}) + "," + box_letter(x) + ")";
            out.push_back({Kind::kAbl, obs, "1", "0"});
            out.push_back({Kind::kWeakValue, obs, "", "0"});
        }
    }
    for (auto [j, k, l] : all_triples(p.particles)) {
        for (int x = 0; x < 2; ++x) {
            out.push_back({Kind::kAbl, "subset(" + set_text({j, k, l}) + "," + box_letter(x) + ")", "1", "1/26"});
        }
    }
    return out;
}

std::vector<ExpectedClaim> separable_claims(const ScenarioParams& p) {
    std::vector<ExpectedClaim> out;
    for (int n = 1; n <= p.particles; ++n) {
        out.push_back({Kind::kWeakValue, "sigma_z(" + std::to_string(n) + ")", "", "i"});
    }
    for (auto [j, k] : all_pairs(p.particles)) {
        out.push_back({Kind::kReality, "same(" + set_text({j, k}) + ")", "0", "true"});
        out.push_back({Kind::kAbl, "same(" + set_text({j, k}) + ")", "1", "0"});
        out.push_back({Kind::kWeakValue, "parity(" + std::to_string(j) + "," + std::to_string(k) + ")", "", "-1"});
    }
    for (auto [j, k, l] : all_triples(p.particles)) {
        out.push_back({Kind::kAbl, "same(" + set_text({j, k, l}) + ")", "1", "1/10"});
    }
    return out;
}

std::vector<ExpectedClaim> entangled_claims(const ScenarioParams& p) {
    std::vector<ExpectedClaim> out;
    for (int n = 1; n <= p.particles; ++n) {
        out.push_back({Kind::kWeakValue, "sigma_z(" + std::to_string(n) + ")", "", "i"});
    }
    for (auto [j, k] : all_pairs(p.particles)) {
        out.push_back({Kind::kWeakValue, "parity(" + std::to_string(j) + "," + std::to_string(k) + ")", "", "1"});
        out.push_back({Kind::kReality, "same(" + set_text({j, k}) + ")", "0", "false"});
    }
    return out;
}

}  // namespace

PrePost<Exact> nk_scenario(int particles, int threshold, int boxes) {
    if (boxes < 2) {
        throw std::invalid_argument("need at least two boxes");
    }
    if (particles < 1 || threshold < 0) {
        throw std::invalid_argument("need N >= 1 and K >= 0");
    }
    if (particles == 1 && threshold == 0) {
        throw ImpossibleScenario(
            "N=1, K=0 is the only exception: a single particle cannot be kept out of every box");
    }
    if (boxes == 2 && particles == 2 * threshold + 1) {
        throw ImpossibleScenario("N=2K+1 with two boxes is impossible: P>K_A + P>K_B is the identity, so no "
                                 "pre/postselection makes both vanish (N=" +
                                 std::to_string(particles) + ", K=" + std::to_string(threshold) + ")");
    }
    if (threshold + 1 > particles) {
        throw std::invalid_argument("K+1 must not exceed N for the middle term A^{K+1} B^{N-K-1}");
    }
    auto basis = Basis::distinguishable(particles, boxes);
    std::vector<int> all_a(static_cast<std::size_t>(particles), 0);
    std::vector<int> all_b(static_cast<std::size_t>(particles), 1);
    std::vector<int> middle(static_cast<std::size_t>(particles), 1);
    for (int n = 0; n <= threshold; ++n) {
        middle[static_cast<std::size_t>(n)] = 0;
    }
    Vec pre = zeros(*basis);
    Vec post = zeros(*basis);
    add_at(pre, *basis, all_a, 1);
    add_at(pre, *basis, middle, 1);
    add_at(pre, *basis, all_b, 1);
    add_at(post, *basis, all_a, 1);
    add_at(post, *basis, middle, -1);
    add_at(post, *basis, all_b, 1);
    return {State<Exact>(basis, std::move(pre)), State<Exact>(basis, std::move(post)), "nk_scenario",
            nk_params(particles, threshold, boxes)};
}

PrePost<Exact> four_pigeons() {
    auto nk = nk_scenario(4, 1, 2);
    return {nk.pre(), nk.post(), "four_pigeons", nk_params(4, 1, 2)};
}

PrePost<Exact> fock_four_pigeons() {
    auto pre = make_fock_state<Exact>(2, {{{4, 0}, 1}, {{2, 2}, 1}, {{0, 4}, 1}});
    auto post = make_fock_state<Exact>(2, {{{4, 0}, 1}, {{2, 2}, -1}, {{0, 4}, 1}});
    return {std::move(pre), std::move(post), "fock_four_pigeons", nk_params(4, 1, 2)};
}

PrePost<Exact> no_pair_scenario(int particles) {
    require_min_particles(particles, 3, "no_pair_scenario");
    auto basis = Basis::distinguishable(particles, 2);
    Vec pre = product_state(*basis, {Exact(1), Exact(0, -1)}) + product_state(*basis, {Exact(0, -1), Exact(1)});
    Vec post = product_state(*basis, {Exact(1), Exact(1)});
    return {State<Exact>(basis, std::move(pre)), State<Exact>(basis, std::move(post)), "no_pair_scenario",
            n_params(particles)};
}

PrePost<Exact> separable_scenario(int particles) {
    require_min_particles(particles, 3, "separable_scenario");
    auto basis = Basis::distinguishable(particles, 2);
    Vec pre = product_state(*basis, {Exact(1), Exact(1)});
    Vec post = product_state(*basis, {Exact(1), Exact(0, 1)});
    return {State<Exact>(basis, std::move(pre)), State<Exact>(basis, std::move(post)), "separable_scenario",
            n_params(particles)};
}

PrePost<Exact> entangled_counterexample(int particles) {
    require_min_particles(particles, 2, "entangled_counterexample");
    auto basis = Basis::distinguishable(particles, 2);
    std::vector<int> up(static_cast<std::size_t>(particles), 0);
    std::vector<int> down(static_cast<std::size_t>(particles), 1);
    Vec pre = zeros(*basis);
    Vec post = zeros(*basis);
    add_at(pre, *basis, up, 1);
    add_at(pre, *basis, down, 1);
    add_at(post, *basis, up, 1);
    add_at(post, *basis, down, Exact(0, 1));
    return {State<Exact>(basis, std::move(pre)), State<Exact>(basis, std::move(post)), "entangled_counterexample",
            n_params(particles)};
}

const char* to_string(ExpectedClaim::Kind kind) {
    switch (kind) {
        case Kind::kAbl:
            return "abl";
        case Kind::kReality:
            return "element_of_reality";
        case Kind::kWeakValue:
            return "weak_value";
    }
    return "?";
}

ExpectedClaim::Kind parse_claim_kind(const std::string& text) {
    if (text == "abl") {
        return Kind::kAbl;
    }
    if (text == "element_of_reality") {
        return Kind::kReality;
    }
    if (text == "weak_value") {
        return Kind::kWeakValue;
    }
    throw ConfigError("unknown claim kind '" + text + "' (expected abl, element_of_reality, weak_value)");
}

const std::vector<ScenarioInfo>& scenario_registry() {
    static const std::vector<ScenarioInfo> registry = {
        {"four_pigeons", "four particles in two boxes: |AAAA>+|AABB>+|BBBB> postselected with the middle sign flipped",
         "fixed N=4, K=1, M=2", nk_params(4, 1, 2), Representation::kDistinguishable,
         [](const ScenarioParams&) { return four_pigeons(); },
         [](const ScenarioParams&) { return counting_claims(2, 1, 4); }},
        {"nk_scenario", "N particles, at most K per box: |A..A>+|A^{K+1}B^{N-K-1}>+|B..B>, middle sign flipped",
         "N>=1, K>=0, M>=2, K+1<=N; rejects N=2K+1 when M=2 and (N=1,K=0)", nk_params(6, 2, 2),
         Representation::kDistinguishable,
         [](const ScenarioParams& p) { return nk_scenario(p.particles, p.threshold, p.boxes); },
         [](const ScenarioParams& p) {
             // Certainty for every box holds once the middle term overfills box B as well.
             return p.particles >= 2 * p.threshold + 2 ? counting_claims(p.boxes, p.threshold, p.particles)
                                                        : std::vector<ExpectedClaim>{};
         }},
        {"fock_four_pigeons", "indistinguishable four-pigeon pair over occupancies (4,0),(2,2),(0,4)",
         "fixed N=4, M=2", nk_params(4, 1, 2), Representation::kFock,
         [](const ScenarioParams&) { return fock_four_pigeons(); },
         [](const ScenarioParams&) { return counting_claims(2, 1, 4); }},
        {"no_pair_scenario", "no pair shares a box: prod(|A>-i|B>)+prod(|B>-i|A>) postselected on prod(|A>+|B>)",
         "N>=3, M=2", n_params(4), Representation::kDistinguishable,
         [](const ScenarioParams& p) { return no_pair_scenario(p.particles); }, no_pair_claims},
        {"separable_scenario", "unentangled pair: prod(|A>+|B>) postselected on prod(|A>+i|B>)", "N>=3, M=2",
         n_params(3), Representation::kDistinguishable,
         [](const ScenarioParams& p) { return separable_scenario(p.particles); }, separable_claims},
        {"entangled_counterexample", "GHZ-type pair |A..A>+|B..B> postselected on |A..A>+i|B..B>", "N>=2, M=2",
         n_params(3), Representation::kDistinguishable,
         [](const ScenarioParams& p) { return entangled_counterexample(p.particles); }, entangled_claims},
    };
    return registry;
}

const ScenarioInfo& find_scenario(const std::string& name) {
    for (const auto& info : scenario_registry()) {
        if (info.name == name) {
            return info;
        }
    }
    throw NotFound("no scenario named '" + name + "'");
}

ScenarioSpec scenario_spec(const std::string& name) {
    return scenario_spec(name, find_scenario(name).default_params);
}

ScenarioSpec scenario_spec(const std::string& name, const ScenarioParams& params) {
    const auto& info = find_scenario(name);
    return {info.name, params, info.representation, info.claims(params)};
}

}  // namespace qpigeon
