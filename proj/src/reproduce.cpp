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

#include "qpigeon/reproduce.hpp"

#include <chrono>
#include <cmath>
#include <cstdio>

#include "qpigeon/abl.hpp"
#include "qpigeon/observables.hpp"
#include "qpigeon/properties.hpp"

namespace qpigeon {

using nlohmann::ordered_json;

const std::map<int, std::string>& criterion_titles() {
    static const std::map<int, std::string> titles = {
        {1, "four-pigeon certainties"},
        {2, "(N,K,M) grid, impossibility and pigeonhole identity"},
        {3, "Fock-state four pigeons match the distinguishable verdicts"},
        {4, "no-pair proposal"},
        {5, "separable proposal and entangled counterexample"},
        {6, "environment trace orders"},
        {7, "parity readout simulation"},
        {8, "exact and float backends agree"},
        {9, "property suites"},
    };
    return titles;
}

PrePost<Exact> four_pigeons_flipped_middle_sign() {
    auto base = four_pigeons();
    AmplitudeVector<Exact> post = base.post().amplitudes();
    auto middle = base.pre().basis().index_of(parse_configuration("AABB", 2).boxes);
    post[static_cast<Eigen::Index>(*middle)] = Exact(0) - post[static_cast<Eigen::Index>(*middle)];
    return PrePost<Exact>(base.pre(), State<Exact>(base.pre().basis_ptr(), post), "four_pigeons", base.params());
}

namespace {

constexpr const char* kAnchors[] = {
    "",
    "four pigeons, no box holds more than one",
    "N pigeons with threshold K in M boxes",
    "four pigeons in occupation-number form",
    "no pair shares a box",
    "separable and entangled parity proposals",
    "environment trace orders",
    "parity readout simulation",
    "exact versus float backend",
    "property suites",
};

class Collector {
  public:
    explicit Collector(Report& rep) : rep_(rep) {}

    void add(CheckRecord rec, int criterion, std::vector<std::string> depends) {
        char id[16];
        std::snprintf(id, sizeof id, "%d.%03d", criterion, ++counters_[criterion]);
        rec.id = id;
        rec.claim = kAnchors[criterion];
        rec.data["criterion"] = criterion;
        rec.data["depends_on"] = depends;
        rep_.records.push_back(std::move(rec));
    }

  private:
    Report& rep_;
    std::map<int, int> counters_;
};

std::string box_name(int x) { return std::string(1, box_letter(x)); }

/// <post|P^{>1}_X|pre>, <post|P^{>0}_X|pre> and the normalized
/// <post|P^{<=1}_X|pre> as one claim.
CheckRecord matrix_element_record(const PrePost<Exact>& pair, int box, Backend backend) {
    const Domain& d = pair.domain();
    auto gt1 = count_projector(d, box, Relation::kGreater, 1);
    auto gt0 = count_projector(d, box, Relation::kGreater, 0);
    auto le1 = count_projector(d, box, Relation::kAtMost, 1);
    CheckRecord rec;
    rec.check = "matrix_elements";
    rec.subject = "box " + box_name(box) + ": <P>1>, <P>0>, normalized <P<=1>";
    rec.expected = "0, 0, 1/3";
    rec.data["scenario"] = pair.name();
    std::vector<std::string> problems;
    std::optional<Exact> exact_le1;
    if (backend != Backend::kFloat) {
        Exact a = matrix_element(pair, gt1);
        Exact b = matrix_element(pair, gt0);
        auto c = normalized_matrix_element(pair, le1);
        exact_le1 = c;
        rec.value = to_string(a) + ", " + to_string(b) + ", " + (c ? to_string(*c) : std::string("irrational"));
        rec.data["exact"] = {{"greater_than_one", exact_json(a)},
                             {"greater_than_zero", exact_json(b)},
                             {"normalized_at_most_one", c ? exact_json(*c) : ordered_json(nullptr)}};
        if (rec.value != rec.expected) problems.push_back("exact values differ");
    }
    if (backend != Backend::kExact) {
        auto fpair = pair.cast<Float>();
        Float a = matrix_element(fpair, gt1) / fpair.norm_scale();
        Float b = matrix_element(fpair, gt0) / fpair.norm_scale();
        Float c = *normalized_matrix_element(fpair, le1);
        rec.data["float"] = {{"greater_than_one", float_json(a)},
                             {"greater_than_zero", float_json(b)},
                             {"normalized_at_most_one", float_json(c)}};
        if (backend == Backend::kFloat) rec.value = to_string(a) + ", " + to_string(b) + ", " + to_string(c);
        bool ok = std::abs(a) <= kCrossBackendTolerance && std::abs(b) <= kCrossBackendTolerance &&
                  std::abs(c - Float(1.0 / 3.0)) <= kCrossBackendTolerance;
        if (!ok) problems.push_back("float values differ");
        if (exact_le1 && std::abs(c - to_float(*exact_le1)) > kCrossBackendTolerance) {
            problems.push_back("float backend disagrees with exact");
        }
    }
    rec.verdict = problems.empty() ? Verdict::kPass : Verdict::kFail;
    for (const auto& p : problems) rec.note += (rec.note.empty() ? "" : "; ") + p;
    return rec;
}

std::vector<ExpectedClaim> four_pigeon_abl_claims() {
    std::vector<ExpectedClaim> out;
    for (int x = 0; x < 2; ++x) {
        for (const char* rel : {"<=,1", "=,0", "=,4"}) {
            out.push_back({ExpectedClaim::Kind::kAbl, "count(" + box_name(x) + "," + rel + ")", "1", "1"});
        }
    }
    return out;
}

void criterion_1_and_3(const PrePost<Exact>& pigeons, Backend backend, Collector& out) {
    auto fock = fock_four_pigeons();
    auto claims = four_pigeon_abl_claims();
    for (const auto& claim : claims) {
        auto dist = evaluate_claim(pigeons, claim, backend, "");
        auto occ = evaluate_claim(fock, claim, backend, "");
        if (occ.value != dist.value) {
            occ.verdict = Verdict::kFail;
            occ.note += std::string(occ.note.empty() ? "" : "; ") + "distinguishable gives " + dist.value;
        }
        occ.expected = dist.value;
        out.add(std::move(dist), 1, {"four_pigeons"});
        out.add(std::move(occ), 3, {"fock_four_pigeons", "four_pigeons"});
    }
    for (int x = 0; x < 2; ++x) {
        auto dist = matrix_element_record(pigeons, x, backend);
        auto occ = matrix_element_record(fock, x, backend);
        if (occ.value != dist.value) {
            occ.verdict = Verdict::kFail;
            occ.note += std::string(occ.note.empty() ? "" : "; ") + "distinguishable gives " + dist.value;
        }
        occ.expected = dist.value;
        out.add(std::move(dist), 1, {"four_pigeons"});
        out.add(std::move(occ), 3, {"fock_four_pigeons", "four_pigeons"});
    }
}

void criterion_2(Backend backend, Collector& out) {
    struct Nkm {
        int n, k, m;
    };
    for (auto [n, k, m] : {Nkm{6, 2, 2}, Nkm{8, 3, 2}, Nkm{4, 1, 3}, Nkm{7, 2, 3}}) {
        auto pair = nk_scenario(n, k, m);
        for (int x = 0; x < m; ++x) {
            ExpectedClaim claim{ExpectedClaim::Kind::kReality,
                                "count(" + box_name(x) + ",<=," + std::to_string(k) + ")", "1", "true"};
            auto rec = evaluate_claim(pair, claim, backend, "");
            rec.subject += " (N=" + std::to_string(n) + ",K=" + std::to_string(k) + ",M=" + std::to_string(m) + ")";
            out.add(std::move(rec), 2, {"nk_scenario"});
        }
    }
    for (auto [n, k, m] : {Nkm{3, 1, 2}, Nkm{1, 0, 2}, Nkm{1, 0, 3}}) {
        CheckRecord rec;
        rec.check = "constructor_rejects";
        rec.subject = "nk_scenario(N=" + std::to_string(n) + ",K=" + std::to_string(k) + ",M=" + std::to_string(m) + ")";
        rec.expected = "impossible";
        try {
            nk_scenario(n, k, m);
            rec.value = "constructed";
            rec.verdict = Verdict::kFail;
        } catch (const ImpossibleScenario& e) {
            rec.value = "impossible";
            rec.note = e.what();
            rec.data["reason"] = e.what();
            rec.verdict = Verdict::kPass;
        }
        out.add(std::move(rec), 2, {"nk_scenario"});
    }
    CheckRecord rec;
    rec.check = "pigeonhole_identity";
    rec.subject = "P>K_A + P>K_B = I for N <= 9, 0 <= K < N";
    rec.expected = "exactly when N = 2K+1";
    int cases = 0;
    std::vector<std::string> wrong;
    ordered_json hits = ordered_json::array();
    for (int n = 1; n <= 9; ++n) {
        for (int k = 0; k < n; ++k) {
            ++cases;
            bool identity = pigeonhole_identity_check(n, k);
            if (identity) hits.push_back({n, k});
            if (identity != (n == 2 * k + 1)) wrong.push_back("N=" + std::to_string(n) + ",K=" + std::to_string(k));
        }
    }
    rec.value = std::to_string(hits.size()) + " of " + std::to_string(cases) + " cases are the identity";
    rec.data["identity_cases"] = hits;
    rec.verdict = wrong.empty() ? Verdict::kPass : Verdict::kFail;
    for (const auto& w : wrong) rec.note += (rec.note.empty() ? "mismatch at " : ", ") + w;
    out.add(std::move(rec), 2, {});
}

void claims_for(const std::string& name, const ScenarioParams& params, Backend backend, int criterion,
                Collector& out) {
    const auto& info = find_scenario(name);
    auto pair = info.build(params);
    for (const auto& claim : info.claims(params)) {
        auto rec = evaluate_claim(pair, claim, backend, "");
        rec.subject += " (N=" + std::to_string(params.particles) + ")";
        out.add(std::move(rec), criterion, {name});
    }
}

TraceRequest trace_request(const EnvCoupling& env, const std::string& mask, const std::string& expected) {
    TraceRequest req;
    req.env = env;
    req.mask = mask;
    req.expected = expected;
    return req;
}

std::string mode(int particle, int box) { return std::to_string(particle) + box_name(box); }

void single_particle_traces(const PrePost<Exact>& pair, Backend backend, Collector& out) {
    const Domain& d = pair.domain();
    auto env = default_couplings(d.particles, d.boxes);
    for (int j = 1; j <= d.particles; ++j) {
        CheckRecord rec;
        rec.check = "trace";
        rec.subject = pair.name() + ": particle " + std::to_string(j) + " single-mode masks";
        rec.expected = "order 1 where nonzero, nonzero in some box";
        std::vector<std::string> parts;
        std::vector<std::string> problems;
        bool some_first_order = false;
        ordered_json boxes = ordered_json::array();
        for (int x = 0; x < d.boxes; ++x) {
            auto sub = evaluate_trace(pair, trace_request(env, "{" + mode(j, x) + "}", ""), backend, "");
            if (sub.verdict == Verdict::kFail) problems.push_back(sub.subject + ": " + sub.note);
            const auto& source = sub.data.contains("exact") ? sub.data["exact"] : sub.data["float"];
            bool vanishes = source["vanishes"].get<bool>();
            int order = source["order"].get<int>();
            parts.push_back(sub.subject + " " + (vanishes ? "zero" : "order " + std::to_string(order)));
            if (!vanishes && order != 1) problems.push_back(sub.subject + " has order " + std::to_string(order));
            some_first_order = some_first_order || (!vanishes && order == 1);
            boxes.push_back(sub.data);
        }
        if (!some_first_order) problems.push_back("no first-order trace in any box");
        rec.value = parts[0];
        for (std::size_t k = 1; k < parts.size(); ++k) rec.value += ", " + parts[k];
        rec.data["masks"] = boxes;
        rec.verdict = problems.empty() ? Verdict::kPass : Verdict::kFail;
        for (const auto& p : problems) rec.note += (rec.note.empty() ? "" : "; ") + p;
        out.add(std::move(rec), 6, {pair.name()});
    }
}

void criterion_6(const PrePost<Exact>& pigeons, Backend backend, Collector& out) {
    auto no_pair = no_pair_scenario(4);
    auto separable = separable_scenario(3);
    auto entangled = entangled_counterexample(3);
    auto nk = nk_scenario(6, 2, 2);

    single_particle_traces(pigeons, backend, out);
    single_particle_traces(nk, backend, out);
    single_particle_traces(no_pair, backend, out);
    single_particle_traces(separable, backend, out);
    single_particle_traces(entangled, backend, out);

    auto add = [&](const PrePost<Exact>& pair, const EnvCoupling& env, const std::string& mask,
                   const std::string& expected, const std::string& note) {
        auto rec = evaluate_trace(pair, trace_request(env, mask, expected), backend, "");
        rec.subject = pair.name() + " " + note + ": " + rec.subject;
        out.add(std::move(rec), 6, {pair.name()});
    };

    auto env4 = default_couplings(4, 2);
    add(pigeons, env4, "{1A,2A}", "zero", "default couplings");
    add(pigeons, env4, "{1A,3A}", "2", "default couplings");

    for (auto [j, k] : all_parity_pairs(4)) {
        int coupled[] = {j, k};
        auto local = local_couplings(4, 2, coupled);
        for (int x = 0; x < 2; ++x) {
            add(no_pair, local, "{" + mode(j, x) + "," + mode(k, x) + "}", "zero", "pair-only couplings");
        }
    }
    for (auto [j, k] : all_parity_pairs(4)) {
        for (int x = 0; x < 2; ++x) {
            add(no_pair, env4, "{" + mode(j, x) + "," + mode(k, x) + "}", "zero", "default couplings");
        }
    }
    for (int j = 1; j <= 4; ++j) {
        for (int k = j + 1; k <= 4; ++k) {
            for (int l = k + 1; l <= 4; ++l) {
                for (int x = 0; x < 2; ++x) {
                    add(no_pair, env4, "{" + mode(j, x) + "," + mode(k, x) + "," + mode(l, x) + "}", "3",
                        "default couplings");
                }
            }
        }
    }
    auto env3 = default_couplings(3, 2);
    for (auto [j, k] : all_parity_pairs(3)) {
        for (int x = 0; x < 2; ++x) {
            add(separable, env3, "{" + mode(j, x) + "," + mode(k, x) + "}", "2", "default couplings");
        }
    }
    for (auto [j, k] : all_parity_pairs(3)) {
        auto nonlocal = nonlocal_parity_couplings(3, j, k);
        add(separable, nonlocal, "{I,II}", "zero", "nonlocal couplings on " + std::to_string(j) + "," + std::to_string(k));
        add(entangled, nonlocal, "{I,II}", "2", "nonlocal couplings on " + std::to_string(j) + "," + std::to_string(k));
    }
}

void criterion_7(const ReproduceOptions& options, Collector& out, Report& rep) {
    RunConfig config;
    config.scenario.name = "separable_scenario";
    config.scenario.particles = 3;
    config.backend = Backend::kFloat;
    config.seed = options.seed;
    CheckConfig strong;
    strong.kind = CheckKind::kStrongReadout;
    strong.shots = options.shots;
    strong.expected = "no_plus";
    CheckConfig weak;
    weak.kind = CheckKind::kWeakReadout;
    weak.shots = options.shots;
    weak.coupling = 0.1;
    weak.expected = "-1";
    weak.tolerance = 0.1;
    CheckConfig joint;
    joint.kind = CheckKind::kSimultaneousReadout;
    joint.shots = options.shots;
    joint.expected = "nondeterministic";
    config.checks = {strong, weak, joint};
    auto sub = run(config);
    for (auto& rec : sub.records) {
        rec.subject = "separable_scenario(3) " + rec.subject;
        out.add(std::move(rec), 7, {"separable_scenario"});
    }
    for (const auto& w : sub.warnings) rep.warnings.push_back(w);
}

void agreement(const std::string& label, const PrePost<Exact>& pair, const std::vector<ExpectedClaim>& claims,
               bool with_matrix_elements, Collector& out, const std::vector<std::string>& depends) {
    CheckRecord rec;
    rec.check = "cross_backend";
    rec.subject = label;
    rec.expected = "|float - exact| <= 1e-12";
    std::size_t compared = 0;
    std::vector<std::string> problems;
    for (const auto& claim : claims) {
        ExpectedClaim bare = claim;
        bare.expected.clear();
        auto r = evaluate_claim(pair, bare, Backend::kBoth, "");
        ++compared;
        if (r.verdict == Verdict::kFail) problems.push_back(r.subject + ": " + r.note);
    }
    if (with_matrix_elements) {
        for (int x = 0; x < pair.domain().boxes; ++x) {
            auto r = matrix_element_record(pair, x, Backend::kBoth);
            ++compared;
            if (r.note.find("disagrees") != std::string::npos) problems.push_back(r.subject + ": " + r.note);
        }
    }
    rec.value = std::to_string(compared - problems.size()) + "/" + std::to_string(compared) + " agree";
    rec.verdict = problems.empty() ? Verdict::kPass : Verdict::kFail;
    for (const auto& p : problems) rec.note += (rec.note.empty() ? "" : "; ") + p;
    out.add(std::move(rec), 8, depends);
}

void criterion_8(const PrePost<Exact>& pigeons, Collector& out) {
    agreement("four_pigeons", pigeons, four_pigeon_abl_claims(), true, out, {"four_pigeons"});
    agreement("fock_four_pigeons", fock_four_pigeons(), four_pigeon_abl_claims(), true, out, {"fock_four_pigeons"});
    for (auto [n, k, m] : {std::array{6, 2, 2}, std::array{8, 3, 2}, std::array{4, 1, 3}, std::array{7, 2, 3}}) {
        std::vector<ExpectedClaim> claims;
        for (int x = 0; x < m; ++x) {
            claims.push_back({ExpectedClaim::Kind::kReality, "count(" + box_name(x) + ",<=," + std::to_string(k) + ")",
                              "1", ""});
            claims.push_back(
                {ExpectedClaim::Kind::kAbl, "count(" + box_name(x) + ",<=," + std::to_string(k) + ")", "1", ""});
        }
        agreement("nk_scenario(" + std::to_string(n) + "," + std::to_string(k) + "," + std::to_string(m) + ")",
                  nk_scenario(n, k, m), claims, false, out, {"nk_scenario"});
    }
    for (int n : {3, 4, 5}) {
        ScenarioParams p{n, -1, 2};
        agreement("no_pair_scenario(" + std::to_string(n) + ")", no_pair_scenario(n),
                  find_scenario("no_pair_scenario").claims(p), false, out, {"no_pair_scenario"});
    }
    ScenarioParams p3{3, -1, 2};
    agreement("separable_scenario(3)", separable_scenario(3), find_scenario("separable_scenario").claims(p3), false,
              out, {"separable_scenario"});
    agreement("entangled_counterexample(3)", entangled_counterexample(3),
              find_scenario("entangled_counterexample").claims(p3), false, out, {"entangled_counterexample"});
}

void criterion_9(const ReproduceOptions& options, Collector& out) {
    std::vector<PropertyOutcome> suites = {
        check_abl_normalization(options.seed, options.property_cases),
        check_homogeneity(options.seed + 1, options.property_cases),
        check_dichotomic_theorem(options.seed + 2, options.property_cases),
        check_expansion_identities(6),
    };
    for (const auto& s : suites) {
        CheckRecord rec;
        rec.check = "property";
        rec.subject = s.name;
        rec.value = std::to_string(s.cases - s.failures) + "/" + std::to_string(s.cases) + " cases";
        rec.expected = "all cases";
        rec.data = {{"cases", s.cases}, {"failures", s.failures}, {"witnesses", s.witnesses}};
        rec.verdict = s.passed() ? Verdict::kPass : Verdict::kFail;
        rec.note = s.first_failure;
        out.add(std::move(rec), 9, {});
    }
}

}  // namespace

Report reproduce_paper(const ReproduceOptions& options) {
    auto start = std::chrono::steady_clock::now();
    Report rep;
    rep.title = "qpigeon reproduce-paper";
    rep.backend = to_string(options.backend);
    rep.seed = options.seed;
    rep.inputs = {{"backend", to_string(options.backend)},
                  {"seed", options.seed},
                  {"shots", options.shots},
                  {"property_cases", options.property_cases},
                  {"flip_four_pigeon_middle_sign", options.flip_four_pigeon_middle_sign}};
    if (options.flip_four_pigeon_middle_sign) {
        rep.warnings.push_back("mutation active: four-pigeon postselection middle sign flipped");
    }
    auto pigeons = options.flip_four_pigeon_middle_sign ? four_pigeons_flipped_middle_sign() : four_pigeons();
    Collector out(rep);
    criterion_1_and_3(pigeons, options.backend, out);
    criterion_2(options.backend, out);
    for (int n : {3, 4, 5}) claims_for("no_pair_scenario", {n, -1, 2}, options.backend, 4, out);
    claims_for("separable_scenario", {3, -1, 2}, options.backend, 5, out);
    claims_for("entangled_counterexample", {3, -1, 2}, options.backend, 5, out);
    criterion_6(pigeons, options.backend, out);
    criterion_7(options, out, rep);
    criterion_8(pigeons, out);
    criterion_9(options, out);
    std::stable_sort(rep.records.begin(), rep.records.end(),
                     [](const CheckRecord& a, const CheckRecord& b) {
                         return a.data["criterion"].get<int>() < b.data["criterion"].get<int>();
                     });
    rep.wall_seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    return rep;
}

std::map<int, bool> criterion_verdicts(const Report& report) {
    std::map<int, bool> out;
    for (const auto& [n, title] : criterion_titles()) out[n] = true;
    for (const auto& rec : report.records) {
        if (!rec.data.contains("criterion")) continue;
        int n = rec.data["criterion"].get<int>();
        if (rec.verdict == Verdict::kFail) out[n] = false;
    }
    return out;
}

}  // namespace qpigeon
