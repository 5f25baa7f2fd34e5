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

#include "qpigeon/runner.hpp"

#include <chrono>
#include <cmath>
#include <cstdio>
#include <sstream>

#include "qpigeon/abl.hpp"
#include "qpigeon/observables.hpp"
#include "qpigeon/readout.hpp"

namespace qpigeon {

using nlohmann::ordered_json;

namespace {

std::string fmt(double x) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.12g", x);
    return buf;
}

std::string params_text(const ScenarioParams& p) {
    std::string out = "N=" + std::to_string(p.particles);
    if (p.threshold >= 0) out += ",K=" + std::to_string(p.threshold);
    return out + ",M=" + std::to_string(p.boxes);
}

ordered_json params_json(const ScenarioParams& p) {
    ordered_json j;
    j["particles"] = p.particles;
    if (p.threshold >= 0) j["threshold"] = p.threshold;
    j["boxes"] = p.boxes;
    return j;
}

bool close(double a, double b) { return std::abs(a - b) <= kCrossBackendTolerance; }

bool close(const Float& a, const Float& b) { return std::abs(a - b) <= kCrossBackendTolerance; }

Verdict verdict_of(bool has_expectation, bool pass) {
    if (!pass) return Verdict::kFail;
    return has_expectation ? Verdict::kPass : Verdict::kInfo;
}

std::string join(const std::vector<std::string>& parts, const char* sep) {
    std::string out;
    for (std::size_t k = 0; k < parts.size(); ++k) {
        out += (k ? sep : "") + parts[k];
    }
    return out;
}

}  // namespace

Rational parse_real(const std::string& text) {
    Exact z = parse_gaussian(text);
    if (sgn(z.imag()) != 0) {
        throw ConfigError("expected a real rational, got '" + text + "'");
    }
    return z.real();
}

Report list_scenarios() {
    Report rep;
    rep.title = "qpigeon scenario registry";
    rep.backend = "exact";
    for (const auto& info : scenario_registry()) {
        CheckRecord rec;
        rec.id = info.name;
        rec.check = "scenario";
        rec.claim = info.anchor;
        rec.subject = info.parameter_range;
        rec.value = params_text(info.default_params);
        rec.expected = to_string(info.representation);
        rec.data["name"] = info.name;
        rec.data["anchor"] = info.anchor;
        rec.data["parameter_range"] = info.parameter_range;
        rec.data["default_params"] = params_json(info.default_params);
        rec.data["representation"] = to_string(info.representation);
        rep.records.push_back(std::move(rec));
    }
    return rep;
}

PrePost<Exact> build_scenario(const ScenarioRef& ref) {
    if (!ref.is_inline()) {
        const auto& info = find_scenario(ref.name);
        ScenarioParams p = info.default_params;
        if (ref.particles) p.particles = *ref.particles;
        if (ref.threshold) p.threshold = *ref.threshold;
        if (ref.boxes) p.boxes = *ref.boxes;
        return info.build(p);
    }
    if (ref.pre.empty() || ref.post.empty()) {
        throw ConfigError("inline scenario needs nonempty pre and post tables");
    }
    auto read_table = [](const std::map<std::string, std::string>& table) {
        std::map<std::string, Exact> out;
        for (const auto& [k, v] : table) out[k] = parse_gaussian(v);
        return out;
    };
    if (ref.representation == Representation::kDistinguishable) {
        int particles = static_cast<int>(ref.pre.begin()->first.size());
        int boxes = ref.boxes.value_or(2);
        auto pre = make_state<Exact>(particles, boxes, read_table(ref.pre));
        auto post = make_state<Exact>(particles, boxes, read_table(ref.post));
        return PrePost<Exact>(pre, post, "inline");
    }
    auto fock_table = [&](const std::map<std::string, std::string>& table) {
        std::map<Occupancy, Exact> out;
        for (const auto& [k, v] : table) {
            Occupancy occ;
            std::stringstream in(k);
            std::string part;
            while (std::getline(in, part, ',')) {
                try {
                    occ.push_back(std::stoi(part));
                } catch (const std::exception&) {
                    throw ConfigError("bad occupancy key '" + k + "'");
                }
            }
            out[occ] = parse_gaussian(v);
        }
        return out;
    };
    auto pre_table = fock_table(ref.pre);
    int boxes = static_cast<int>(pre_table.begin()->first.size());
    auto pre = make_fock_state<Exact>(boxes, pre_table);
    auto post = make_fock_state<Exact>(boxes, fock_table(ref.post));
    return PrePost<Exact>(pre, post, "inline");
}

CheckRecord evaluate_claim(const PrePost<Exact>& pair, const ExpectedClaim& claim, Backend backend,
                           const std::string& id) {
    CheckRecord rec;
    rec.id = id;
    rec.check = to_string(claim.kind);
    rec.subject = claim.observable;
    if (claim.kind != ExpectedClaim::Kind::kWeakValue) rec.subject += " = " + claim.eigenvalue;
    rec.expected = claim.expected;
    rec.data["scenario"] = pair.name();
    rec.data["observable"] = claim.observable;

    const bool exact_on = backend != Backend::kFloat;
    const bool float_on = backend != Backend::kExact;
    const bool has_expectation = !claim.expected.empty();
    auto obs = parse_observable(pair.domain(), claim.observable);
    std::optional<PrePost<Float>> fpair;
    if (float_on) fpair.emplace(pair.cast<Float>());
    std::vector<std::string> problems;

    try {
        switch (claim.kind) {
            case ExpectedClaim::Kind::kAbl: {
                Rational c = parse_real(claim.eigenvalue);
                rec.data["eigenvalue"] = rational_json(c);
                std::optional<Rational> want;
                if (has_expectation) want = parse_real(claim.expected);
                std::optional<Rational> exact_p;
                if (exact_on) {
                    auto r = abl_probability(pair, obs, c);
                    exact_p = r.probability;
                    rec.value = to_string(r.probability);
                    rec.data["exact"] = {{"probability", rational_json(r.probability)},
                                         {"selected", exact_json(r.selected)},
                                         {"rejected", exact_json(r.rejected)}};
                    if (want && r.probability != *want) problems.push_back("exact value " + to_string(r.probability));
                }
                if (float_on) {
                    auto r = abl_probability(*fpair, obs, c);
                    if (!exact_on) rec.value = fmt(r.probability);
                    rec.data["float"] = {{"probability", r.probability},
                                         {"selected", float_json(r.selected)},
                                         {"rejected", float_json(r.rejected)}};
                    if (want && !close(r.probability, want->get_d())) {
                        problems.push_back("float value " + fmt(r.probability));
                    }
                    if (exact_p && !close(r.probability, exact_p->get_d())) {
                        problems.push_back("float backend disagrees with exact");
                    }
                }
                break;
            }
            case ExpectedClaim::Kind::kReality: {
                Rational c = parse_real(claim.eigenvalue);
                rec.data["eigenvalue"] = rational_json(c);
                std::optional<bool> want;
                if (has_expectation) {
                    if (claim.expected != "true" && claim.expected != "false") {
                        throw ConfigError("element-of-reality expectation must be true or false");
                    }
                    want = claim.expected == "true";
                }
                std::optional<bool> exact_holds;
                if (exact_on) {
                    auto r = is_element_of_reality(pair, obs, c);
                    exact_holds = r.holds;
                    rec.value = r.holds ? "true" : "false";
                    rec.data["exact"] = {{"holds", r.holds},
                                         {"selected", exact_json(r.selected)},
                                         {"rejected", exact_json(r.rejected)}};
                    if (want && r.holds != *want) problems.push_back("exact verdict differs");
                }
                if (float_on) {
                    auto r = is_element_of_reality(*fpair, obs, c);
                    if (!exact_on) rec.value = r.holds ? "true" : "false";
                    rec.data["float"] = {{"holds", r.holds},
                                         {"selected", float_json(r.selected)},
                                         {"rejected", float_json(r.rejected)}};
                    if (want && r.holds != *want) problems.push_back("float verdict differs");
                    if (exact_holds && r.holds != *exact_holds) problems.push_back("float backend disagrees with exact");
                }
                break;
            }
            case ExpectedClaim::Kind::kWeakValue: {
                std::optional<Exact> want;
                if (has_expectation) want = parse_gaussian(claim.expected);
                std::optional<Exact> exact_w;
                if (exact_on) {
                    Exact w = weak_value(pair, obs);
                    exact_w = w;
                    rec.value = to_string(w);
                    rec.data["exact"] = {{"weak_value", exact_json(w)}};
                    if (want && !(w == *want)) problems.push_back("exact value " + to_string(w));
                }
                if (float_on) {
                    Float w = weak_value(*fpair, obs);
                    if (!exact_on) rec.value = to_string(w);
                    rec.data["float"] = {{"weak_value", float_json(w)}};
                    if (want && !close(w, to_float(*want))) problems.push_back("float value " + to_string(w));
                    if (exact_w && !close(w, to_float(*exact_w))) problems.push_back("float backend disagrees with exact");
                }
                break;
            }
        }
    } catch (const OutcomeIncompatible& e) {
        problems.push_back(e.what());
    } catch (const ZeroOverlap& e) {
        problems.push_back(e.what());
    }
    rec.verdict = verdict_of(has_expectation, problems.empty());
    rec.note = join(problems, "; ");
    return rec;
}

EnvCoupling couplings_for(const CheckConfig& check, const Domain& domain) {
    if (check.couplings == "default") {
        return default_couplings(domain.particles, domain.boxes);
    }
    if (check.couplings == "local") {
        if (check.particles.empty()) {
            throw ConfigError("local couplings need a 'particles' list");
        }
        return local_couplings(domain.particles, domain.boxes, check.particles);
    }
    if (check.couplings == "nonlocal") {
        if (check.particles.size() != 2) {
            throw ConfigError("nonlocal couplings need exactly two particles");
        }
        if (domain.boxes != 2) {
            throw ConfigError("nonlocal couplings need two boxes");
        }
        return nonlocal_parity_couplings(domain.particles, check.particles[0], check.particles[1]);
    }
    throw ConfigError("unknown coupling scheme '" + check.couplings + "'");
}

CheckRecord evaluate_trace(const PrePost<Exact>& pair, const TraceRequest& request, Backend backend,
                           const std::string& id) {
    Mask mask = parse_mask(request.env, request.mask);
    CheckRecord rec;
    rec.id = id;
    rec.check = "trace";
    rec.subject = mask_to_string(request.env, mask);
    rec.expected = request.expected;
    rec.data["scenario"] = pair.name();
    rec.data["modes"] = request.env.mode_labels;
    rec.data["mask"] = rec.subject;
    rec.data["truncation"] = request.truncation;

    std::optional<bool> want_zero;
    std::optional<int> want_order;
    if (request.expected == "zero") {
        want_zero = true;
    } else if (!request.expected.empty()) {
        try {
            std::size_t used = 0;
            want_order = std::stoi(request.expected, &used);
            if (used != request.expected.size()) throw std::invalid_argument("trailing");
        } catch (const std::exception&) {
            throw ConfigError("trace expectation must be 'zero' or an integer order, got '" + request.expected + "'");
        }
        want_zero = false;
    }

    const bool exact_on = backend != Backend::kFloat;
    const bool float_on = backend != Backend::kExact;
    std::vector<std::string> problems;
    std::optional<LeadingOrder> exact_order;
    if (exact_on) {
        auto joint = evolve_with_environment(pair.pre(), request.env, SeriesBackend{request.truncation});
        auto env = postselect_environment(joint, pair.post());
        LeadingOrder lo = leading_order(env, mask);
        exact_order = lo;
        EpsSeries coef = env.amplitude(mask);
        rec.value = lo.vanishes ? "zero through order " + std::to_string(request.truncation)
                                : "order " + std::to_string(lo.order);
        ordered_json coeffs = ordered_json::array();
        for (int k = 0; k <= coef.truncation(); ++k) {
            coeffs.push_back({{"power", k}, {"coefficient", exact_json(coef.coefficient(k))}});
        }
        rec.data["exact"] = {{"vanishes", lo.vanishes}, {"order", lo.order}, {"series", to_string(coef)},
                             {"coefficients", coeffs}};
        if (want_zero && lo.vanishes != *want_zero) problems.push_back("exact: " + rec.value);
        if (want_order && lo.order != *want_order) problems.push_back("exact: " + rec.value);
    }
    if (float_on) {
        try {
            auto fit = leading_order_float(pair.cast<Float>(), request.env, mask, request.eps_grid);
            std::string text = fit.vanishes ? "zero on grid" : "order " + std::to_string(fit.order) + " (slope " +
                                                                   fmt(fit.slope) + ")";
            if (!exact_on) rec.value = text;
            rec.data["float"] = {{"vanishes", fit.vanishes}, {"order", fit.order},       {"slope", fit.slope},
                                 {"residual", fit.residual}, {"eps", fit.eps},           {"magnitudes", fit.magnitudes}};
            bool fit_ok = fit.vanishes || fit.residual <= kOrderSlopeTolerance;
            if (!fit_ok) problems.push_back("float slope " + fmt(fit.slope) + " is not near an integer");
            if (want_zero && fit.vanishes != *want_zero) problems.push_back("float: " + text);
            if (want_order && fit.order != *want_order) problems.push_back("float: " + text);
            if (exact_order) {
                bool agree = exact_order->vanishes ? fit.vanishes : (!fit.vanishes && fit.order == exact_order->order);
                if (!agree) problems.push_back("float backend disagrees with exact");
            }
        } catch (const std::runtime_error& e) {
            if (dynamic_cast<const ConfigError*>(&e)) throw;
            problems.push_back(std::string("float fit: ") + e.what());
        }
    }
    rec.verdict = verdict_of(!request.expected.empty(), problems.empty());
    rec.note = join(problems, "; ");
    return rec;
}

namespace {

std::string check_id(const CheckConfig& check, std::size_t n) {
    if (!check.id.empty()) return check.id;
    char buf[16];
    std::snprintf(buf, sizeof buf, "c%02zu", n + 1);
    return buf;
}

void run_claims(const PrePost<Exact>& pair, const RunConfig& config, const CheckConfig& check, const std::string& id,
                Report& rep) {
    if (config.scenario.is_inline()) {
        throw ConfigError("a 'claims' check needs a registry scenario");
    }
    const auto& info = find_scenario(config.scenario.name);
    auto claims = info.claims(pair.params());
    std::size_t n = 0;
    for (const auto& claim : claims) {
        if (!check.filter.empty() &&
            std::find(check.filter.begin(), check.filter.end(), to_string(claim.kind)) == check.filter.end()) {
            continue;
        }
        auto rec = evaluate_claim(pair, claim, config.backend, id + "." + std::to_string(++n));
        rec.claim = info.anchor;
        rep.records.push_back(std::move(rec));
    }
}

void run_trace(const PrePost<Exact>& pair, const RunConfig& config, const CheckConfig& check, const std::string& id,
               Report& rep) {
    TraceRequest req;
    req.env = couplings_for(check, pair.domain());
    req.expected = check.expected.value_or("");
    req.truncation = check.truncation.value_or(4);
    if (!check.eps_grid.empty()) req.eps_grid = check.eps_grid;
    std::vector<std::string> masks = check.masks;
    if (masks.empty()) {
        for (const auto& row : trace_table(pair, req.env, req.truncation)) {
            masks.push_back(row.label);
        }
    }
    std::size_t n = 0;
    for (const auto& m : masks) {
        req.mask = m;
        auto rec = evaluate_trace(pair, req, config.backend, id + "." + std::to_string(++n));
        rec.claim = check.couplings + " environment trace";
        rep.records.push_back(std::move(rec));
    }
}

std::vector<ParityPair> pairs_or_all(const CheckConfig& check, const Domain& d) {
    return check.pairs.empty() ? all_parity_pairs(d.particles) : check.pairs;
}

void run_strong(const PrePost<Float>& fpair, const RunConfig& config, const CheckConfig& check, const std::string& id,
                Report& rep) {
    std::string expected = check.expected.value_or("abl");
    if (expected != "abl" && expected != "no_plus" && expected != "plus_present") {
        throw ConfigError("strong_readout expectation must be abl, no_plus or plus_present");
    }
    std::uint64_t shots = check.shots.value_or(kDefaultShots);
    std::size_t n = 0;
    for (const auto& p : pairs_or_all(check, fpair.domain())) {
        auto r = strong_parity_run(fpair, p, shots, config.seed);
        CheckRecord rec;
        rec.id = id + "." + std::to_string(++n);
        rec.check = "strong_readout";
        rec.claim = "projective parity readout";
        rec.subject = to_string(p);
        rec.value = "+1 in " + std::to_string(r.postselected_plus) + "/" + std::to_string(r.postselected()) +
                    " postselected";
        rec.expected = expected;
        double bound = 4.0 / std::sqrt(static_cast<double>(std::max<std::uint64_t>(shots, 1)));
        std::vector<std::string> problems;
        if (r.postselected() > 0 && std::abs(r.conditional_plus() - r.exact_conditional_plus) > bound) {
            problems.push_back("conditional frequency " + fmt(r.conditional_plus()) + " vs ABL " +
                               fmt(r.exact_conditional_plus));
        }
        if (expected == "no_plus" && r.postselected_plus != 0) problems.push_back("postselected +1 outcomes observed");
        if (expected == "plus_present" && r.postselected_plus == 0) problems.push_back("no postselected +1 outcome");
        rec.data = {{"pair", {p.j, p.k}},
                    {"shots", shots},
                    {"seed", config.seed},
                    {"prepared_plus", r.prepared_plus},
                    {"prepared_minus", r.prepared_minus},
                    {"postselected_plus", r.postselected_plus},
                    {"postselected_minus", r.postselected_minus},
                    {"conditional_plus", r.conditional_plus()},
                    {"abl_plus", r.exact_conditional_plus},
                    {"bound", bound}};
        rec.verdict = problems.empty() ? Verdict::kPass : Verdict::kFail;
        rec.note = join(problems, "; ");
        rep.records.push_back(std::move(rec));
    }
}

void run_simultaneous(const PrePost<Float>& fpair, const RunConfig& config, const CheckConfig& check,
                      const std::string& id, Report& rep) {
    std::string expected = check.expected.value_or("exact");
    if (expected != "exact" && expected != "nondeterministic" && expected != "deterministic") {
        throw ConfigError("simultaneous_readout expectation must be exact, nondeterministic or deterministic");
    }
    std::uint64_t shots = check.shots.value_or(kDefaultShots);
    auto pairs = pairs_or_all(check, fpair.domain());
    auto r = simultaneous_parity_run(fpair, pairs, shots, config.seed);
    auto freq = r.conditional();
    double bound = 4.0 / std::sqrt(static_cast<double>(std::max<std::uint64_t>(shots, 1)));
    CheckRecord rec;
    rec.id = id;
    rec.check = "simultaneous_readout";
    rec.claim = "joint parity readout";
    std::vector<std::string> names;
    for (const auto& p : pairs) names.push_back(to_string(p));
    rec.subject = join(names, " ");
    rec.expected = expected;
    std::vector<std::string> parts;
    std::vector<std::string> problems;
    ordered_json patterns = ordered_json::array();
    for (const auto& [pattern, p_exact] : r.exact_conditional) {
        double p_mc = freq.count(pattern) ? freq.at(pattern) : 0.0;
        if (p_exact > 0.0) parts.push_back(to_string(pattern) + ":" + fmt(p_mc));
        if (std::abs(p_mc - p_exact) > bound) {
            problems.push_back(to_string(pattern) + " frequency " + fmt(p_mc) + " vs exact " + fmt(p_exact));
        }
        patterns.push_back({{"pattern", pattern},
                            {"exact", p_exact},
                            {"frequency", p_mc},
                            {"postselected", r.postselected_counts.at(pattern)}});
    }
    rec.value = join(parts, " ");
    if (expected == "nondeterministic" && !r.nondeterministic()) problems.push_back("a single pattern dominates");
    if (expected == "deterministic" && r.nondeterministic()) problems.push_back("several patterns occur");
    rec.data = {{"shots", shots},  {"seed", config.seed},          {"postselected", r.postselected},
                {"bound", bound}, {"nondeterministic", r.nondeterministic()}, {"patterns", patterns}};
    rec.verdict = problems.empty() ? Verdict::kPass : Verdict::kFail;
    rec.note = join(problems, "; ");
    rep.records.push_back(std::move(rec));
}

void run_weak(const PrePost<Float>& fpair, const RunConfig& config, const CheckConfig& check, const std::string& id,
              Report& rep) {
    PointerModel pointer;
    if (check.coupling) pointer.coupling = *check.coupling;
    if (check.spread) pointer.spread = *check.spread;
    std::optional<double> target;
    if (check.expected) target = parse_real(*check.expected).get_d();
    double tolerance = check.tolerance.value_or(0.1);
    std::uint64_t shots = check.shots.value_or(kDefaultShots);
    auto pairs = pairs_or_all(check, fpair.domain());
    auto r = weak_parity_run(fpair, pairs, pointer, shots, config.seed);
    for (const auto& w : r.warnings) rep.warnings.push_back(id + ": " + w);
    for (std::size_t n = 0; n < pairs.size(); ++n) {
        CheckRecord rec;
        rec.id = id + "." + std::to_string(n + 1);
        rec.check = "weak_readout";
        rec.claim = "weak parity readout";
        rec.subject = to_string(pairs[n]);
        rec.value = fmt(r.estimates[n]) + " +- " + fmt(r.standard_errors[n]);
        rec.expected = target ? *check.expected + " +- " + fmt(tolerance) : "";
        bool pass = !target || std::abs(r.estimates[n] - *target) <= tolerance;
        rec.data = {{"pair", {pairs[n].j, pairs[n].k}},
                    {"shots", shots},
                    {"seed", config.seed},
                    {"coupling", pointer.coupling},
                    {"spread", pointer.spread},
                    {"estimate", r.estimates[n]},
                    {"standard_error", r.standard_errors[n]},
                    {"conditional_mean_over_coupling", r.expected[n]},
                    {"postselection_probability", r.postselection_probability}};
        rec.verdict = verdict_of(target.has_value(), pass);
        if (!pass) rec.note = "estimate outside tolerance";
        rep.records.push_back(std::move(rec));
    }
}

}  // namespace

Report run(const RunConfig& config) {
    auto start = std::chrono::steady_clock::now();
    Report rep;
    rep.backend = to_string(config.backend);
    rep.seed = config.seed;
    rep.inputs = ordered_json::parse(serialize_run_config(config));
    auto pair = build_scenario(config.scenario);
    rep.title = "qpigeon run: " + pair.name() + " (" + params_text(pair.params()) + ")";
    std::optional<PrePost<Float>> fpair;
    auto floating = [&]() -> const PrePost<Float>& {
        if (!fpair) fpair.emplace(pair.cast<Float>());
        return *fpair;
    };
    for (std::size_t n = 0; n < config.checks.size(); ++n) {
        const auto& check = config.checks[n];
        std::string id = check_id(check, n);
        switch (check.kind) {
            case CheckKind::kClaims:
                run_claims(pair, config, check, id, rep);
                break;
            case CheckKind::kAbl:
            case CheckKind::kReality:
            case CheckKind::kWeakValue: {
                ExpectedClaim claim;
                claim.kind = check.kind == CheckKind::kAbl       ? ExpectedClaim::Kind::kAbl
                             : check.kind == CheckKind::kReality ? ExpectedClaim::Kind::kReality
                                                                 : ExpectedClaim::Kind::kWeakValue;
                claim.observable = check.observable;
                claim.eigenvalue = check.eigenvalue;
                claim.expected = check.expected.value_or("");
                auto rec = evaluate_claim(pair, claim, config.backend, id);
                rec.claim = "configured check";
                rep.records.push_back(std::move(rec));
                break;
            }
            case CheckKind::kTrace:
                run_trace(pair, config, check, id, rep);
                break;
            case CheckKind::kStrongReadout:
                run_strong(floating(), config, check, id, rep);
                break;
            case CheckKind::kWeakReadout:
                run_weak(floating(), config, check, id, rep);
                break;
            case CheckKind::kSimultaneousReadout:
                run_simultaneous(floating(), config, check, id, rep);
                break;
        }
    }
    rep.wall_seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    return rep;
}

}  // namespace qpigeon
