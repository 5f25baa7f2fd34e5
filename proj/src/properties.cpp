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

#include "qpigeon/properties.hpp"

#include "qpigeon/abl.hpp"
#include "qpigeon/readout.hpp"

namespace qpigeon {

namespace {

int uniform_int(std::mt19937_64& engine, int lo, int hi) {
    return std::uniform_int_distribution<int>(lo, hi)(engine);
}

Exact small_amplitude(std::mt19937_64& engine) {
    static const Exact kChoices[] = {
        Exact(0),          Exact(0),           Exact(0),          Exact(1),          Exact(-1),
        Exact(0, 1),       Exact(0, -1),       Exact(1, 1),       Exact(2),          Exact(-1, 2),
    };
    return kChoices[uniform_int(engine, 0, 9)];
}

AmplitudeVector<Exact> random_vector(std::mt19937_64& engine, std::size_t size) {
    AmplitudeVector<Exact> v(static_cast<Eigen::Index>(size));
    bool any = false;
    while (!any) {
        for (Eigen::Index k = 0; k < v.size(); ++k) {
            v[k] = small_amplitude(engine);
            any = any || !v[k].is_zero();
        }
    }
    return v;
}

Exact random_scale(std::mt19937_64& engine) {
    while (true) {
        Rational den(uniform_int(engine, 1, 4));
        Exact z(Rational(uniform_int(engine, -3, 3)) / den, Rational(uniform_int(engine, -3, 3)) / den);
        if (!z.is_zero()) return z;
    }
}

void record_failure(PropertyOutcome& out, const std::string& what) {
    if (out.failures++ == 0) out.first_failure = what;
}

std::string describe(const PrePost<Exact>& pair, const DiagonalObservable& o) {
    std::string text = o.descriptor() + " on " + to_string(pair.domain()) + " pre=[";
    for (std::size_t k = 0; k < pair.pre().size(); ++k) text += (k ? "," : "") + to_string(pair.pre().amplitude(k));
    text += "] post=[";
    for (std::size_t k = 0; k < pair.post().size(); ++k) text += (k ? "," : "") + to_string(pair.post().amplitude(k));
    return text + "]";
}

}  // namespace

PrePost<Exact> random_instance(std::mt19937_64& engine, int max_particles) {
    int n = uniform_int(engine, 1, max_particles);
    auto basis = Basis::distinguishable(n, 2);
    while (true) {
        State<Exact> pre(basis, random_vector(engine, basis->size()));
        State<Exact> post(basis, random_vector(engine, basis->size()));
        if (!inner_product(post, pre).is_zero()) {
            return PrePost<Exact>(pre, post, "random");
        }
    }
}

DiagonalObservable random_dichotomic(std::mt19937_64& engine, const Domain& d) {
    const int n = d.particles;
    const int box = uniform_int(engine, 0, 1);
    const int kinds = n >= 2 ? 6 : 4;
    switch (uniform_int(engine, 0, kinds - 1)) {
        case 0:
            return count_projector(d, box, static_cast<Relation>(uniform_int(engine, 0, 2)), uniform_int(engine, 0, n));
        case 1:
            return particle_in_box(d, uniform_int(engine, 1, n), box);
        case 2:
            return sigma_z(d, uniform_int(engine, 1, n));
        case 3: {
            std::vector<int> members;
            for (int m = 1; m <= n; ++m) {
                if (uniform_int(engine, 0, 1)) members.push_back(m);
            }
            if (members.empty()) members.push_back(1);
            return subset_in_box_projector(d, members, box);
        }
        case 4: {
            int j = uniform_int(engine, 1, n);
            int k = uniform_int(engine, 1, n - 1);
            if (k >= j) ++k;
            return pair_parity(d, j, k);
        }
        default: {
            int j = uniform_int(engine, 1, n);
            int k = uniform_int(engine, 1, n - 1);
            if (k >= j) ++k;
            return same_box_projector(d, {j, k});
        }
    }
}

PropertyOutcome check_abl_normalization(std::uint64_t seed, std::size_t cases, int max_particles) {
    PropertyOutcome out;
    out.name = "ABL probabilities sum to one";
    for (std::size_t c = 0; c < cases; ++c) {
        auto engine = shot_engine(seed, c);
        auto pair = random_instance(engine, max_particles);
        auto obs = random_dichotomic(engine, pair.domain());
        ++out.cases;
        Rational total(0);
        for (const auto& [value, p] : abl_distribution(pair, obs)) {
            if (sgn(p) < 0 || p > 1) record_failure(out, "probability outside [0,1] for " + describe(pair, obs));
            total += p;
        }
        if (total != 1) {
            record_failure(out, "sum " + to_string(total) + " for " + describe(pair, obs));
        } else {
            ++out.witnesses;
        }
    }
    return out;
}

PropertyOutcome check_homogeneity(std::uint64_t seed, std::size_t cases, int max_particles) {
    PropertyOutcome out;
    out.name = "homogeneity under state rescaling";
    for (std::size_t c = 0; c < cases; ++c) {
        auto engine = shot_engine(seed, c);
        auto pair = random_instance(engine, max_particles);
        auto obs = random_dichotomic(engine, pair.domain());
        PrePost<Exact> scaled(pair.pre().scaled(random_scale(engine)), pair.post().scaled(random_scale(engine)));
        ++out.cases;
        if (!(weak_value(pair, obs) == weak_value(scaled, obs))) {
            record_failure(out, "weak value changed for " + describe(pair, obs));
            continue;
        }
        for (const auto& value : obs.spectrum(pair.pre().basis())) {
            if (is_element_of_reality(pair, obs, value).holds != is_element_of_reality(scaled, obs, value).holds) {
                record_failure(out, "reality verdict changed for " + describe(pair, obs));
            }
            bool compatible = true;
            Rational p;
            try {
                p = abl_probability(pair, obs, value).probability;
            } catch (const OutcomeIncompatible&) {
                compatible = false;
            }
            if (compatible && abl_probability(scaled, obs, value).probability != p) {
                record_failure(out, "ABL probability changed for " + describe(pair, obs));
            }
        }
        ++out.witnesses;
    }
    return out;
}

PropertyOutcome check_dichotomic_theorem(std::uint64_t seed, std::size_t cases, int max_particles) {
    PropertyOutcome out;
    out.name = "two-valued weak value equals eigenvalue iff element of reality";
    for (std::size_t c = 0; c < cases; ++c) {
        auto engine = shot_engine(seed, c);
        auto pair = random_instance(engine, max_particles);
        auto obs = random_dichotomic(engine, pair.domain());
        ++out.cases;
        Exact w = weak_value(pair, obs);
        for (const auto& value : obs.spectrum(pair.pre().basis())) {
            bool weak_hit = w == Exact(value);
            bool certain = is_element_of_reality(pair, obs, value).holds;
            if (weak_hit != certain) {
                record_failure(out, "weak value " + to_string(w) + " vs certainty of " + to_string(value) + " for " +
                                        describe(pair, obs));
            }
            if (certain && obs.spectrum(pair.pre().basis()).size() == 2) ++out.witnesses;
        }
    }
    return out;
}

PropertyOutcome check_expansion_identities(int max_particles) {
    PropertyOutcome out;
    out.name = "counting projectors as exact-subset sums";
    for (int n = 1; n <= max_particles; ++n) {
        Domain d{Representation::kDistinguishable, n, 2};
        for (int box = 0; box < 2; ++box) {
            std::vector<DiagonalObservable> in_box;
            for (int m = 1; m <= n; ++m) in_box.push_back(particle_in_box(d, m, box));
            // by_size[s] = sum over |S| = s of prod_{m in S} P_X^(m) prod_{m not in S} (1 - P_X^(m)).
            std::vector<std::optional<DiagonalObservable>> by_size(static_cast<std::size_t>(n) + 1);
            for (std::uint32_t subset = 0; subset < (1u << n); ++subset) {
                std::optional<DiagonalObservable> term;
                for (int m = 0; m < n; ++m) {
                    auto factor = (subset >> m) & 1u ? in_box[static_cast<std::size_t>(m)]
                                                     : complement(in_box[static_cast<std::size_t>(m)]);
                    term = term ? product(*term, factor) : factor;
                }
                auto& slot = by_size[static_cast<std::size_t>(__builtin_popcount(subset))];
                slot = slot ? sum(*slot, *term) : *term;
            }
            auto zero = complement(identity(d));
            auto total_above = [&](int k) {
                DiagonalObservable acc = zero;
                for (int s = k + 1; s <= n; ++s) acc = sum(acc, *by_size[static_cast<std::size_t>(s)]);
                return acc;
            };
            std::string where = " (N=" + std::to_string(n) + ", box " + box_letter(box) + ")";
            for (int k = 0; k < n; ++k) {
                ++out.cases;
                if (!pointwise_equal(count_projector(d, box, Relation::kGreater, k), total_above(k))) {
                    record_failure(out, "P^{>" + std::to_string(k) + "} expansion" + where);
                }
            }
            ++out.cases;
            auto at_most_one = by_size[1] ? sum(*by_size[0], *by_size[1]) : *by_size[0];
            if (!pointwise_equal(count_projector(d, box, Relation::kAtMost, 1), at_most_one)) {
                record_failure(out, "P^{<=1} expansion" + where);
            }
            ++out.cases;
            auto above_zero = sum(*by_size[1], total_above(1));
            if (!pointwise_equal(count_projector(d, box, Relation::kGreater, 0), above_zero)) {
                record_failure(out, "P^{>0} = exactly-one + P^{>1}" + where);
            }
            ++out.cases;
            if (!pointwise_equal(complement(count_projector(d, box, Relation::kGreater, 1)),
                                 count_projector(d, box, Relation::kAtMost, 1))) {
                record_failure(out, "P^{<=1} = 1 - P^{>1}" + where);
            }
        }
    }
    out.witnesses = out.cases - out.failures;
    return out;
}

}  // namespace qpigeon
