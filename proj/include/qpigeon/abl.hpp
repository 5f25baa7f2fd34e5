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

#ifndef QPIGEON_ABL_HPP
#define QPIGEON_ABL_HPP

#include <map>
#include <optional>

#include "qpigeon/observables.hpp"
#include "qpigeon/state.hpp"

namespace qpigeon {

/// <post| O |pre> for a diagonal observable, unnormalized.
template <class S>
S matrix_element(const PrePost<S>& pair, const DiagonalObservable& o) {
    require_same_domain(pair.domain(), o.domain(), o.descriptor());
    const auto& pre = pair.pre();
    const auto& post = pair.post();
    S total(0);
    for (std::size_t k = 0; k < pre.size(); ++k) {
        const S& ket = pre.amplitude(k);
        if (ket == S(0)) {
            continue;
        }
        Rational lambda = o.eigenvalue(pre.basis(), k);
        if (sgn(lambda) == 0) {
            continue;
        }
        total += conj(post.amplitude(k)) * ket * convert_amplitude<S>(Exact(lambda));
    }
    return total;
}

/// Matrix element divided by |post||pre| when that division stays exact
/// (exact backend), or always (float backend).
template <class S>
std::optional<S> normalized_matrix_element(const PrePost<S>& pair, const DiagonalObservable& o) {
    S raw = matrix_element(pair, o);
    if constexpr (AmplitudeTraits<S>::kExact) {
        auto scale = exact_sqrt(pair.pre().norm_squared() * pair.post().norm_squared());
        if (!scale) {
            return std::nullopt;
        }
        return raw / S(*scale);
    } else {
        return raw / pair.norm_scale();
    }
}

template <class S>
struct AblResult {
    RealOf<S> probability;
    /// <post| P_{C=c} |pre>
    S selected;
    /// <post| P_{C!=c} |pre>
    S rejected;
};

namespace detail {

template <class S>
void check_eigenvalue(const PrePost<S>& pair, const DiagonalObservable& c_obs, const Rational& c) {
    auto spec = c_obs.spectrum(pair.pre().basis());
    if (!spec.contains(c)) {
        throw std::invalid_argument("value " + c.get_str() + " is not an eigenvalue of " + c_obs.descriptor());
    }
}

template <class S>
std::pair<S, S> split_elements(const PrePost<S>& pair, const DiagonalObservable& c_obs, const Rational& c) {
    require_same_domain(pair.domain(), c_obs.domain(), c_obs.descriptor());
    check_eigenvalue(pair, c_obs, c);
    auto selected_projector = eigenspace_projector(c_obs, c);
    S selected = matrix_element(pair, selected_projector);
    S rejected = matrix_element(pair, complement(selected_projector));
    return {selected, rejected};
}

}  // namespace detail

/// Conditional probability of outcome C = c between the pre- and
/// postselection:
///   |<post|P_{C=c}|pre>|^2 / (|<post|P_{C=c}|pre>|^2 + |<post|P_{C!=c}|pre>|^2).
/// Independent of how either state is normalized.
template <class S>
AblResult<S> abl_probability(const PrePost<S>& pair, const DiagonalObservable& c_obs, const Rational& c) {
    auto [selected, rejected] = detail::split_elements(pair, c_obs, c);
    double scale = pair.norm_scale();
    bool sel_zero = AmplitudeTraits<S>::is_zero(selected, scale);
    bool rej_zero = AmplitudeTraits<S>::is_zero(rejected, scale);
    if (sel_zero && rej_zero) {
        throw OutcomeIncompatible("both matrix elements vanish for " + c_obs.descriptor() + " = " + c.get_str());
    }
    RealOf<S> num = abs2(selected);
    RealOf<S> den = num + abs2(rejected);
    RealOf<S> prob = num / den;
    if constexpr (!AmplitudeTraits<S>::kExact) {
        // Pin float verdicts to exact 0 / 1 when the vanishing side is below tolerance.
        if (sel_zero) {
            prob = 0.0;
        } else if (rej_zero) {
            prob = 1.0;
        }
    }
    return {prob, selected, rejected};
}

/// ABL probability of every eigenvalue of C; the values sum to one.
template <class S>
std::map<Rational, RealOf<S>> abl_distribution(const PrePost<S>& pair, const DiagonalObservable& c_obs) {
    require_same_domain(pair.domain(), c_obs.domain(), c_obs.descriptor());
    std::map<Rational, RealOf<S>> out;
    for (const Rational& value : c_obs.spectrum(pair.pre().basis())) {
        out.emplace(value, abl_probability(pair, c_obs, value).probability);
    }
    return out;
}

template <class S>
struct RealityVerdict {
    bool holds = false;
    S selected;
    S rejected;
};

/// C = c is an element of reality iff <post|P_{C=c}|pre> != 0 and
/// <post|P_{C!=c}|pre> == 0. Exact zeros in the exact backend.
template <class S>
RealityVerdict<S> is_element_of_reality(const PrePost<S>& pair, const DiagonalObservable& c_obs, const Rational& c) {
    auto [selected, rejected] = detail::split_elements(pair, c_obs, c);
    double scale = pair.norm_scale();
    bool holds = !AmplitudeTraits<S>::is_zero(selected, scale) && AmplitudeTraits<S>::is_zero(rejected, scale);
    return {holds, selected, rejected};
}

/// <post|O|pre> / <post|pre>.
template <class S>
S weak_value(const PrePost<S>& pair, const DiagonalObservable& o) {
    if (AmplitudeTraits<S>::is_zero(pair.overlap(), pair.norm_scale())) {
        throw ZeroOverlap("weak value undefined: <post|pre> = 0");
    }
    return matrix_element(pair, o) / pair.overlap();
}

}  // namespace qpigeon

#endif  // QPIGEON_ABL_HPP
