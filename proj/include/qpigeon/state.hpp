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

#ifndef QPIGEON_STATE_HPP
#define QPIGEON_STATE_HPP

#include <Eigen/Core>

#include <cmath>
#include <map>
#include <string>
#include <utility>

#include "qpigeon/amplitude.hpp"
#include "qpigeon/basis.hpp"
#include "qpigeon/errors.hpp"

namespace qpigeon {

template <class S>
using AmplitudeVector = Eigen::Matrix<S, Eigen::Dynamic, 1>;

/// Unnormalized pure state over a basis. Global normalization factors are
/// never stored; every derived quantity is a homogeneous ratio.
template <class S>
class State {
  public:
    State(BasisPtr basis, AmplitudeVector<S> amplitudes) : basis_(std::move(basis)), amps_(std::move(amplitudes)) {
        if (static_cast<std::size_t>(amps_.size()) != basis_->size()) {
            throw InvalidState("amplitude vector length does not match basis size");
        }
        bool any = false;
        for (Eigen::Index k = 0; k < amps_.size() && !any; ++k) {
            any = !(amps_[k] == S(0));
        }
        if (!any) {
            throw InvalidState("state has no nonzero amplitude");
        }
    }

    const Basis& basis() const { return *basis_; }
    const BasisPtr& basis_ptr() const { return basis_; }
    const Domain& domain() const { return basis_->domain(); }
    const AmplitudeVector<S>& amplitudes() const { return amps_; }
    std::size_t size() const { return basis_->size(); }

    const S& amplitude(std::size_t index) const { return amps_[static_cast<Eigen::Index>(index)]; }

    RealOf<S> norm_squared() const {
        RealOf<S> total(0);
        for (Eigen::Index k = 0; k < amps_.size(); ++k) {
            total += abs2(amps_[k]);
        }
        return total;
    }

    double norm() const { return std::sqrt(AmplitudeTraits<S>::to_double(norm_squared())); }

    State scaled(const S& factor) const { return State(basis_, amps_ * factor); }

    template <class To>
    State<To> cast() const {
        return State<To>(basis_, amps_.unaryExpr([](const S& z) { return convert_amplitude<To>(z); }));
    }

  private:
    BasisPtr basis_;
    AmplitudeVector<S> amps_;
};

/// Builds a distinguishable-particle state; unlisted configurations get zero.
template <class S>
State<S> make_state(int particles, int boxes, const std::map<Configuration, S>& table,
                    std::size_t budget = kDefaultBasisBudget) {
    auto basis = Basis::distinguishable(particles, boxes, budget);
    AmplitudeVector<S> amps = AmplitudeVector<S>::Constant(static_cast<Eigen::Index>(basis->size()), S(0));
    for (const auto& [config, value] : table) {
        if (static_cast<int>(config.boxes.size()) != particles) {
            throw InvalidState("configuration " + to_string(config) + " has wrong particle count");
        }
        auto index = basis->index_of(config.boxes);
        if (!index) {
            throw InvalidState("configuration " + to_string(config) + " is not valid for " +
                               std::to_string(boxes) + " boxes");
        }
        amps[static_cast<Eigen::Index>(*index)] = value;
    }
    return State<S>(std::move(basis), std::move(amps));
}

/// Same as make_state with configurations spelled as letter strings ("AABB").
template <class S>
State<S> make_state(int particles, int boxes, const std::map<std::string, S>& table,
                    std::size_t budget = kDefaultBasisBudget) {
    std::map<Configuration, S> parsed;
    for (const auto& [text, value] : table) {
        parsed.emplace(parse_configuration(text, boxes), value);
    }
    return make_state<S>(particles, boxes, parsed, budget);
}

/// Builds a Fock state over `boxes` modes; every occupancy must share one total.
template <class S>
State<S> make_fock_state(int boxes, const std::map<Occupancy, S>& table) {
    if (table.empty()) {
        throw InvalidState("empty Fock amplitude table");
    }
    int total = -1;
    for (const auto& entry : table) {
        const Occupancy& occ = entry.first;
        if (static_cast<int>(occ.size()) != boxes) {
            throw InvalidState("occupancy vector length differs from box count");
        }
        int sum = 0;
        for (int n : occ) {
            if (n < 0) {
                throw InvalidState("negative occupancy");
            }
            sum += n;
        }
        if (total >= 0 && sum != total) {
            throw InvalidState("inconsistent particle totals in Fock table: " + std::to_string(total) + " vs " +
                               std::to_string(sum));
        }
        total = sum;
    }
    auto basis = Basis::fock(boxes, total);
    AmplitudeVector<S> amps = AmplitudeVector<S>::Constant(static_cast<Eigen::Index>(basis->size()), S(0));
    for (const auto& [occ, value] : table) {
        amps[static_cast<Eigen::Index>(*basis->index_of(occ))] = value;
    }
    return State<S>(std::move(basis), std::move(amps));
}

inline void require_same_domain(const Domain& a, const Domain& b, const std::string& what) {
    if (!(a == b)) {
        throw DomainMismatch(what + ": " + to_string(a) + " vs " + to_string(b));
    }
}

/// <bra|ket>, antilinear in bra.
template <class S>
S inner_product(const State<S>& bra, const State<S>& ket) {
    require_same_domain(bra.domain(), ket.domain(), "inner product");
    return bra.amplitudes().unaryExpr([](const S& z) { return conj(z); }).cwiseProduct(ket.amplitudes()).sum();
}

/// N, K, M of a scenario; K < 0 when the scenario has no threshold.
struct ScenarioParams {
    int particles = 0;
    int threshold = -1;
    int boxes = 2;

    friend bool operator==(const ScenarioParams&, const ScenarioParams&) = default;
};

/// A validated preselection / postselection pair.
template <class S>
class PrePost {
  public:
    PrePost(State<S> pre, State<S> post, std::string name = "custom", ScenarioParams params = {})
        : pre_(std::move(pre)), post_(std::move(post)), name_(std::move(name)), params_(params) {
        require_same_domain(pre_.domain(), post_.domain(), "pre/post selection");
        overlap_ = inner_product(post_, pre_);
        if (AmplitudeTraits<S>::is_zero(overlap_, norm_scale())) {
            throw ZeroOverlap("postselection is impossible: <post|pre> = 0");
        }
        if (params_.particles == 0) {
            params_.particles = pre_.domain().particles;
            params_.boxes = pre_.domain().boxes;
        }
    }

    const State<S>& pre() const { return pre_; }
    const State<S>& post() const { return post_; }
    const std::string& name() const { return name_; }
    const ScenarioParams& params() const { return params_; }
    const Domain& domain() const { return pre_.domain(); }

    /// <post|pre>.
    const S& overlap() const { return overlap_; }

    /// |post| |pre|, the scale used for float zero tests.
    double norm_scale() const { return pre_.norm() * post_.norm(); }

    template <class To>
    PrePost<To> cast() const {
        return PrePost<To>(pre_.template cast<To>(), post_.template cast<To>(), name_, params_);
    }

  private:
    State<S> pre_;
    State<S> post_;
    std::string name_;
    ScenarioParams params_;
    S overlap_;
};

}  // namespace qpigeon

#endif  // QPIGEON_STATE_HPP
