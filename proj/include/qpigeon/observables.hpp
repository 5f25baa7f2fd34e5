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

#ifndef QPIGEON_OBSERVABLES_HPP
#define QPIGEON_OBSERVABLES_HPP

#include <functional>
#include <memory>
#include <set>
#include <span>
#include <string>
#include <vector>

#include "qpigeon/amplitude.hpp"
#include "qpigeon/basis.hpp"
#include "qpigeon/state.hpp"

namespace qpigeon {

enum class Relation { kGreater, kAtMost, kEqual };

const char* to_string(Relation r);

/// An observable diagonal in the box basis, stored as its eigenvalue
/// function over basis labels. Never materialized as a matrix.
class DiagonalObservable {
  public:
    using EigenvalueFn = std::function<Rational(const Basis&, std::size_t)>;

    DiagonalObservable(Domain domain, std::string descriptor, EigenvalueFn fn, bool projector)
        : domain_(domain), descriptor_(std::move(descriptor)), fn_(std::move(fn)), projector_(projector) {}

    const Domain& domain() const { return domain_; }

    /// Canonical text form, e.g. "count(A,>,1)"; parse_observable reads it back.
    const std::string& descriptor() const { return descriptor_; }

    bool is_projector() const { return projector_; }

    Rational eigenvalue(const Basis& basis, std::size_t index) const { return fn_(basis, index); }

    /// Eigenvalue for every label of `basis`, in basis order.
    std::vector<Rational> eigenvalues(const Basis& basis) const;

    /// Distinct eigenvalues actually attained on the domain, ascending.
    std::set<Rational> spectrum(const Basis& basis) const;

    /// O|psi>.
    template <class S>
    AmplitudeVector<S> apply(const State<S>& psi) const {
        require_same_domain(domain_, psi.domain(), descriptor_);
        AmplitudeVector<S> out(psi.amplitudes().size());
        for (std::size_t k = 0; k < psi.size(); ++k) {
            Rational lambda = eigenvalue(psi.basis(), k);
            out[static_cast<Eigen::Index>(k)] =
                psi.amplitude(k) * convert_amplitude<S>(Exact(lambda));
        }
        return out;
    }

  private:
    Domain domain_;
    std::string descriptor_;
    EigenvalueFn fn_;
    bool projector_;
};

DiagonalObservable identity(const Domain& d);

/// Projector onto "box X holds <relation> K particles". Works on both
/// distinguishable and Fock domains through the occupancy of each label.
DiagonalObservable count_projector(const Domain& d, int box, Relation relation, int count);

/// Eigenvalue 1 iff every particle of `particles` (1-based) occupies `box`;
/// particles outside the set are unconstrained.
DiagonalObservable subset_in_box_projector(const Domain& d, std::span<const int> particles, int box);
DiagonalObservable subset_in_box_projector(const Domain& d, std::initializer_list<int> particles, int box);

/// Single-particle projector, the |X><X| of one particle.
DiagonalObservable particle_in_box(const Domain& d, int particle, int box);

/// Sum over boxes of subset_in_box_projector: all of `particles` share one box.
DiagonalObservable same_box_projector(const Domain& d, std::span<const int> particles);
DiagonalObservable same_box_projector(const Domain& d, std::initializer_list<int> particles);

/// sigma_z of one particle with A -> +1, B -> -1. Two boxes only.
DiagonalObservable sigma_z(const Domain& d, int particle);

/// sigma_z(j) sigma_z(k): +1 when j and k share a box. Two boxes only.
DiagonalObservable pair_parity(const Domain& d, int j, int k);

DiagonalObservable complement(const DiagonalObservable& p);
DiagonalObservable product(const DiagonalObservable& a, const DiagonalObservable& b);
DiagonalObservable sum(const DiagonalObservable& a, const DiagonalObservable& b);

/// Projector onto the eigenspace of `o` with eigenvalue `value`.
DiagonalObservable eigenspace_projector(const DiagonalObservable& o, const Rational& value);

/// True iff the two observables agree on every label of the domain.
bool pointwise_equal(const DiagonalObservable& a, const DiagonalObservable& b);

/// Checks P^{>K}_A + P^{>K}_B == identity over all 2^N configurations.
bool pigeonhole_identity_check(int particles, int threshold);

/// Reads a canonical descriptor back into an observable on `d`:
///   identity | count(X,>|<=|=,K) | subset({j,k,..},X) | same({j,k,..})
///   | parity(j,k) | sigma_z(n) | not(O) | prod(O,O) | sum(O,O)
DiagonalObservable parse_observable(const Domain& d, const std::string& descriptor);

}  // namespace qpigeon

#endif  // QPIGEON_OBSERVABLES_HPP
