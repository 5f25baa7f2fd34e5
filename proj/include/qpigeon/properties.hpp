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

#ifndef QPIGEON_PROPERTIES_HPP
#define QPIGEON_PROPERTIES_HPP

#include <cstdint>
#include <random>
#include <string>
#include <vector>

#include "qpigeon/observables.hpp"
#include "qpigeon/state.hpp"

namespace qpigeon {

struct PropertyOutcome {
    std::string name;
    std::size_t cases = 0;
    std::size_t failures = 0;
    /// Cases where the nontrivial branch of the property was exercised.
    std::size_t witnesses = 0;
    std::string first_failure;

    bool passed() const { return failures == 0; }
};

/// Random pre/post pair over N in [1, max_particles] particles and two boxes
/// with small Gaussian-integer amplitudes, many of them zero. The overlap is
/// nonzero.
PrePost<Exact> random_instance(std::mt19937_64& engine, int max_particles);

/// Random two-valued observable on the domain: a counting, subset, same-box
/// or single-particle projector, a pair parity or a sigma_z.
DiagonalObservable random_dichotomic(std::mt19937_64& engine, const Domain& d);

/// ABL probabilities over the spectrum sum to exactly one.
PropertyOutcome check_abl_normalization(std::uint64_t seed, std::size_t cases, int max_particles = 3);

/// Rescaling either state by a nonzero Gaussian rational leaves ABL
/// probabilities, verdicts and weak values unchanged.
PropertyOutcome check_homogeneity(std::uint64_t seed, std::size_t cases, int max_particles = 3);

/// For two-valued C: weak value equals eigenvalue c exactly when C = c is an
/// element of reality.
PropertyOutcome check_dichotomic_theorem(std::uint64_t seed, std::size_t cases, int max_particles = 3);

/// Counting projectors equal their sums of exact-subset products, and
/// P^{>0} = (exactly one) + P^{>1}, for every N up to max_particles.
PropertyOutcome check_expansion_identities(int max_particles);

}  // namespace qpigeon

#endif  // QPIGEON_PROPERTIES_HPP
