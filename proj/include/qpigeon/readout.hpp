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

#ifndef QPIGEON_READOUT_HPP
#define QPIGEON_READOUT_HPP

#include <cstdint>
#include <map>
#include <random>
#include <string>
#include <vector>

#include "qpigeon/state.hpp"

namespace qpigeon {

/// von Neumann pointer: reading starts Gaussian(0, spread^2) and shifts by
/// coupling * eigenvalue.
struct PointerModel {
    double coupling = 0.1;
    double spread = 1.0;
    std::size_t grid_points = std::size_t{1} << 14;
    /// Grid half-width in units of spread, before widening by the coupling.
    double range_spreads = 8.0;
};

struct ParityPair {
    int j = 1;
    int k = 2;

    friend bool operator==(const ParityPair&, const ParityPair&) = default;
};

std::string to_string(const ParityPair& p);

/// Every unordered pair of 1..N in lexicographic order.
std::vector<ParityPair> all_parity_pairs(int particles);

/// Per-shot generator: the stream of shot `shot` depends only on (seed, shot).
std::mt19937_64 shot_engine(std::uint64_t seed, std::uint64_t shot);

/// Uniform double in [0, 1) with 53 random bits.
double uniform01(std::mt19937_64& engine);

inline constexpr std::uint64_t kDefaultSeed = 20240229;

struct RunRecord {
    std::uint64_t shot = 0;
    std::vector<std::string> observables;
    /// Parity eigenvalues (projective runs) or pointer readings (weak runs).
    std::vector<double> outcomes;
    bool postselected = false;
    std::uint64_t seed = 0;

    friend bool operator==(const RunRecord&, const RunRecord&) = default;
};

struct StrongRunResult {
    ParityPair pair;
    std::uint64_t shots = 0;
    std::uint64_t seed = 0;
    std::uint64_t prepared_plus = 0;
    std::uint64_t prepared_minus = 0;
    std::uint64_t postselected_plus = 0;
    std::uint64_t postselected_minus = 0;
    /// ABL probability of +1 computed from the same states.
    double exact_conditional_plus = 0.0;
    std::vector<RunRecord> records;

    std::uint64_t postselected() const { return postselected_plus + postselected_minus; }
    double conditional_plus() const;
};

/// Projective measurement of one pair parity followed by postselection, shot by shot.
StrongRunResult strong_parity_run(const PrePost<Float>& pair, ParityPair parity, std::uint64_t shots,
                                  std::uint64_t seed = kDefaultSeed, bool keep_records = false);

/// Joint eigenvalue pattern of several pair parities, one entry per pair.
using ParityPattern = std::vector<int>;

std::string to_string(const ParityPattern& p);

struct SimultaneousRunResult {
    std::vector<ParityPair> pairs;
    std::uint64_t shots = 0;
    std::uint64_t seed = 0;
    std::uint64_t postselected = 0;
    std::map<ParityPattern, std::uint64_t> prepared_counts;
    std::map<ParityPattern, std::uint64_t> postselected_counts;
    /// Conditional distribution from the projector algebra, all attainable patterns.
    std::map<ParityPattern, double> exact_conditional;
    std::vector<RunRecord> records;

    std::map<ParityPattern, double> conditional() const;
    /// At least two patterns above `threshold` in the exact conditional distribution.
    bool nondeterministic(double threshold = 0.01) const;
};

/// Measures all listed (commuting) parities jointly, then postselects.
SimultaneousRunResult simultaneous_parity_run(const PrePost<Float>& pair, const std::vector<ParityPair>& parities,
                                              std::uint64_t shots, std::uint64_t seed = kDefaultSeed,
                                              bool keep_records = false);

struct WeakRunResult {
    std::vector<ParityPair> pairs;
    PointerModel pointer;
    /// Number of postselected samples drawn.
    std::uint64_t shots = 0;
    std::uint64_t seed = 0;
    /// Mean reading / coupling for each pair.
    std::vector<double> estimates;
    /// Standard error of each estimate.
    std::vector<double> standard_errors;
    /// Exact conditional mean / coupling from quadrature of the postselected density.
    std::vector<double> expected;
    /// Probability that a prepared copy passes postselection with the pointers attached.
    double postselection_probability = 0.0;
    std::vector<std::string> warnings;
    std::vector<RunRecord> records;
};

/// Weak pointer readout of every listed parity at once. Each shot draws the
/// pointer readings of one successful postselection from the exact
/// postselected joint density (interference terms included) by sequential
/// grid inverse-CDF sampling.
WeakRunResult weak_parity_run(const PrePost<Float>& pair, const std::vector<ParityPair>& parities,
                              const PointerModel& pointer, std::uint64_t shots, std::uint64_t seed = kDefaultSeed,
                              bool keep_records = false);

/// Postselected mean of pointer `which` divided by the coupling, by grid
/// quadrature of the exact marginal density.
double conditional_mean_over_coupling(const PrePost<Float>& pair, const std::vector<ParityPair>& parities,
                                      const PointerModel& pointer, std::size_t which);

}  // namespace qpigeon

#endif  // QPIGEON_READOUT_HPP
