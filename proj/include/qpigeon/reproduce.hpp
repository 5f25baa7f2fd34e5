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

#ifndef QPIGEON_REPRODUCE_HPP
#define QPIGEON_REPRODUCE_HPP

#include <map>
#include <string>

#include "qpigeon/config.hpp"
#include "qpigeon/report.hpp"
#include "qpigeon/runner.hpp"

namespace qpigeon {

struct ReproduceOptions {
    Backend backend = Backend::kBoth;
    std::uint64_t seed = kDefaultSeed;
    std::uint64_t shots = kDefaultShots;
    std::size_t property_cases = 1000;
    /// Mutation switch: negate the middle term of the four-pigeon
    /// postselection. Every claim built on that scenario should then fail.
    bool flip_four_pigeon_middle_sign = false;
};

/// The four-pigeon pair with the sign of the AABB term of the
/// postselection flipped, so that it coincides with the preselection.
PrePost<Exact> four_pigeons_flipped_middle_sign();

/// Runs the whole acceptance suite. Each record carries data["criterion"]
/// (1-9) and data["depends_on"] (scenario names).
Report reproduce_paper(const ReproduceOptions& options = {});

/// Criterion number -> all of its records passed.
std::map<int, bool> criterion_verdicts(const Report& report);

/// One-line title of each acceptance criterion.
const std::map<int, std::string>& criterion_titles();

}  // namespace qpigeon

#endif  // QPIGEON_REPRODUCE_HPP
