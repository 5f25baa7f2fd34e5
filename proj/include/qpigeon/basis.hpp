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

#ifndef QPIGEON_BASIS_HPP
#define QPIGEON_BASIS_HPP

#include <cstddef>
#include <cstdint>
#include <map>
#include <memory>
#include <optional>
#include <span>
#include <string>
#include <vector>

namespace qpigeon {

/// Default cap on the number of basis labels a state may span.
inline constexpr std::size_t kDefaultBasisBudget = std::size_t{1} << 24;

enum class Representation { kDistinguishable, kFock };

const char* to_string(Representation rep);

/// The space a state or observable lives on: N particles in M boxes.
struct Domain {
    Representation representation = Representation::kDistinguishable;
    int particles = 0;
    int boxes = 0;

    friend bool operator==(const Domain&, const Domain&) = default;
};

std::string to_string(const Domain& d);

/// Box index for each particle. Particle n (1-based in every public
/// interface) sits at boxes[n - 1]; box 0 prints as 'A'.
struct Configuration {
    std::vector<int> boxes;

    friend auto operator<=>(const Configuration&, const Configuration&) = default;
};

/// Particle count per box.
using Occupancy = std::vector<int>;

char box_letter(int box);
int box_from_letter(char letter);

std::string to_string(const Configuration& c);

/// "AABB" -> {0,0,1,1}. Letters must be < boxes.
Configuration parse_configuration(const std::string& text, int boxes);

/// M^N, or nullopt when it would overflow 64 bits.
std::optional<std::uint64_t> checked_power(int base, int exponent);

/// All M^N configurations in lexicographic order (box A first, particle 1
/// most significant).
std::vector<Configuration> enumerate_configurations(int particles, int boxes,
                                                    std::size_t budget = kDefaultBasisBudget);

Occupancy occupancy(const Configuration& c, int boxes);

/// An ordered set of basis labels for one domain. Distinguishable labels are
/// configurations; Fock labels are occupancy vectors summing to N, ordered
/// lexicographically.
class Basis {
  public:
    static std::shared_ptr<const Basis> distinguishable(int particles, int boxes,
                                                        std::size_t budget = kDefaultBasisBudget);
    static std::shared_ptr<const Basis> fock(int boxes, int particles);
    static std::shared_ptr<const Basis> for_domain(const Domain& d, std::size_t budget = kDefaultBasisBudget);

    const Domain& domain() const { return domain_; }
    std::size_t size() const { return size_; }
    std::size_t label_width() const { return width_; }

    std::span<const int> label(std::size_t index) const {
        return {labels_.data() + index * width_, width_};
    }
    std::optional<std::size_t> index_of(std::span<const int> label) const;

    /// Per-box counts of label `index`, for either representation.
    Occupancy occupancy_of(std::size_t index) const;

    std::string label_string(std::size_t index) const;

  private:
    Basis() = default;

    Domain domain_;
    std::size_t size_ = 0;
    std::size_t width_ = 0;
    std::vector<int> labels_;
    std::map<std::vector<int>, std::size_t> fock_index_;
};

using BasisPtr = std::shared_ptr<const Basis>;

}  // namespace qpigeon

#endif  // QPIGEON_BASIS_HPP
