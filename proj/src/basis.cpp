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

#include "qpigeon/basis.hpp"

#include <stdexcept>

#include "qpigeon/errors.hpp"

namespace qpigeon {

const char* to_string(Representation rep) {
    return rep == Representation::kDistinguishable ? "distinguishable" : "fock";
}

std::string to_string(const Domain& d) {
    return std::string(to_string(d.representation)) + "(N=" + std::to_string(d.particles) +
           ",M=" + std::to_string(d.boxes) + ")";
}

char box_letter(int box) {
    if (box < 0 || box >= 26) {
        throw std::out_of_range("box index out of range: " + std::to_string(box));
    }
    return static_cast<char>('A' + box);
}

int box_from_letter(char letter) {
    if (letter < 'A' || letter > 'Z') {
        throw ConfigError(std::string("not a box letter: '") + letter + "'");
    }
    return letter - 'A';
}

std::string to_string(const Configuration& c) {
    std::string s;
    s.reserve(c.boxes.size());
    for (int b : c.boxes) {
        s += box_letter(b);
    }
    return s;
}

Configuration parse_configuration(const std::string& text, int boxes) {
    Configuration c;
    for (char letter : text) {
        int b = box_from_letter(letter);
        if (b >= boxes) {
            throw ConfigError("configuration '" + text + "' uses box " + letter + " but only " +
                              std::to_string(boxes) + " boxes exist");
        }
        c.boxes.push_back(b);
    }
    return c;
}

std::optional<std::uint64_t> checked_power(int base, int exponent) {
    std::uint64_t result = 1;
    for (int k = 0; k < exponent; ++k) {
        if (result > UINT64_MAX / static_cast<std::uint64_t>(base)) {
            return std::nullopt;
        }
        result *= static_cast<std::uint64_t>(base);
    }
    return result;
}

namespace {

std::uint64_t checked_size(int particles, int boxes, std::size_t budget) {
    if (particles < 1) {
        throw std::invalid_argument("need at least one particle");
    }
    if (boxes < 2 || boxes > 26) {
        throw std::invalid_argument("need between 2 and 26 boxes");
    }
    auto size = checked_power(boxes, particles);
    if (!size || *size > budget) {
        throw ResourceLimit("basis of " + std::to_string(boxes) + "^" + std::to_string(particles) + " = " +
                            (size ? std::to_string(*size) : std::string("overflow")) +
                            " configurations exceeds budget of " + std::to_string(budget));
    }
    return *size;
}

}  // namespace

std::vector<Configuration> enumerate_configurations(int particles, int boxes, std::size_t budget) {
    auto basis = Basis::distinguishable(particles, boxes, budget);
    std::vector<Configuration> out;
    out.reserve(basis->size());
    for (std::size_t k = 0; k < basis->size(); ++k) {
        auto lab = basis->label(k);
        out.push_back(Configuration{{lab.begin(), lab.end()}});
    }
    return out;
}

Occupancy occupancy(const Configuration& c, int boxes) {
    Occupancy occ(static_cast<std::size_t>(boxes), 0);
    for (int b : c.boxes) {
        if (b < 0 || b >= boxes) {
            throw std::out_of_range("configuration entry out of range");
        }
        ++occ[static_cast<std::size_t>(b)];
    }
    return occ;
}

BasisPtr Basis::distinguishable(int particles, int boxes, std::size_t budget) {
    std::uint64_t size = checked_size(particles, boxes, budget);
    auto basis = std::shared_ptr<Basis>(new Basis());
    basis->domain_ = {Representation::kDistinguishable, particles, boxes};
    basis->size_ = size;
    basis->width_ = static_cast<std::size_t>(particles);
    basis->labels_.resize(size * basis->width_);
    for (std::uint64_t index = 0; index < size; ++index) {
        std::uint64_t rest = index;
        for (int p = particles - 1; p >= 0; --p) {
            basis->labels_[index * basis->width_ + static_cast<std::size_t>(p)] =
                static_cast<int>(rest % static_cast<std::uint64_t>(boxes));
            rest /= static_cast<std::uint64_t>(boxes);
        }
    }
    return basis;
}

namespace {

void compositions(int remaining, int boxes, std::vector<int>& prefix, std::vector<int>& out) {
    if (static_cast<int>(prefix.size()) == boxes - 1) {
        prefix.push_back(remaining);
        out.insert(out.end(), prefix.begin(), prefix.end());
        prefix.pop_back();
        return;
    }
    for (int n = 0; n <= remaining; ++n) {
        prefix.push_back(n);
        compositions(remaining - n, boxes, prefix, out);
        prefix.pop_back();
    }
}

}  // namespace

BasisPtr Basis::fock(int boxes, int particles) {
    if (particles < 1) {
        throw std::invalid_argument("need at least one particle");
    }
    if (boxes < 2 || boxes > 26) {
        throw std::invalid_argument("need between 2 and 26 boxes");
    }
    auto basis = std::shared_ptr<Basis>(new Basis());
    basis->domain_ = {Representation::kFock, particles, boxes};
    basis->width_ = static_cast<std::size_t>(boxes);
    std::vector<int> prefix;
    compositions(particles, boxes, prefix, basis->labels_);
    basis->size_ = basis->labels_.size() / basis->width_;
    for (std::size_t k = 0; k < basis->size_; ++k) {
        auto lab = basis->label(k);
        basis->fock_index_.emplace(std::vector<int>(lab.begin(), lab.end()), k);
    }
    return basis;
}

BasisPtr Basis::for_domain(const Domain& d, std::size_t budget) {
    return d.representation == Representation::kDistinguishable ? distinguishable(d.particles, d.boxes, budget)
                                                                : fock(d.boxes, d.particles);
}

std::optional<std::size_t> Basis::index_of(std::span<const int> label) const {
    if (label.size() != width_) {
        return std::nullopt;
    }
    if (domain_.representation == Representation::kFock) {
        auto it = fock_index_.find(std::vector<int>(label.begin(), label.end()));
        if (it == fock_index_.end()) {
            return std::nullopt;
        }
        return it->second;
    }
    std::size_t index = 0;
    for (int b : label) {
        if (b < 0 || b >= domain_.boxes) {
            return std::nullopt;
        }
        index = index * static_cast<std::size_t>(domain_.boxes) + static_cast<std::size_t>(b);
    }
    return index;
}

Occupancy Basis::occupancy_of(std::size_t index) const {
    auto lab = label(index);
    if (domain_.representation == Representation::kFock) {
        return {lab.begin(), lab.end()};
    }
    Occupancy occ(static_cast<std::size_t>(domain_.boxes), 0);
    for (int b : lab) {
        ++occ[static_cast<std::size_t>(b)];
    }
    return occ;
}

std::string Basis::label_string(std::size_t index) const {
    auto lab = label(index);
    if (domain_.representation == Representation::kDistinguishable) {
        return to_string(Configuration{{lab.begin(), lab.end()}});
    }
    std::string s = "(";
    for (std::size_t k = 0; k < lab.size(); ++k) {
        s += (k ? "," : "") + std::to_string(lab[k]);
    }
    return s + ")";
}

}  // namespace qpigeon
