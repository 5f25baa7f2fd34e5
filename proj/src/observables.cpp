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

#include "qpigeon/observables.hpp"

#include <algorithm>
#include <cctype>

#include "qpigeon/errors.hpp"

namespace qpigeon {

const char* to_string(Relation r) {
    switch (r) {
        case Relation::kGreater:
            return ">";
        case Relation::kAtMost:
            return "<=";
        case Relation::kEqual:
            return "=";
    }
    return "?";
}

std::vector<Rational> DiagonalObservable::eigenvalues(const Basis& basis) const {
    require_same_domain(domain_, basis.domain(), descriptor_);
    std::vector<Rational> out;
    out.reserve(basis.size());
    for (std::size_t k = 0; k < basis.size(); ++k) {
        out.push_back(fn_(basis, k));
    }
    return out;
}

std::set<Rational> DiagonalObservable::spectrum(const Basis& basis) const {
    auto eigs = eigenvalues(basis);
    return {eigs.begin(), eigs.end()};
}

namespace {

void check_box(const Domain& d, int box) {
    if (box < 0 || box >= d.boxes) {
        throw std::invalid_argument("box " + std::to_string(box) + " out of range for " + to_string(d));
    }
}

void check_particles(const Domain& d, std::span<const int> particles, const char* what) {
    if (d.representation != Representation::kDistinguishable) {
        throw DomainMismatch(std::string(what) + " needs distinguishable particles");
    }
    if (particles.empty()) {
        throw std::invalid_argument(std::string(what) + ": empty particle set");
    }
    std::set<int> seen;
    for (int p : particles) {
        if (p < 1 || p > d.particles) {
            throw std::invalid_argument(std::string(what) + ": particle " + std::to_string(p) +
                                        " out of range 1.." + std::to_string(d.particles));
        }
        if (!seen.insert(p).second) {
            throw std::invalid_argument(std::string(what) + ": repeated particle " + std::to_string(p));
        }
    }
}

void check_two_boxes(const Domain& d, const char* what) {
    if (d.boxes != 2) {
        throw std::invalid_argument(std::string(what) + " is defined for two boxes only");
    }
    if (d.representation != Representation::kDistinguishable) {
        throw DomainMismatch(std::string(what) + " needs distinguishable particles");
    }
}

std::string particle_set(std::span<const int> particles) {
    std::string s = "{";
    for (std::size_t k = 0; k < particles.size(); ++k) {
        s += (k ? "," : "") + std::to_string(particles[k]);
    }
    return s + "}";
}

int count_in_box(const Basis& basis, std::size_t index, int box) {
    auto lab = basis.label(index);
    if (basis.domain().representation == Representation::kFock) {
        return lab[static_cast<std::size_t>(box)];
    }
    return static_cast<int>(std::count(lab.begin(), lab.end(), box));
}

void require_same(const DiagonalObservable& a, const DiagonalObservable& b) {
    require_same_domain(a.domain(), b.domain(), "observable algebra");
}

}  // namespace

DiagonalObservable identity(const Domain& d) {
    return {d, "identity", [](const Basis&, std::size_t) { return Rational(1); }, true};
}

DiagonalObservable count_projector(const Domain& d, int box, Relation relation, int count) {
    check_box(d, box);
    if (count < 0 || count > d.particles) {
        throw std::invalid_argument("count " + std::to_string(count) + " outside 0.." + std::to_string(d.particles));
    }
    std::string desc = std::string("count(") + box_letter(box) + "," + to_string(relation) + "," +
                       std::to_string(count) + ")";
    return {d, desc,
            [box, relation, count](const Basis& basis, std::size_t index) -> Rational {
                int n = count_in_box(basis, index, box);
                bool hit = relation == Relation::kGreater ? n > count
                           : relation == Relation::kAtMost ? n <= count
                                                           : n == count;
                return Rational(hit ? 1 : 0);
            },
            true};
}

DiagonalObservable subset_in_box_projector(const Domain& d, std::span<const int> particles, int box) {
    check_particles(d, particles, "subset projector");
    check_box(d, box);
    std::vector<int> members(particles.begin(), particles.end());
    std::string desc = "subset(" + particle_set(particles) + "," + box_letter(box) + ")";
    return {d, desc,
            [members, box](const Basis& basis, std::size_t index) -> Rational {
                auto lab = basis.label(index);
                for (int p : members) {
                    if (lab[static_cast<std::size_t>(p - 1)] != box) {
                        return Rational(0);
                    }
                }
                return Rational(1);
            },
            true};
}

DiagonalObservable subset_in_box_projector(const Domain& d, std::initializer_list<int> particles, int box) {
    return subset_in_box_projector(d, std::span<const int>(particles.begin(), particles.size()), box);
}

DiagonalObservable particle_in_box(const Domain& d, int particle, int box) {
    return subset_in_box_projector(d, {particle}, box);
}

DiagonalObservable same_box_projector(const Domain& d, std::span<const int> particles) {
    check_particles(d, particles, "same-box projector");
    if (particles.size() < 2) {
        throw std::invalid_argument("same-box projector needs at least two particles");
    }
    std::vector<int> members(particles.begin(), particles.end());
    return {d, "same(" + particle_set(particles) + ")",
            [members](const Basis& basis, std::size_t index) -> Rational {
                auto lab = basis.label(index);
                int first = lab[static_cast<std::size_t>(members[0] - 1)];
                for (int p : members) {
                    if (lab[static_cast<std::size_t>(p - 1)] != first) {
                        return Rational(0);
                    }
                }
                return Rational(1);
            },
            true};
}

DiagonalObservable same_box_projector(const Domain& d, std::initializer_list<int> particles) {
    return same_box_projector(d, std::span<const int>(particles.begin(), particles.size()));
}

DiagonalObservable sigma_z(const Domain& d, int particle) {
    check_two_boxes(d, "sigma_z");
    int one[] = {particle};
    check_particles(d, one, "sigma_z");
    return {d, "sigma_z(" + std::to_string(particle) + ")",
            [particle](const Basis& basis, std::size_t index) -> Rational {
                return Rational(basis.label(index)[static_cast<std::size_t>(particle - 1)] == 0 ? 1 : -1);
            },
            false};
}

DiagonalObservable pair_parity(const Domain& d, int j, int k) {
    check_two_boxes(d, "pair parity");
    if (j == k) {
        throw std::invalid_argument("pair parity needs two distinct particles");
    }
    int both[] = {j, k};
    check_particles(d, both, "pair parity");
    return {d, "parity(" + std::to_string(j) + "," + std::to_string(k) + ")",
            [j, k](const Basis& basis, std::size_t index) -> Rational {
                auto lab = basis.label(index);
                return Rational(lab[static_cast<std::size_t>(j - 1)] == lab[static_cast<std::size_t>(k - 1)] ? 1 : -1);
            },
            false};
}

DiagonalObservable complement(const DiagonalObservable& p) {
    return {p.domain(), "not(" + p.descriptor() + ")",
            [p](const Basis& basis, std::size_t index) -> Rational { return Rational(1) - p.eigenvalue(basis, index); },
            p.is_projector()};
}

DiagonalObservable product(const DiagonalObservable& a, const DiagonalObservable& b) {
    require_same(a, b);
    return {a.domain(), "prod(" + a.descriptor() + "," + b.descriptor() + ")",
            [a, b](const Basis& basis, std::size_t index) -> Rational {
                return Rational(a.eigenvalue(basis, index) * b.eigenvalue(basis, index));
            },
            a.is_projector() && b.is_projector()};
}

DiagonalObservable sum(const DiagonalObservable& a, const DiagonalObservable& b) {
    require_same(a, b);
    return {a.domain(), "sum(" + a.descriptor() + "," + b.descriptor() + ")",
            [a, b](const Basis& basis, std::size_t index) -> Rational {
                return Rational(a.eigenvalue(basis, index) + b.eigenvalue(basis, index));
            },
            false};
}

DiagonalObservable eigenspace_projector(const DiagonalObservable& o, const Rational& value) {
    return {o.domain(), "eig(" + o.descriptor() + "," + value.get_str() + ")",
            [o, value](const Basis& basis, std::size_t index) -> Rational {
                return Rational(o.eigenvalue(basis, index) == value ? 1 : 0);
            },
            true};
}

bool pointwise_equal(const DiagonalObservable& a, const DiagonalObservable& b) {
    if (!(a.domain() == b.domain())) {
        return false;
    }
    auto basis = Basis::for_domain(a.domain());
    for (std::size_t k = 0; k < basis->size(); ++k) {
        if (a.eigenvalue(*basis, k) != b.eigenvalue(*basis, k)) {
            return false;
        }
    }
    return true;
}

bool pigeonhole_identity_check(int particles, int threshold) {
    Domain d{Representation::kDistinguishable, particles, 2};
    auto both = sum(count_projector(d, 0, Relation::kGreater, threshold),
                    count_projector(d, 1, Relation::kGreater, threshold));
    return pointwise_equal(both, identity(d));
}

namespace {

class DescriptorParser {
  public:
    DescriptorParser(const Domain& d, const std::string& text) : d_(d), text_(text) {}

    DiagonalObservable parse() {
        auto o = observable();
        skip_spaces();
        if (pos_ != text_.size()) {
            fail("trailing characters");
        }
        return o;
    }

  private:
    [[noreturn]] void fail(const std::string& why) const {
        throw ConfigError("observable '" + text_ + "' at column " + std::to_string(pos_ + 1) + ": " + why);
    }

    void skip_spaces() {
        while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_]))) {
            ++pos_;
        }
    }

    void expect(char c) {
        skip_spaces();
        if (pos_ >= text_.size() || text_[pos_] != c) {
            fail(std::string("expected '") + c + "'");
        }
        ++pos_;
    }

    std::string word() {
        skip_spaces();
        std::size_t start = pos_;
        while (pos_ < text_.size() && (std::isalnum(static_cast<unsigned char>(text_[pos_])) || text_[pos_] == '_')) {
            ++pos_;
        }
        if (start == pos_) {
            fail("expected a name");
        }
        return text_.substr(start, pos_ - start);
    }

    int integer() {
        skip_spaces();
        std::size_t start = pos_;
        while (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_]))) {
            ++pos_;
        }
        if (start == pos_) {
            fail("expected an integer");
        }
        return std::stoi(text_.substr(start, pos_ - start));
    }

    int box() {
        std::string w = word();
        if (w.size() != 1 || w[0] < 'A' || w[0] > 'Z') {
            fail("expected a box letter");
        }
        return w[0] - 'A';
    }

    std::vector<int> particle_list() {
        expect('{');
        std::vector<int> out{integer()};
        skip_spaces();
        while (pos_ < text_.size() && text_[pos_] == ',') {
            ++pos_;
            out.push_back(integer());
            skip_spaces();
        }
        expect('}');
        return out;
    }

    Relation relation() {
        skip_spaces();
        if (text_.compare(pos_, 2, "<=") == 0) {
            pos_ += 2;
            return Relation::kAtMost;
        }
        if (pos_ < text_.size() && text_[pos_] == '>') {
            ++pos_;
            return Relation::kGreater;
        }
        if (pos_ < text_.size() && text_[pos_] == '=') {
            ++pos_;
            return Relation::kEqual;
        }
        fail("expected one of >, <=, =");
    }

    template <class F>
    DiagonalObservable guarded(F&& build) {
        try {
            return build();
        } catch (const ConfigError&) {
            throw;
        } catch (const std::exception& e) {
            fail(e.what());
        }
    }

    DiagonalObservable observable() {
        std::string name = word();
        if (name == "identity") {
            return identity(d_);
        }
        expect('(');
        DiagonalObservable result = [&]() -> DiagonalObservable {
            if (name == "count") {
                int x = box();
                expect(',');
                Relation r = relation();
                expect(',');
                int k = integer();
                return guarded([&] { return count_projector(d_, x, r, k); });
            }
            if (name == "subset") {
                auto ps = particle_list();
                expect(',');
                int x = box();
                return guarded([&] { return subset_in_box_projector(d_, ps, x); });
            }
            if (name == "same") {
                auto ps = particle_list();
                return guarded([&] { return same_box_projector(d_, ps); });
            }
            if (name == "parity") {
                int j = integer();
                expect(',');
                int k = integer();
                return guarded([&] { return pair_parity(d_, j, k); });
            }
            if (name == "sigma_z") {
                int n = integer();
                return guarded([&] { return sigma_z(d_, n); });
            }
            if (name == "not") {
                return complement(observable());
            }
            if (name == "prod" || name == "sum") {
                auto a = observable();
                expect(',');
                auto b = observable();
                return name == "prod" ? product(a, b) : sum(a, b);
            }
            fail("unknown observable '" + name + "'");
        }();
        expect(')');
        return result;
    }

    Domain d_;
    std::string text_;
    std::size_t pos_ = 0;
};

}  // namespace

DiagonalObservable parse_observable(const Domain& d, const std::string& descriptor) {
    return DescriptorParser(d, descriptor).parse();
}

}  // namespace qpigeon
