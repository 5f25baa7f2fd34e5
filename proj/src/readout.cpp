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

#include "qpigeon/readout.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "qpigeon/abl.hpp"
#include "qpigeon/errors.hpp"
#include "qpigeon/observables.hpp"

namespace qpigeon {

std::string to_string(const ParityPair& p) {
    return "parity(" + std::to_string(p.j) + "," + std::to_string(p.k) + ")";
}

std::string to_string(const ParityPattern& p) {
    std::string out = "(";
    for (std::size_t k = 0; k < p.size(); ++k) {
        out += (k ? "," : "") + std::string(p[k] > 0 ? "+1" : "-1");
    }
    return out + ")";
}

std::vector<ParityPair> all_parity_pairs(int particles) {
    std::vector<ParityPair> out;
    for (int j = 1; j <= particles; ++j) {
        for (int k = j + 1; k <= particles; ++k) {
            out.push_back({j, k});
        }
    }
    return out;
}

std::mt19937_64 shot_engine(std::uint64_t seed, std::uint64_t shot) {
    std::seed_seq seq{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32),
                      static_cast<std::uint32_t>(shot), static_cast<std::uint32_t>(shot >> 32)};
    return std::mt19937_64(seq);
}

double uniform01(std::mt19937_64& engine) { return static_cast<double>(engine() >> 11) * 0x1.0p-53; }

namespace {

void check_parities(const Domain& d, const std::vector<ParityPair>& parities) {
    if (d.representation != Representation::kDistinguishable || d.boxes != 2) {
        throw DomainMismatch("parity readout needs distinguishable particles in two boxes");
    }
    if (parities.empty()) {
        throw std::invalid_argument("no parity pairs requested");
    }
    for (const auto& p : parities) {
        if (p.j == p.k || p.j < 1 || p.k < 1 || p.j > d.particles || p.k > d.particles) {
            throw std::invalid_argument("invalid parity pair " + to_string(p));
        }
    }
}

/// Per eigenvalue pattern: w = <post|P_pattern|pre> and |P_pattern pre|^2.
struct PatternTable {
    std::vector<ParityPattern> patterns;
    std::vector<Float> weights;
    std::vector<double> prepared_norm2;
};

PatternTable pattern_table(const PrePost<Float>& pair, const std::vector<ParityPair>& parities) {
    check_parities(pair.domain(), parities);
    std::map<ParityPattern, std::size_t> index;
    PatternTable table;
    const auto& basis = pair.pre().basis();
    for (std::size_t k = 0; k < basis.size(); ++k) {
        auto label = basis.label(k);
        ParityPattern pattern;
        for (const auto& p : parities) {
            pattern.push_back(label[static_cast<std::size_t>(p.j - 1)] == label[static_cast<std::size_t>(p.k - 1)] ? 1
                                                                                                                  : -1);
        }
        auto [it, inserted] = index.try_emplace(pattern, table.patterns.size());
        if (inserted) {
            table.patterns.push_back(pattern);
            table.weights.emplace_back(0.0);
            table.prepared_norm2.push_back(0.0);
        }
        table.weights[it->second] += std::conj(pair.post().amplitude(k)) * pair.pre().amplitude(k);
        table.prepared_norm2[it->second] += std::norm(pair.pre().amplitude(k));
    }
    return table;
}

struct Branch {
    double prepare = 0.0;
    double postselect = 0.0;
};

/// Born probability of each pattern and the postselection probability of the collapsed state.
std::vector<Branch> branch_probabilities(const PrePost<Float>& pair, const PatternTable& table) {
    double pre2 = pair.pre().norm_squared();
    double post2 = pair.post().norm_squared();
    double zero = kFloatZeroTolerance * pair.norm_scale();
    std::vector<Branch> out;
    bool any = false;
    for (std::size_t b = 0; b < table.patterns.size(); ++b) {
        Branch br;
        br.prepare = table.prepared_norm2[b] / pre2;
        if (table.prepared_norm2[b] > 0.0 && std::abs(table.weights[b]) > zero) {
            br.postselect = std::min(1.0, std::norm(table.weights[b]) / (post2 * table.prepared_norm2[b]));
            any = true;
        }
        out.push_back(br);
    }
    if (!any) {
        throw ZeroOverlap("postselection probability vanishes on every measurement branch");
    }
    return out;
}

std::size_t pick(const std::vector<Branch>& branches, double u) {
    double acc = 0.0;
    for (std::size_t b = 0; b < branches.size(); ++b) {
        acc += branches[b].prepare;
        if (u < acc) {
            return b;
        }
    }
    // Rounding left u above the accumulated total: take the last populated branch.
    for (std::size_t b = branches.size(); b-- > 0;) {
        if (branches[b].prepare > 0.0) {
            return b;
        }
    }
    return branches.size() - 1;
}

}  // namespace

double StrongRunResult::conditional_plus() const {
    return postselected() == 0 ? 0.0 : static_cast<double>(postselected_plus) / static_cast<double>(postselected());
}

StrongRunResult strong_parity_run(const PrePost<Float>& pair, ParityPair parity, std::uint64_t shots,
                                  std::uint64_t seed, bool keep_records) {
    auto table = pattern_table(pair, {parity});
    auto branches = branch_probabilities(pair, table);
    StrongRunResult out;
    out.pair = parity;
    out.shots = shots;
    out.seed = seed;
    auto parity_obs = pair_parity(pair.domain(), parity.j, parity.k);
    auto spectrum = parity_obs.spectrum(pair.pre().basis());
    if (spectrum.contains(Rational(1))) {
        out.exact_conditional_plus = abl_probability(pair, parity_obs, Rational(1)).probability;
    }
    for (std::uint64_t shot = 0; shot < shots; ++shot) {
        auto engine = shot_engine(seed, shot);
        std::size_t b = pick(branches, uniform01(engine));
        bool plus = table.patterns[b][0] > 0;
        bool kept = uniform01(engine) < branches[b].postselect;
        (plus ? out.prepared_plus : out.prepared_minus) += 1;
        if (kept) {
            (plus ? out.postselected_plus : out.postselected_minus) += 1;
        }
        if (keep_records) {
            out.records.push_back({shot, {to_string(parity)}, {plus ? 1.0 : -1.0}, kept, seed});
        }
    }
    return out;
}

std::map<ParityPattern, double> SimultaneousRunResult::conditional() const {
    std::map<ParityPattern, double> out;
    for (const auto& [pattern, count] : postselected_counts) {
        out[pattern] = postselected == 0 ? 0.0 : static_cast<double>(count) / static_cast<double>(postselected);
    }
    return out;
}

bool SimultaneousRunResult::nondeterministic(double threshold) const {
    return std::count_if(exact_conditional.begin(), exact_conditional.end(),
                         [threshold](const auto& e) { return e.second > threshold; }) >= 2;
}

SimultaneousRunResult simultaneous_parity_run(const PrePost<Float>& pair, const std::vector<ParityPair>& parities,
                                              std::uint64_t shots, std::uint64_t seed, bool keep_records) {
    auto table = pattern_table(pair, parities);
    auto branches = branch_probabilities(pair, table);
    SimultaneousRunResult out;
    out.pairs = parities;
    out.shots = shots;
    out.seed = seed;
    double total = 0.0;
    for (const auto& w : table.weights) {
        total += std::norm(w);
    }
    for (std::size_t b = 0; b < table.patterns.size(); ++b) {
        out.exact_conditional[table.patterns[b]] = std::norm(table.weights[b]) / total;
        out.prepared_counts[table.patterns[b]] = 0;
        out.postselected_counts[table.patterns[b]] = 0;
    }
    std::vector<std::string> names;
    for (const auto& p : parities) {
        names.push_back(to_string(p));
    }
    for (std::uint64_t shot = 0; shot < shots; ++shot) {
        auto engine = shot_engine(seed, shot);
        std::size_t b = pick(branches, uniform01(engine));
        bool kept = uniform01(engine) < branches[b].postselect;
        const auto& pattern = table.patterns[b];
        ++out.prepared_counts[pattern];
        if (kept) {
            ++out.postselected_counts[pattern];
            ++out.postselected;
        }
        if (keep_records) {
            out.records.push_back({shot, names, std::vector<double>(pattern.begin(), pattern.end()), kept, seed});
        }
    }
    return out;
}

// ---- weak pointer readout -------------------------------------------------

namespace {

double normal_cdf(double z) { return 0.5 * std::erfc(-z / std::sqrt(2.0)); }

/// Unnormalized pointer amplitude exp(-x^2 / (4 sigma^2)).
double pointer_amplitude(double x, double sigma) { return std::exp(-x * x / (4.0 * sigma * sigma)); }

/// Integral of the product of two pointer amplitudes shifted by g*a and g*b,
/// relative to the unshifted norm.
double pointer_overlap(int a, int b, double g, double sigma) {
    double d = g * static_cast<double>(a - b);
    return std::exp(-d * d / (8.0 * sigma * sigma));
}

/// The conditional density of one reading is a signed combination of three
/// normal densities centred at +g, -g and 0 (the last from interference).
struct Mixture {
    double plus = 0.0;
    double minus = 0.0;
    double cross = 0.0;

    double mass() const { return plus + minus + cross; }
};

class WeakSampler {
  public:
    WeakSampler(const PatternTable& table, const PointerModel& pointer, std::size_t pointers)
        : table_(table), pointer_(pointer), pointers_(pointers) {
        if (!(pointer.coupling > 0.0) || !(pointer.spread > 0.0)) {
            throw std::invalid_argument("pointer coupling and spread must be positive");
        }
        if (pointer.grid_points < 16) {
            throw std::invalid_argument("pointer grid needs at least 16 points");
        }
        const double g = pointer.coupling;
        const double s = pointer.spread;
        half_width_ = pointer.range_spreads * s + g;
        step_ = 2.0 * half_width_ / static_cast<double>(pointer.grid_points - 1);
        cdf_plus_.resize(pointer.grid_points);
        cdf_minus_.resize(pointer.grid_points);
        cdf_zero_.resize(pointer.grid_points);
        for (std::size_t i = 0; i < pointer.grid_points; ++i) {
            double x = grid(i);
            cdf_plus_[i] = normal_cdf((x - g) / s);
            cdf_minus_[i] = normal_cdf((x + g) / s);
            cdf_zero_[i] = normal_cdf(x / s);
        }
        cross_damping_ = std::exp(-g * g / (2.0 * s * s));
    }

    double grid(std::size_t i) const { return -half_width_ + step_ * static_cast<double>(i); }

    /// Density of reading `which` given the readings before it, the later
    /// ones integrated out.
    Mixture conditional(std::size_t which, const std::vector<double>& previous) const {
        const double g = pointer_.coupling;
        const double s = pointer_.spread;
        const std::size_t n = table_.patterns.size();
        std::vector<Float> amp(n);
        for (std::size_t a = 0; a < n; ++a) {
            double factor = 1.0;
            for (std::size_t p = 0; p < which; ++p) {
                factor *= pointer_amplitude(previous[p] - g * table_.patterns[a][p], s);
            }
            amp[a] = table_.weights[a] * factor;
        }
        Float cpp = 0.0;
        Float cmm = 0.0;
        Float cpm = 0.0;
        for (std::size_t a = 0; a < n; ++a) {
            for (std::size_t b = 0; b < n; ++b) {
                double later = 1.0;
                for (std::size_t p = which + 1; p < pointers_; ++p) {
                    later *= pointer_overlap(table_.patterns[a][p], table_.patterns[b][p], g, s);
                }
                Float c = amp[a] * std::conj(amp[b]) * later;
                int la = table_.patterns[a][which];
                int lb = table_.patterns[b][which];
                if (la > 0 && lb > 0) {
                    cpp += c;
                } else if (la < 0 && lb < 0) {
                    cmm += c;
                } else if (la > 0) {
                    cpm += c;
                }
            }
        }
        return {cpp.real(), cmm.real(), 2.0 * cpm.real() * cross_damping_};
    }

    double cdf(const Mixture& m, std::size_t i) const {
        return m.plus * cdf_plus_[i] + m.minus * cdf_minus_[i] + m.cross * cdf_zero_[i];
    }

    double sample(const Mixture& m, double u) const {
        const std::size_t last = pointer_.grid_points - 1;
        double lo_mass = cdf(m, 0);
        double grid_mass = cdf(m, last) - lo_mass;
        double total = m.mass();
        if (!(total > 0.0)) {
            throw ZeroOverlap("postselected pointer density vanishes");
        }
        if ((total - grid_mass) / total > 1e-9) {
            throw std::runtime_error("pointer grid range too narrow: density mass leakage " +
                                     std::to_string((total - grid_mass) / total) + " exceeds 1e-9");
        }
        double target = lo_mass + u * grid_mass;
        std::size_t lo = 0;
        std::size_t hi = last;
        while (hi - lo > 1) {
            std::size_t mid = lo + (hi - lo) / 2;
            if (cdf(m, mid) <= target) {
                lo = mid;
            } else {
                hi = mid;
            }
        }
        double c_lo = cdf(m, lo);
        double c_hi = cdf(m, hi);
        double frac = c_hi > c_lo ? (target - c_lo) / (c_hi - c_lo) : 0.5;
        return grid(lo) + step_ * std::clamp(frac, 0.0, 1.0);
    }

  private:
    const PatternTable& table_;
    PointerModel pointer_;
    std::size_t pointers_;
    double half_width_ = 0.0;
    double step_ = 0.0;
    double cross_damping_ = 1.0;
    std::vector<double> cdf_plus_;
    std::vector<double> cdf_minus_;
    std::vector<double> cdf_zero_;
};

double marginal_mean_by_quadrature(const PatternTable& table, const PointerModel& pointer, std::size_t pointers,
                                   std::size_t which) {
    const double g = pointer.coupling;
    const double s = pointer.spread;
    const std::size_t n = table.patterns.size();
    // Real part of w_a conj(w_b) times the overlaps of every other pointer.
    std::vector<double> coef(n * n);
    for (std::size_t a = 0; a < n; ++a) {
        for (std::size_t b = 0; b < n; ++b) {
            double others = 1.0;
            for (std::size_t p = 0; p < pointers; ++p) {
                if (p != which) {
                    others *= pointer_overlap(table.patterns[a][p], table.patterns[b][p], g, s);
                }
            }
            coef[a * n + b] = (table.weights[a] * std::conj(table.weights[b])).real() * others;
        }
    }
    const double half = pointer.range_spreads * s + g;
    const std::size_t points = pointer.grid_points;
    const double h = 2.0 * half / static_cast<double>(points - 1);
    double mass = 0.0;
    double first = 0.0;
    for (std::size_t i = 0; i < points; ++i) {
        double x = -half + h * static_cast<double>(i);
        double density = 0.0;
        for (std::size_t a = 0; a < n; ++a) {
            double ga = pointer_amplitude(x - g * table.patterns[a][which], s);
            for (std::size_t b = 0; b < n; ++b) {
                density += coef[a * n + b] * ga * pointer_amplitude(x - g * table.patterns[b][which], s);
            }
        }
        double w = (i == 0 || i + 1 == points) ? 0.5 : 1.0;
        mass += w * density;
        first += w * density * x;
    }
    if (!(mass > 0.0)) {
        throw ZeroOverlap("postselected pointer density vanishes");
    }
    return first / mass / g;
}

}  // namespace

double conditional_mean_over_coupling(const PrePost<Float>& pair, const std::vector<ParityPair>& parities,
                                      const PointerModel& pointer, std::size_t which) {
    if (which >= parities.size()) {
        throw std::out_of_range("pointer index out of range");
    }
    auto table = pattern_table(pair, parities);
    return marginal_mean_by_quadrature(table, pointer, parities.size(), which);
}

WeakRunResult weak_parity_run(const PrePost<Float>& pair, const std::vector<ParityPair>& parities,
                              const PointerModel& pointer, std::uint64_t shots, std::uint64_t seed,
                              bool keep_records) {
    auto table = pattern_table(pair, parities);
    const std::size_t pointers = parities.size();
    WeakSampler sampler(table, pointer, pointers);

    WeakRunResult out;
    out.pairs = parities;
    out.pointer = pointer;
    out.shots = shots;
    out.seed = seed;
    if (pointer.coupling / pointer.spread > 0.3) {
        std::ostringstream msg;
        msg << "coupling/spread = " << pointer.coupling / pointer.spread
            << " exceeds 0.3; readings are outside the weak regime";
        out.warnings.push_back(msg.str());
    }
    {
        double joint = 0.0;
        for (std::size_t a = 0; a < table.patterns.size(); ++a) {
            for (std::size_t b = 0; b < table.patterns.size(); ++b) {
                double ov = 1.0;
                for (std::size_t p = 0; p < pointers; ++p) {
                    ov *= pointer_overlap(table.patterns[a][p], table.patterns[b][p], pointer.coupling, pointer.spread);
                }
                joint += (table.weights[a] * std::conj(table.weights[b])).real() * ov;
            }
        }
        out.postselection_probability = joint / (pair.pre().norm_squared() * pair.post().norm_squared());
    }

    std::vector<double> sum(pointers, 0.0);
    std::vector<double> sum_sq(pointers, 0.0);
    std::vector<std::string> names;
    for (const auto& p : parities) {
        names.push_back(to_string(p));
    }
    // The first reading's density does not depend on the shot.
    Mixture first = sampler.conditional(0, {});
    std::vector<double> readings(pointers);
    for (std::uint64_t shot = 0; shot < shots; ++shot) {
        auto engine = shot_engine(seed, shot);
        for (std::size_t p = 0; p < pointers; ++p) {
            Mixture m = p == 0 ? first : sampler.conditional(p, readings);
            readings[p] = sampler.sample(m, uniform01(engine));
            sum[p] += readings[p];
            sum_sq[p] += readings[p] * readings[p];
        }
        if (keep_records) {
            out.records.push_back({shot, names, readings, true, seed});
        }
    }
    const double n = static_cast<double>(shots);
    for (std::size_t p = 0; p < pointers; ++p) {
        double mean = shots == 0 ? 0.0 : sum[p] / n;
        double var = shots < 2 ? 0.0 : (sum_sq[p] - n * mean * mean) / (n - 1.0);
        out.estimates.push_back(mean / pointer.coupling);
        out.standard_errors.push_back(shots == 0 ? 0.0 : std::sqrt(std::max(var, 0.0) / n) / pointer.coupling);
        out.expected.push_back(marginal_mean_by_quadrature(table, pointer, pointers, p));
    }
    return out;
}

}  // namespace qpigeon
