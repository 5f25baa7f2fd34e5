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

#include "qpigeon/trace.hpp"

#include <cmath>
#include <set>

#include "qpigeon/errors.hpp"

namespace qpigeon {

// ---- EpsSeries ------------------------------------------------------------

EpsSeries::EpsSeries(int truncation) {
    if (truncation < 0) {
        throw std::invalid_argument("negative truncation order");
    }
    coeffs_.assign(static_cast<std::size_t>(truncation) + 1, Exact(0));
}

EpsSeries::EpsSeries(const Exact& constant, int truncation) : EpsSeries(truncation) { coeffs_[0] = constant; }

namespace {

Rational inverse_factorial(int n) {
    mpz_class f = 1;
    for (int k = 2; k <= n; ++k) {
        f *= k;
    }
    return Rational(mpz_class(1), f);
}

}  // namespace

EpsSeries EpsSeries::cos_series(int truncation) {
    EpsSeries s(truncation);
    for (int p = 0; p <= truncation; p += 2) {
        Rational c = inverse_factorial(p);
        s.coeffs_[static_cast<std::size_t>(p)] = Exact((p / 2) % 2 == 0 ? c : Rational(-c));
    }
    return s;
}

EpsSeries EpsSeries::sin_series(int truncation) {
    EpsSeries s(truncation);
    for (int p = 1; p <= truncation; p += 2) {
        Rational c = inverse_factorial(p);
        s.coeffs_[static_cast<std::size_t>(p)] = Exact((p / 2) % 2 == 0 ? c : Rational(-c));
    }
    return s;
}

const Exact& EpsSeries::coefficient(int power) const {
    static const Exact kZero(0);
    if (power < 0 || power > truncation()) {
        return kZero;
    }
    return coeffs_[static_cast<std::size_t>(power)];
}

void EpsSeries::set_coefficient(int power, Exact value) {
    if (power < 0 || power > truncation()) {
        throw std::out_of_range("power beyond truncation order");
    }
    coeffs_[static_cast<std::size_t>(power)] = std::move(value);
}

bool EpsSeries::is_zero() const { return !leading_order().has_value(); }

std::optional<int> EpsSeries::leading_order() const {
    for (std::size_t p = 0; p < coeffs_.size(); ++p) {
        if (!coeffs_[p].is_zero()) {
            return static_cast<int>(p);
        }
    }
    return std::nullopt;
}

Float EpsSeries::evaluate(double eps) const {
    Float total = 0.0;
    double power = 1.0;
    for (const auto& c : coeffs_) {
        total += to_float(c) * power;
        power *= eps;
    }
    return total;
}

EpsSeries& EpsSeries::operator+=(const EpsSeries& o) {
    if (o.truncation() != truncation()) {
        throw std::invalid_argument("mismatched truncation orders");
    }
    for (std::size_t p = 0; p < coeffs_.size(); ++p) {
        coeffs_[p] += o.coeffs_[p];
    }
    return *this;
}

EpsSeries& EpsSeries::operator-=(const EpsSeries& o) {
    if (o.truncation() != truncation()) {
        throw std::invalid_argument("mismatched truncation orders");
    }
    for (std::size_t p = 0; p < coeffs_.size(); ++p) {
        coeffs_[p] -= o.coeffs_[p];
    }
    return *this;
}

EpsSeries& EpsSeries::operator*=(const EpsSeries& o) {
    if (o.truncation() != truncation()) {
        throw std::invalid_argument("mismatched truncation orders");
    }
    std::vector<Exact> out(coeffs_.size(), Exact(0));
    for (std::size_t a = 0; a < coeffs_.size(); ++a) {
        if (coeffs_[a].is_zero()) {
            continue;
        }
        for (std::size_t b = 0; a + b < coeffs_.size(); ++b) {
            if (!o.coeffs_[b].is_zero()) {
                out[a + b] += coeffs_[a] * o.coeffs_[b];
            }
        }
    }
    coeffs_ = std::move(out);
    return *this;
}

EpsSeries& EpsSeries::operator*=(const Exact& scalar) {
    for (auto& c : coeffs_) {
        c *= scalar;
    }
    return *this;
}

EpsSeries operator-(const EpsSeries& a) {
    EpsSeries out = a;
    out *= Exact(-1);
    return out;
}

std::string to_string(const EpsSeries& s) {
    std::string out;
    for (int p = 0; p <= s.truncation(); ++p) {
        const Exact& c = s.coefficient(p);
        if (c.is_zero()) {
            continue;
        }
        std::string term = "(" + to_string(c) + ")";
        if (p == 1) {
            term += "e";
        } else if (p > 1) {
            term += "e^" + std::to_string(p);
        }
        out += (out.empty() ? "" : " + ") + term;
    }
    return out.empty() ? "0 + O(e^" + std::to_string(s.truncation() + 1) + ")"
                       : out + " + O(e^" + std::to_string(s.truncation() + 1) + ")";
}

// ---- couplings ------------------------------------------------------------

EnvCoupling local_couplings(int particles, int boxes, std::span<const int> coupled) {
    if (boxes < 2) {
        throw std::invalid_argument("need at least two boxes");
    }
    EnvCoupling env;
    env.particles = particles;
    env.boxes = boxes;
    std::set<int> seen;
    for (int j : coupled) {
        if (j < 1 || j > particles || !seen.insert(j).second) {
            throw std::invalid_argument("invalid or repeated coupled particle " + std::to_string(j));
        }
        for (int x = 0; x < boxes; ++x) {
            env.couplings.push_back({j, x, env.mode_count()});
            env.mode_labels.push_back(std::to_string(j) + box_letter(x));
        }
    }
    if (env.mode_count() > 63) {
        throw ResourceLimit("more than 63 environment modes");
    }
    return env;
}

EnvCoupling default_couplings(int particles, int boxes) {
    std::vector<int> all;
    for (int j = 1; j <= particles; ++j) {
        all.push_back(j);
    }
    return local_couplings(particles, boxes, all);
}

EnvCoupling nonlocal_parity_couplings(int particles, int j, int k) {
    if (j == k) {
        throw std::invalid_argument("nonlocal parity couplings need two distinct particles");
    }
    if (j < 1 || k < 1 || j > particles || k > particles) {
        throw std::invalid_argument("particle index out of range");
    }
    EnvCoupling env;
    env.particles = particles;
    env.boxes = 2;
    env.mode_labels = {"I", "II"};
    env.couplings = {{j, 0, 0}, {k, 1, 0}, {k, 0, 1}, {j, 1, 1}};
    return env;
}

Mask parse_mask(const EnvCoupling& env, const std::string& text) {
    std::string body = text;
    if (!body.empty() && body.front() == '{') {
        body.erase(0, 1);
    }
    if (!body.empty() && body.back() == '}') {
        body.pop_back();
    }
    Mask mask = 0;
    std::size_t start = 0;
    while (start <= body.size()) {
        std::size_t comma = body.find(',', start);
        std::string label = body.substr(start, comma == std::string::npos ? std::string::npos : comma - start);
        while (!label.empty() && label.front() == ' ') {
            label.erase(0, 1);
        }
        while (!label.empty() && label.back() == ' ') {
            label.pop_back();
        }
        if (!label.empty()) {
            bool found = false;
            for (int m = 0; m < env.mode_count(); ++m) {
                if (env.mode_labels[static_cast<std::size_t>(m)] == label) {
                    mask |= Mask{1} << m;
                    found = true;
                    break;
                }
            }
            if (!found) {
                throw ConfigError("unknown environment mode '" + label + "' in mask " + text);
            }
        }
        if (comma == std::string::npos) {
            break;
        }
        start = comma + 1;
    }
    return mask;
}

std::string mask_to_string(const EnvCoupling& env, Mask mask) {
    std::string out = "{";
    bool first = true;
    for (int m = 0; m < env.mode_count(); ++m) {
        if (mask & (Mask{1} << m)) {
            out += (first ? "" : ",") + env.mode_labels[static_cast<std::size_t>(m)];
            first = false;
        }
    }
    return out + "}";
}

std::vector<int> excitation_signature(const EnvCoupling& env, std::span<const int> configuration) {
    std::vector<int> hits(static_cast<std::size_t>(env.mode_count()), 0);
    for (const auto& c : env.couplings) {
        if (configuration[static_cast<std::size_t>(c.particle - 1)] == c.box) {
            ++hits[static_cast<std::size_t>(c.mode)];
        }
    }
    return hits;
}

// ---- evolution ------------------------------------------------------------

namespace {

void check_env(const Domain& d, const EnvCoupling& env) {
    if (d.representation != Representation::kDistinguishable) {
        throw DomainMismatch("environment couplings need distinguishable particles");
    }
    if (d.particles != env.particles || d.boxes != env.boxes) {
        throw DomainMismatch("couplings declared for N=" + std::to_string(env.particles) + ", M=" +
                             std::to_string(env.boxes) + " but state is " + to_string(d));
    }
    for (const auto& c : env.couplings) {
        if (c.particle < 1 || c.particle > d.particles || c.box < 0 || c.box >= d.boxes || c.mode < 0 ||
            c.mode >= env.mode_count()) {
            throw std::invalid_argument("coupling out of range");
        }
    }
}

template <class S, class E>
JointState<S> evolve(const State<S>& pre, const EnvCoupling& env, const E& ground, const E& zero, const E& cos_e,
                     const E& sin_e) {
    check_env(pre.domain(), env);
    const auto modes = static_cast<std::size_t>(env.mode_count());
    std::vector<ModeAmplitude<E>> amps(pre.size() * modes, ModeAmplitude<E>{ground, zero});
    for (std::size_t k = 0; k < pre.size(); ++k) {
        auto label = pre.basis().label(k);
        for (const auto& c : env.couplings) {
            if (label[static_cast<std::size_t>(c.particle - 1)] != c.box) {
                continue;
            }
            auto& m = amps[k * modes + static_cast<std::size_t>(c.mode)];
            E g = cos_e * m.ground - sin_e * m.excited;
            E x = sin_e * m.ground + cos_e * m.excited;
            m.ground = std::move(g);
            m.excited = std::move(x);
        }
    }
    return JointState<S>{pre, env, std::move(amps)};
}

}  // namespace

JointState<Exact> evolve_with_environment(const State<Exact>& pre, const EnvCoupling& env, SeriesBackend backend) {
    if (backend.truncation < 2) {
        throw std::invalid_argument("series truncation order must be at least 2");
    }
    int t = backend.truncation;
    return evolve<Exact>(pre, env, EpsSeries(Exact(1), t), EpsSeries(t), EpsSeries::cos_series(t),
                         EpsSeries::sin_series(t));
}

JointState<Float> evolve_with_environment(const State<Float>& pre, const EnvCoupling& env, FloatBackend backend) {
    if (!(backend.eps > 0.0)) {
        throw std::invalid_argument("coupling angle must be positive");
    }
    return evolve<Float>(pre, env, Float(1.0), Float(0.0), Float(std::cos(backend.eps)), Float(std::sin(backend.eps)));
}

template <>
double JointState<Exact>::norm_squared() const {
    // Exact series have no finite norm; evaluate at eps = 0 is meaningless.
    throw std::logic_error("norm of a series-valued joint state is undefined");
}

template <>
double JointState<Float>::norm_squared() const {
    double total = 0.0;
    const auto m_count = static_cast<std::size_t>(env.mode_count());
    for (std::size_t k = 0; k < system.size(); ++k) {
        double env_norm = 1.0;
        for (std::size_t m = 0; m < m_count; ++m) {
            const auto& a = modes[k * m_count + m];
            env_norm *= std::norm(a.ground) + std::norm(a.excited);
        }
        total += std::norm(system.amplitude(k)) * env_norm;
    }
    return total;
}

// ---- postselection --------------------------------------------------------

namespace {

bool exactly_zero(const EpsSeries& s) { return s.is_zero(); }
bool exactly_zero(const Float& z) { return z == Float(0.0); }

template <class S, class E>
void expand_masks(const JointState<S>& joint, std::size_t config, int mode, Mask mask, const E& weight,
                  std::map<Mask, E>& out) {
    if (mode == joint.env.mode_count()) {
        auto [it, inserted] = out.try_emplace(mask, weight);
        if (!inserted) {
            it->second += weight;
        }
        return;
    }
    const auto& m = joint.mode(config, mode);
    if (!exactly_zero(m.ground)) {
        E w = weight * m.ground;
        if (!exactly_zero(w)) {
            expand_masks(joint, config, mode + 1, mask, w, out);
        }
    }
    if (!exactly_zero(m.excited)) {
        E w = weight * m.excited;
        if (!exactly_zero(w)) {
            expand_masks(joint, config, mode + 1, mask | (Mask{1} << mode), w, out);
        }
    }
}

template <class S, class E, class Lift>
std::map<Mask, E> postselect(const JointState<S>& joint, const State<S>& post, Lift lift) {
    require_same_domain(joint.system.domain(), post.domain(), "environment postselection");
    S overlap = inner_product(post, joint.system);
    if (AmplitudeTraits<S>::is_zero(overlap, joint.system.norm() * post.norm())) {
        throw ZeroOverlap("environment postselection on an orthogonal state");
    }
    std::map<Mask, E> out;
    for (std::size_t k = 0; k < joint.system.size(); ++k) {
        S w = conj(post.amplitude(k)) * joint.system.amplitude(k);
        if (w == S(0)) {
            continue;
        }
        expand_masks(joint, k, 0, Mask{0}, lift(w), out);
    }
    return out;
}

}  // namespace

EnvState<Exact> postselect_environment(const JointState<Exact>& joint, const State<Exact>& post) {
    int t = joint.modes.empty() ? 4 : joint.modes.front().ground.truncation();
    EnvState<Exact> out;
    out.env = joint.env;
    out.truncation = t;
    out.norm_scale = joint.system.norm() * post.norm();
    out.amplitudes = postselect<Exact, EpsSeries>(joint, post, [t](const Exact& w) { return EpsSeries(w, t); });
    return out;
}

EnvState<Float> postselect_environment(const JointState<Float>& joint, const State<Float>& post) {
    EnvState<Float> out;
    out.env = joint.env;
    out.norm_scale = joint.system.norm() * post.norm();
    out.amplitudes = postselect<Float, Float>(joint, post, [](const Float& w) { return w; });
    return out;
}

template <>
EpsSeries EnvState<Exact>::amplitude(Mask mask) const {
    auto it = amplitudes.find(mask);
    return it == amplitudes.end() ? EpsSeries(truncation) : it->second;
}

template <>
Float EnvState<Float>::amplitude(Mask mask) const {
    auto it = amplitudes.find(mask);
    return it == amplitudes.end() ? Float(0.0) : it->second;
}

LeadingOrder leading_order(const EnvState<Exact>& env, Mask mask) {
    auto order = env.amplitude(mask).leading_order();
    if (!order) {
        return {true, env.truncation + 1};
    }
    return {false, *order};
}

OrderFit fit_leading_order(std::span<const double> eps, std::span<const double> magnitudes, double zero_threshold) {
    if (eps.size() != magnitudes.size() || eps.size() < 2) {
        throw std::invalid_argument("order fit needs at least two (eps, magnitude) points");
    }
    OrderFit fit;
    fit.eps.assign(eps.begin(), eps.end());
    fit.magnitudes.assign(magnitudes.begin(), magnitudes.end());
    std::size_t zeros = 0;
    for (double m : magnitudes) {
        zeros += m <= zero_threshold ? 1 : 0;
    }
    if (zeros == magnitudes.size()) {
        fit.vanishes = true;
        return fit;
    }
    if (zeros != 0) {
        throw std::runtime_error("amplitude crosses the zero threshold inside the eps grid; widen or shift the grid");
    }
    double mx = 0.0;
    double my = 0.0;
    for (std::size_t k = 0; k < eps.size(); ++k) {
        mx += std::log(eps[k]);
        my += std::log(magnitudes[k]);
    }
    mx /= static_cast<double>(eps.size());
    my /= static_cast<double>(eps.size());
    double sxy = 0.0;
    double sxx = 0.0;
    for (std::size_t k = 0; k < eps.size(); ++k) {
        double dx = std::log(eps[k]) - mx;
        sxy += dx * (std::log(magnitudes[k]) - my);
        sxx += dx * dx;
    }
    if (sxx == 0.0) {
        throw std::invalid_argument("eps grid needs at least two distinct values");
    }
    fit.slope = sxy / sxx;
    fit.order = static_cast<int>(std::lround(fit.slope));
    fit.residual = std::abs(fit.slope - fit.order);
    return fit;
}

OrderFit leading_order_float(const PrePost<Float>& pair, const EnvCoupling& env, Mask mask,
                             std::span<const double> eps_grid) {
    std::vector<double> mags;
    for (double eps : eps_grid) {
        auto joint = evolve_with_environment(pair.pre(), env, FloatBackend{eps});
        auto state = postselect_environment(joint, pair.post());
        mags.push_back(std::abs(state.amplitude(mask)));
    }
    return fit_leading_order(eps_grid, mags, kFloatZeroTolerance * pair.norm_scale());
}

std::vector<TraceRow> trace_table(const PrePost<Exact>& pair, const EnvCoupling& env, int truncation) {
    auto joint = evolve_with_environment(pair.pre(), env, SeriesBackend{truncation});
    auto state = postselect_environment(joint, pair.post());
    std::vector<TraceRow> rows;
    for (const auto& [mask, series] : state.amplitudes) {
        rows.push_back({mask, mask_to_string(env, mask), leading_order(state, mask), series});
    }
    return rows;
}

LeadingOrder trace_order(const PrePost<Exact>& pair, const EnvCoupling& env, Mask mask, int truncation) {
    auto joint = evolve_with_environment(pair.pre(), env, SeriesBackend{truncation});
    return leading_order(postselect_environment(joint, pair.post()), mask);
}

}  // namespace qpigeon
