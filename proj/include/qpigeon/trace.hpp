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

#ifndef QPIGEON_TRACE_HPP
#define QPIGEON_TRACE_HPP

#include <cstdint>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "qpigeon/amplitude.hpp"
#include "qpigeon/state.hpp"

namespace qpigeon {

/// Power series in the coupling angle eps, truncated after `truncation`.
/// Coefficients are exact Gaussian rationals.
class EpsSeries {
  public:
    explicit EpsSeries(int truncation = 4);
    EpsSeries(const Exact& constant, int truncation);

    static EpsSeries cos_series(int truncation);
    static EpsSeries sin_series(int truncation);

    int truncation() const { return static_cast<int>(coeffs_.size()) - 1; }
    const Exact& coefficient(int power) const;
    void set_coefficient(int power, Exact value);

    bool is_zero() const;

    /// Smallest power with a nonzero coefficient, or nullopt when the series
    /// vanishes through the truncation order.
    std::optional<int> leading_order() const;

    Float evaluate(double eps) const;

    EpsSeries& operator+=(const EpsSeries& o);
    EpsSeries& operator-=(const EpsSeries& o);
    EpsSeries& operator*=(const EpsSeries& o);
    EpsSeries& operator*=(const Exact& scalar);

    friend EpsSeries operator+(EpsSeries a, const EpsSeries& b) { return a += b; }
    friend EpsSeries operator-(EpsSeries a, const EpsSeries& b) { return a -= b; }
    friend EpsSeries operator*(EpsSeries a, const EpsSeries& b) { return a *= b; }
    friend EpsSeries operator*(EpsSeries a, const Exact& s) { return a *= s; }
    friend EpsSeries operator-(const EpsSeries& a);
    friend bool operator==(const EpsSeries& a, const EpsSeries& b) { return a.coeffs_ == b.coeffs_; }

  private:
    std::vector<Exact> coeffs_;
};

std::string to_string(const EpsSeries& s);

/// Particle `particle` (1-based) sitting in `box` rotates environment mode `mode`.
struct Coupling {
    int particle = 0;
    int box = 0;
    int mode = 0;
};

/// Environment modes and the particle-in-box conditions that drive them.
/// Several couplings may target one mode; they act in declaration order.
struct EnvCoupling {
    int particles = 0;
    int boxes = 2;
    std::vector<std::string> mode_labels;
    std::vector<Coupling> couplings;

    int mode_count() const { return static_cast<int>(mode_labels.size()); }
};

/// One mode per (particle, box), particle-major: mode id (j-1)*M + X,
/// labelled "<j><X>" (e.g. "1A").
EnvCoupling default_couplings(int particles, int boxes);

/// Like default_couplings but only `coupled` particles leave traces. Mode ids
/// are assigned in the order of `coupled`, box-minor.
EnvCoupling local_couplings(int particles, int boxes, std::span<const int> coupled);

/// Two modes "I" and "II" shared between boxes A and B: mode I is driven by
/// (j in A) and by (k in B), mode II by (k in A) and by (j in B). A pair in
/// the same box excites each mode once; split across boxes it drives one
/// mode twice.
EnvCoupling nonlocal_parity_couplings(int particles, int j, int k);

/// Bit m set means mode m is in its excited (orthogonal) state.
using Mask = std::uint64_t;

Mask parse_mask(const EnvCoupling& env, const std::string& text);
std::string mask_to_string(const EnvCoupling& env, Mask mask);

/// Per-configuration excitation count of each mode, for auditing couplings.
std::vector<int> excitation_signature(const EnvCoupling& env, std::span<const int> configuration);

struct SeriesBackend {
    int truncation = 4;
};

struct FloatBackend {
    double eps = 1e-2;
};

template <class S>
struct TraceTraits;

template <>
struct TraceTraits<Exact> {
    using Coefficient = EpsSeries;
    using Backend = SeriesBackend;
};

template <>
struct TraceTraits<Float> {
    using Coefficient = Float;
    using Backend = FloatBackend;
};

template <class S>
using EnvCoefficient = typename TraceTraits<S>::Coefficient;

template <class E>
struct ModeAmplitude {
    E ground;
    E excited;
};

/// System (unnormalized) times a product environment state for every basis
/// configuration. The environment factorizes per configuration because every
/// coupling is conditioned on the configuration alone.
template <class S>
struct JointState {
    State<S> system;
    EnvCoupling env;
    /// configs x modes, row-major.
    std::vector<ModeAmplitude<EnvCoefficient<S>>> modes;

    const ModeAmplitude<EnvCoefficient<S>>& mode(std::size_t config, int m) const {
        return modes[config * static_cast<std::size_t>(env.mode_count()) + static_cast<std::size_t>(m)];
    }

    /// Total squared norm of system (x) environment.
    double norm_squared() const;
};

/// Applies, for each configuration and in declaration order, the rotation
/// ground -> cos(eps) ground + sin(eps) excited,
/// excited -> -sin(eps) ground + cos(eps) excited
/// on the target mode of every coupling whose condition holds.
JointState<Exact> evolve_with_environment(const State<Exact>& pre, const EnvCoupling& env, SeriesBackend backend);
JointState<Float> evolve_with_environment(const State<Float>& pre, const EnvCoupling& env, FloatBackend backend);

/// Postselected environment amplitudes <post| (x) <mask| joint>, one entry per
/// mask that can be nonzero. Unnormalized.
template <class S>
struct EnvState {
    EnvCoupling env;
    std::map<Mask, EnvCoefficient<S>> amplitudes;
    /// Truncation order (exact) or zero (float).
    int truncation = 0;
    /// Coupling angle (float) or zero (exact).
    double eps = 0.0;
    /// |post| |pre|.
    double norm_scale = 1.0;

    EnvCoefficient<S> amplitude(Mask mask) const;
};

template <>
double JointState<Exact>::norm_squared() const;
template <>
double JointState<Float>::norm_squared() const;
template <>
EpsSeries EnvState<Exact>::amplitude(Mask mask) const;
template <>
Float EnvState<Float>::amplitude(Mask mask) const;

EnvState<Exact> postselect_environment(const JointState<Exact>& joint, const State<Exact>& post);
EnvState<Float> postselect_environment(const JointState<Float>& joint, const State<Float>& post);

struct LeadingOrder {
    /// True when the amplitude vanishes through the truncation order (exact)
    /// or falls below the zero threshold on the whole grid (float).
    bool vanishes = false;
    /// Smallest nonzero power; truncation + 1 when `vanishes`.
    int order = 0;
};

LeadingOrder leading_order(const EnvState<Exact>& env, Mask mask);

/// Result of fitting log|amplitude| against log(eps).
struct OrderFit {
    bool vanishes = false;
    int order = 0;
    double slope = 0.0;
    /// |slope - order|.
    double residual = 0.0;
    std::vector<double> eps;
    std::vector<double> magnitudes;
};

/// Slope tolerance used to accept a float order fit as an integer order.
inline constexpr double kOrderSlopeTolerance = 0.15;

/// Least-squares slope over the grid. Magnitudes at or below zero_threshold
/// everywhere mean the amplitude vanishes; a mix of zero and nonzero points
/// throws.
OrderFit fit_leading_order(std::span<const double> eps, std::span<const double> magnitudes, double zero_threshold);

/// Runs the float backend at each eps of the grid and fits the order of `mask`.
OrderFit leading_order_float(const PrePost<Float>& pair, const EnvCoupling& env, Mask mask,
                             std::span<const double> eps_grid);

struct TraceRow {
    Mask mask = 0;
    std::string label;
    LeadingOrder order;
    EpsSeries coefficient;
};

/// Exact trace table: every postselected mask with its leading order.
std::vector<TraceRow> trace_table(const PrePost<Exact>& pair, const EnvCoupling& env, int truncation = 4);

/// Leading order of one mask under the exact series backend.
LeadingOrder trace_order(const PrePost<Exact>& pair, const EnvCoupling& env, Mask mask, int truncation = 4);

}  // namespace qpigeon

#endif  // QPIGEON_TRACE_HPP
