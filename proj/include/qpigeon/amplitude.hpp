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

#ifndef QPIGEON_AMPLITUDE_HPP
#define QPIGEON_AMPLITUDE_HPP

#include <Eigen/Core>
#include <gmpxx.h>

#include <cmath>
#include <complex>
#include <concepts>
#include <optional>
#include <ostream>
#include <string>

namespace qpigeon {

using Rational = mpq_class;

/// Complex number with arbitrary-precision rational parts. Equality and
/// zero tests are exact.
class GaussianRational {
  public:
    GaussianRational() : re_(0), im_(0) {}
    GaussianRational(Rational re, Rational im = Rational(0)) : re_(std::move(re)), im_(std::move(im)) {}
    template <std::integral I>
    GaussianRational(I re) : re_(static_cast<long>(re)), im_(0) {}
    template <std::integral I, std::integral J>
    GaussianRational(I re, J im) : re_(static_cast<long>(re)), im_(static_cast<long>(im)) {}

    static GaussianRational i() { return {0, 1}; }

    const Rational& real() const { return re_; }
    const Rational& imag() const { return im_; }

    bool is_zero() const { return sgn(re_) == 0 && sgn(im_) == 0; }

    GaussianRational& operator+=(const GaussianRational& o) {
        re_ += o.re_;
        im_ += o.im_;
        return *this;
    }
    GaussianRational& operator-=(const GaussianRational& o) {
        re_ -= o.re_;
        im_ -= o.im_;
        return *this;
    }
    GaussianRational& operator*=(const GaussianRational& o) {
        Rational re = re_ * o.re_ - im_ * o.im_;
        im_ = re_ * o.im_ + im_ * o.re_;
        re_ = std::move(re);
        return *this;
    }
    GaussianRational& operator/=(const GaussianRational& o);

    friend GaussianRational operator+(GaussianRational a, const GaussianRational& b) { return a += b; }
    friend GaussianRational operator-(GaussianRational a, const GaussianRational& b) { return a -= b; }
    friend GaussianRational operator*(GaussianRational a, const GaussianRational& b) { return a *= b; }
    friend GaussianRational operator/(GaussianRational a, const GaussianRational& b) { return a /= b; }
    friend GaussianRational operator-(const GaussianRational& a) { return {-a.re_, -a.im_}; }

    friend bool operator==(const GaussianRational& a, const GaussianRational& b) {
        return a.re_ == b.re_ && a.im_ == b.im_;
    }

  private:
    Rational re_;
    Rational im_;
};

using Exact = GaussianRational;
using Float = std::complex<double>;

inline GaussianRational conj(const GaussianRational& z) { return {z.real(), -z.imag()}; }

/// |z|^2, rational.
inline Rational abs2(const GaussianRational& z) { return z.real() * z.real() + z.imag() * z.imag(); }
inline double abs2(const Float& z) { return std::norm(z); }

inline Float to_float(const GaussianRational& z) { return {z.real().get_d(), z.imag().get_d()}; }
inline Float to_float(const Float& z) { return z; }

/// z^n for any integer n; n < 0 requires z != 0.
GaussianRational pow(const GaussianRational& z, int n);

/// Square root of a nonnegative rational when it is itself rational.
std::optional<Rational> exact_sqrt(const Rational& q);

/// Canonical text form: "0", "1/3", "-i", "1/2-3/4i".
std::string to_string(const GaussianRational& z);
std::string to_string(const Rational& q);
std::string to_string(const Float& z);

std::ostream& operator<<(std::ostream& os, const GaussianRational& z);

/// Parses the form produced by to_string (also accepts "a+bi" with spaces removed).
GaussianRational parse_gaussian(const std::string& text);

/// Relative zero tolerance applied to float matrix elements, scaled by the
/// product of the state norms.
inline constexpr double kFloatZeroTolerance = 1e-12;

/// Backend-specific arithmetic needed by the templated engines.
template <class S>
struct AmplitudeTraits;

template <>
struct AmplitudeTraits<Exact> {
    using Real = Rational;
    static constexpr bool kExact = true;
    static constexpr const char* kName = "exact";
    static bool is_zero(const Exact& z, double /*scale*/) { return z.is_zero(); }
    static Real to_real(const Rational& q) { return q; }
    static double to_double(const Real& r) { return r.get_d(); }
};

template <>
struct AmplitudeTraits<Float> {
    using Real = double;
    static constexpr bool kExact = false;
    static constexpr const char* kName = "float";
    static bool is_zero(const Float& z, double scale) { return std::abs(z) <= kFloatZeroTolerance * scale; }
    static Real to_real(const Rational& q) { return q.get_d(); }
    static double to_double(const Real& r) { return r; }
};

template <class S>
using RealOf = typename AmplitudeTraits<S>::Real;

template <class S>
concept Amplitude = requires { AmplitudeTraits<S>::kExact; };

/// Lossless for Exact -> Exact and Float -> Float; Exact -> Float rounds.
template <class To, class From>
To convert_amplitude(const From& z) {
    if constexpr (std::same_as<To, From>) {
        return z;
    } else {
        static_assert(std::same_as<To, Float> && std::same_as<From, Exact>, "only exact -> float is supported");
        return to_float(z);
    }
}

inline Float conj(const Float& z) { return std::conj(z); }

}  // namespace qpigeon

namespace Eigen {

template <>
struct NumTraits<qpigeon::GaussianRational> : GenericNumTraits<qpigeon::GaussianRational> {
    using Real = qpigeon::GaussianRational;
    using NonInteger = qpigeon::GaussianRational;
    using Literal = qpigeon::GaussianRational;
    using Nested = qpigeon::GaussianRational;
    enum {
        IsComplex = 0,
        IsInteger = 0,
        IsSigned = 1,
        RequireInitialization = 1,
        ReadCost = 4,
        AddCost = 16,
        MulCost = 64
    };
    static inline Real epsilon() { return Real(0); }
    static inline Real dummy_precision() { return Real(0); }
    static inline int digits10() { return 0; }
};

}  // namespace Eigen

#endif  // QPIGEON_AMPLITUDE_HPP
