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

#include "qpigeon/amplitude.hpp"

#include <sstream>

#include "qpigeon/errors.hpp"

namespace qpigeon {

GaussianRational& GaussianRational::operator/=(const GaussianRational& o) {
    Rational den = abs2(o);
    if (sgn(den) == 0) {
        throw std::domain_error("division by zero amplitude");
    }
    *this *= conj(o);
    re_ /= den;
    im_ /= den;
    return *this;
}

GaussianRational pow(const GaussianRational& z, int n) {
    GaussianRational base = n < 0 ? GaussianRational(1) / z : z;
    unsigned e = n < 0 ? static_cast<unsigned>(-n) : static_cast<unsigned>(n);
    GaussianRational result(1);
    while (e != 0) {
        if (e & 1u) {
            result *= base;
        }
        base *= base;
        e >>= 1u;
    }
    return result;
}

std::optional<Rational> exact_sqrt(const Rational& q) {
    if (sgn(q) < 0) {
        return std::nullopt;
    }
    mpz_class num = q.get_num();
    mpz_class den = q.get_den();
    if (!mpz_perfect_square_p(num.get_mpz_t()) || !mpz_perfect_square_p(den.get_mpz_t())) {
        return std::nullopt;
    }
    mpz_class rn;
    mpz_class rd;
    mpz_sqrt(rn.get_mpz_t(), num.get_mpz_t());
    mpz_sqrt(rd.get_mpz_t(), den.get_mpz_t());
    Rational r(rn, rd);
    r.canonicalize();
    return r;
}

std::string to_string(const Rational& q) { return q.get_str(); }

std::string to_string(const GaussianRational& z) {
    const Rational& re = z.real();
    const Rational& im = z.imag();
    if (sgn(im) == 0) {
        return re.get_str();
    }
    std::string imag_part;
    Rational mag = abs(im);
    if (mag == 1) {
        imag_part = "i";
    } else {
        imag_part = mag.get_str() + "i";
    }
    if (sgn(re) == 0) {
        return (sgn(im) < 0 ? "-" : "") + imag_part;
    }
    return re.get_str() + (sgn(im) < 0 ? "-" : "+") + imag_part;
}

std::string to_string(const Float& z) {
    std::ostringstream os;
    os.precision(17);
    os << z.real();
    if (z.imag() != 0.0) {
        os << (z.imag() < 0 ? "-" : "+") << std::abs(z.imag()) << "i";
    }
    return os.str();
}

std::ostream& operator<<(std::ostream& os, const GaussianRational& z) { return os << to_string(z); }

namespace {

Rational parse_rational(const std::string& text, const std::string& whole) {
    if (text.empty()) {
        throw ConfigError("malformed complex rational '" + whole + "'");
    }
    Rational q;
    if (q.set_str(text, 10) != 0) {
        throw ConfigError("malformed complex rational '" + whole + "'");
    }
    if (sgn(q.get_den()) == 0) {
        throw ConfigError("zero denominator in '" + whole + "'");
    }
    q.canonicalize();
    return q;
}

}  // namespace

GaussianRational parse_gaussian(const std::string& raw) {
    std::string text;
    for (char c : raw) {
        if (c != ' ') {
            text += c;
        }
    }
    if (text.empty()) {
        throw ConfigError("empty complex rational");
    }
    if (text.back() != 'i') {
        return {parse_rational(text[0] == '+' ? text.substr(1) : text, raw), Rational(0)};
    }
    // Split before the sign that starts the imaginary part (not a leading sign).
    std::size_t split = std::string::npos;
    for (std::size_t k = text.size() - 1; k > 0; --k) {
        if (text[k] == '+' || text[k] == '-') {
            split = k;
            break;
        }
    }
    std::string re_text = split == std::string::npos ? "" : text.substr(0, split);
    std::string im_text = split == std::string::npos ? text.substr(0, text.size() - 1)
                                                     : text.substr(split, text.size() - 1 - split);
    if (!im_text.empty() && im_text[0] == '+') {
        im_text.erase(0, 1);
    }
    Rational im;
    if (im_text.empty()) {
        im = 1;
    } else if (im_text == "-") {
        im = -1;
    } else {
        im = parse_rational(im_text, raw);
    }
    Rational re = re_text.empty() ? Rational(0) : parse_rational(re_text[0] == '+' ? re_text.substr(1) : re_text, raw);
    return {re, im};
}

}  // namespace qpigeon
