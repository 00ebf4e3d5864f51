/*
   Copyright 2026 The fibercount authors

   Licensed under the Apache License, Version 2.0 (the "License");
   you may not use this file except in compliance with the License.
   You may obtain a copy of the License at

        http://www.apache.org/licenses/LICENSE-2.0

   Unless required by applicable law or agreed to in writing, software
   distributed under the License is distributed on an "AS IS" BASIS,
   WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
   See the License for the specific language governing permissions and
   limitations under the License.
*/

#pragma once

#include <cstdint>

#include "fibercount/errors.hpp"
#include "fibercount/numeric.hpp"

namespace fibercount {

/// Certified rational upper bound on zeta(s) for integer s >= 2:
/// the partial sum over k <= terms (each term rounded up at 256 fractional
/// bits, so the denominator stays bounded) plus the integral tail bound
/// terms^(1-s)/(s-1). Nonincreasing in `terms` over the supported range.
inline Rat zeta_upper(unsigned s, std::uint64_t terms) {
    if (s < 2) throw precondition_error("zeta_upper: s must be >= 2");
    if (terms < 1) throw precondition_error("zeta_upper: terms must be >= 1");
    static const Int scale = Int(1) << 256;
    Int sum = 0;
    for (std::uint64_t k = 1; k <= terms; ++k) {
        const Int ks = pow(Int(k), s);
        sum += (scale + ks - 1) / ks;  // ceil(scale / k^s)
    }
    const Rat partial = make_rat(sum, scale);
    const Rat tail = make_rat(1, Int(s - 1) * pow(Int(terms), s - 1));
    return partial + tail;
}

/// Exact test of  coeff*sqrt(radicand) <= bound  (coeff, radicand >= 0).
inline bool sqrt_term_le(const Int& coeff, const Int& radicand, const Rat& bound) {
    if (coeff < 0 || radicand < 0)
        throw precondition_error("sqrt_term_le: negative coefficient or radicand");
    if (bound < 0) return false;
    return Rat(coeff * coeff * radicand) <= bound * bound;
}

/// Exact test of  x <= linear + coeff*sqrt(radicand).
inline bool le_linear_plus_sqrt(const Rat& x, const Rat& linear, const Int& coeff,
                                const Int& radicand) {
    const Rat t = x - linear;
    if (t <= 0) return true;
    return t * t <= Rat(coeff * coeff * radicand);
}

/// Rational q >= sqrt(x) with error at most 2^-bits.
inline Rat sqrt_upper(const Int& x, unsigned bits = 32) {
    if (x < 0) throw precondition_error("sqrt_upper: negative argument");
    return make_rat(isqrt(x << (2 * bits)) + 1, Int(1) << bits);
}

/// Smallest multiple of 10^-6 that is >= q. Compacts the huge exact rationals
/// coming out of the zeta partial sums without giving up the upper-bound
/// property; serialization stays short and deterministic.
inline Rat round_up_micro(const Rat& q) {
    static const Int scale = 1000000;
    const Int n = numerator(q) * scale;
    const Int d = denominator(q);
    Int t;
    if (n >= 0)
        t = (n + d - 1) / d;
    else
        t = -((-n) / d);
    return make_rat(t, scale);
}

/// An exceptional-count bound of the shape  linear + coeff*sqrt(radicand),
/// kept in parts so comparisons against integer counts stay exact.
struct SieveBound {
    Rat linear;
    Int sqrt_coeff;
    Int radicand;

    /// count <= bound, decided exactly.
    bool admits(const Int& count) const {
        return le_linear_plus_sqrt(Rat(count), linear, sqrt_coeff, radicand);
    }

    /// Rational upper approximation for reporting.
    Rat rational_upper(unsigned bits = 32) const {
        return round_up_micro(linear + Rat(sqrt_coeff) * sqrt_upper(radicand, bits));
    }
};

}  // namespace fibercount
