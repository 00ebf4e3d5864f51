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

#include <map>
#include <string>
#include <utility>

#include "fibercount/errors.hpp"
#include "fibercount/numeric.hpp"

namespace fibercount {

/// Signed prime-exponent map of a nonzero integer.
/// recompose() reproduces the original value exactly; zero is unrepresentable.
struct Factorization {
    int sign = 1;                       // +1 or -1
    std::map<Int, unsigned> exponents;  // prime -> exponent > 0, keys ascending

    unsigned exponent_of(const Int& p) const {
        auto it = exponents.find(p);
        return it == exponents.end() ? 0u : it->second;
    }

    /// Multiply in other^k.
    void multiply_pow(const Factorization& other, unsigned k) {
        if (k == 0) return;
        if (other.sign < 0 && k % 2 == 1) sign = -sign;
        for (const auto& [p, e] : other.exponents) exponents[p] += e * k;
    }

    Int recompose() const {
        Int x = sign;
        for (const auto& [p, e] : exponents) x *= pow(p, e);
        return x;
    }

    bool is_unit() const { return exponents.empty(); }

    /// Canonical "p^e p^e ..." with primes strictly increasing; "" for +-1.
    std::string str() const {
        std::string out;
        for (const auto& [p, e] : exponents) {
            if (!out.empty()) out += ' ';
            out += p.str() + "^" + std::to_string(e);
        }
        return out;
    }
};

/// Complete factorization of a nonzero integer by trial division (2,3 wheel).
inline Factorization factor_integer(const Int& n) {
    if (n == 0) throw precondition_error("factor_integer: zero input");
    Factorization out;
    out.sign = n < 0 ? -1 : 1;
    Int m = abs(n);
    auto strip = [&](const Int& p) {
        unsigned e = 0;
        while (m % p == 0) {
            m /= p;
            ++e;
        }
        if (e > 0) out.exponents.emplace(p, e);
    };
    strip(2);
    strip(3);
    for (Int d = 5; d * d <= m; d += 6) {
        strip(d);
        strip(d + 2);
    }
    if (m > 1) out.exponents.emplace(m, 1u);
    return out;
}

}  // namespace fibercount
