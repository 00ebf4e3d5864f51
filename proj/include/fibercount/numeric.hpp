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

#include <boost/multiprecision/cpp_int.hpp>

#include <cstdint>
#include <limits>
#include <string>
#include <vector>

#include "fibercount/errors.hpp"

namespace fibercount {

/// Exact arbitrary-precision integer.
using Int = boost::multiprecision::cpp_int;

/// Exact rational, always kept in lowest terms with positive denominator.
using Rat = boost::multiprecision::cpp_rational;

using boost::multiprecision::abs;
using boost::multiprecision::gcd;
using boost::multiprecision::lcm;
using boost::multiprecision::pow;

/// num/den accept any sign; the result is canonical (gcd 1, den > 0).
inline Rat make_rat(const Int& num, const Int& den) {
    if (den == 0) throw precondition_error("make_rat: zero denominator");
    if (den < 0) return Rat(-num, -den);
    return Rat(num, den);
}

inline std::string rat_str(const Rat& q) {
    return numerator(q).str() + "/" + denominator(q).str();
}

inline bool is_integer(const Rat& q) { return denominator(q) == 1; }

/// Floor of the nonnegative square root.
inline Int isqrt(const Int& n) {
    if (n < 0) throw precondition_error("isqrt: negative argument");
    return boost::multiprecision::sqrt(n);
}

inline std::int64_t to_int64(const Int& n, const char* what = "value") {
    if (n > std::numeric_limits<std::int64_t>::max() ||
        n < std::numeric_limits<std::int64_t>::min())
        throw precondition_error(std::string(what) + " does not fit in 64 bits");
    return static_cast<std::int64_t>(n);
}

/// Deterministic primality by trial division with a 2,3 wheel.
/// Intended for the desk-scale operands this library handles.
inline bool is_prime(const Int& n) {
    if (n < 2) return false;
    if (n < 4) return true;
    if (n % 2 == 0 || n % 3 == 0) return false;
    for (Int d = 5; d * d <= n; d += 6) {
        if (n % d == 0 || n % (d + 2) == 0) return false;
    }
    return true;
}

/// All primes < limit by sieve of Eratosthenes.
inline std::vector<std::int64_t> primes_below(std::int64_t limit) {
    std::vector<std::int64_t> out;
    if (limit <= 2) return out;
    std::vector<bool> composite(static_cast<std::size_t>(limit), false);
    for (std::int64_t p = 2; p < limit; ++p) {
        if (composite[static_cast<std::size_t>(p)]) continue;
        out.push_back(p);
        for (std::int64_t q = p * p; q < limit; q += p)
            composite[static_cast<std::size_t>(q)] = true;
    }
    return out;
}

/// Smallest prime strictly greater than n.
inline Int next_prime(Int n) {
    if (n < 2) return 2;
    ++n;
    while (!is_prime(n)) ++n;
    return n;
}

}  // namespace fibercount
