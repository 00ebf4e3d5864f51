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

#include <compare>
#include <cstdint>
#include <ostream>
#include <string>

#include "fibercount/errors.hpp"
#include "fibercount/numeric.hpp"

namespace fibercount {

/// p-adic valuation: a (possibly negative) integer, or infinity for input 0.
/// Infinity absorbs addition and dominates every finite value in comparisons.
class Valuation {
  public:
    constexpr Valuation(long long v = 0) : finite_(true), v_(v) {}  // NOLINT(google-explicit-constructor)

    static constexpr Valuation infinity() {
        Valuation x;
        x.finite_ = false;
        return x;
    }

    constexpr bool is_infinite() const { return !finite_; }

    long long value() const {
        if (!finite_) throw precondition_error("Valuation: value() on infinity");
        return v_;
    }

    friend constexpr bool operator==(const Valuation& a, const Valuation& b) {
        if (a.finite_ != b.finite_) return false;
        return !a.finite_ || a.v_ == b.v_;
    }

    friend constexpr bool operator<(const Valuation& a, const Valuation& b) {
        if (!a.finite_) return false;            // inf < x never
        if (!b.finite_) return true;             // finite < inf
        return a.v_ < b.v_;
    }
    friend constexpr bool operator>(const Valuation& a, const Valuation& b) { return b < a; }
    friend constexpr bool operator<=(const Valuation& a, const Valuation& b) { return !(b < a); }
    friend constexpr bool operator>=(const Valuation& a, const Valuation& b) { return !(a < b); }
    friend constexpr bool operator!=(const Valuation& a, const Valuation& b) { return !(a == b); }

    friend constexpr Valuation operator+(const Valuation& a, const Valuation& b) {
        if (!a.finite_ || !b.finite_) return infinity();
        return Valuation(a.v_ + b.v_);
    }
    friend constexpr Valuation operator-(const Valuation& a, long long b) {
        if (!a.finite_) return infinity();
        return Valuation(a.v_ - b);
    }

    std::string str() const { return finite_ ? std::to_string(v_) : "inf"; }

    friend std::ostream& operator<<(std::ostream& os, const Valuation& v) { return os << v.str(); }

  private:
    bool finite_;
    long long v_ = 0;
};

inline Valuation min(const Valuation& a, const Valuation& b) { return a < b ? a : b; }
inline Valuation max(const Valuation& a, const Valuation& b) { return a < b ? b : a; }

namespace detail {

inline void require_prime(const Int& p, const char* where) {
    if (!is_prime(p)) throw precondition_error(std::string(where) + ": " + p.str() + " is not prime");
}

// Valuation of a nonzero integer, primality of p already established.
inline long long ord_unchecked(const Int& p, Int x) {
    if (x == 0) throw internal_error("ord_unchecked: zero argument");
    long long v = 0;
    x = abs(x);
    while (x % p == 0) {
        x /= p;
        ++v;
    }
    return v;
}

}  // namespace detail

/// ord_p(x) for an integer; infinity iff x = 0.
inline Valuation ord(const Int& p, const Int& x) {
    detail::require_prime(p, "ord");
    if (x == 0) return Valuation::infinity();
    return Valuation(detail::ord_unchecked(p, x));
}

/// ord_p(x) for a rational; may be negative; infinity iff x = 0.
inline Valuation ord(const Int& p, const Rat& x) {
    detail::require_prime(p, "ord");
    if (x == 0) return Valuation::infinity();
    return Valuation(detail::ord_unchecked(p, numerator(x)) -
                     detail::ord_unchecked(p, denominator(x)));
}

}  // namespace fibercount
