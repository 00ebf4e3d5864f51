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

#include <vector>

#include "fibercount/errors.hpp"
#include "fibercount/factorization.hpp"
#include "fibercount/numeric.hpp"
#include "fibercount/poly.hpp"

namespace fibercount {

/// Exact factorization of polynomial values through the linear-factor
/// decomposition f(n) = c * prod_i (v_i n - u_i)^{m_i}: the constant c is
/// factored once at construction, each linear value (bounded by V*n + U) by
/// trial division. Immutable after construction, safe to share across threads.
class ValueFactorizer {
  public:
    explicit ValueFactorizer(const FactoredPoly& f) {
        Rat c(f.leading());
        for (const auto& rm : f.roots()) {
            const Int v = denominator(rm.root);
            c /= Rat(pow(v, rm.mult));
            linear_.push_back({v, numerator(rm.root), rm.mult});
        }
        if (!is_integer(c))
            throw precondition_error("ValueFactorizer: polynomial does not have integer coefficients");
        constant_ = numerator(c);
        constant_factors_ = factor_integer(constant_);
    }

    /// f(n), assembled from the linear factors.
    Int value(const Int& n) const {
        Int y = constant_;
        for (const auto& lf : linear_) y *= pow(lf.v * n - lf.u, lf.mult);
        return y;
    }

    /// Complete factorization of f(n); requires f(n) != 0.
    Factorization factor(const Int& n) const {
        Factorization out = constant_factors_;
        for (const auto& lf : linear_) {
            const Int w = lf.v * n - lf.u;
            if (w == 0)
                throw precondition_error("factor_value: value is 0 at n=" + n.str() +
                                         " (n is a root)");
            out.multiply_pow(factor_integer(w), lf.mult);
        }
        return out;
    }

    const Int& constant() const { return constant_; }

  private:
    struct LinearFactor {
        Int v, u;  // v*T - u, gcd(u, v) = 1, v >= 1
        unsigned mult;
    };
    Int constant_;
    Factorization constant_factors_;
    std::vector<LinearFactor> linear_;
};

/// One-shot convenience wrapper; use ValueFactorizer when factoring many
/// values of the same polynomial.
inline Factorization factor_value(const FactoredPoly& f, const Int& n) {
    return ValueFactorizer(f).factor(n);
}

}  // namespace fibercount
