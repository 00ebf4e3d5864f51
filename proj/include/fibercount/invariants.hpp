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
#include <set>
#include <vector>

#include "fibercount/errors.hpp"
#include "fibercount/factorization.hpp"
#include "fibercount/numeric.hpp"
#include "fibercount/poly.hpp"
#include "fibercount/valuation.hpp"

namespace fibercount {

namespace detail {

inline void require_separable_integral(const FactoredPoly& f, const char* where) {
    if (!f.is_separable())
        throw precondition_error(std::string(where) + ": polynomial must be separable");
    if (!has_integer_coefficients(f))
        throw precondition_error(std::string(where) + ": polynomial must have integer coefficients");
}

/// f'(root_i) for separable f via the product formula
/// f'(g_i) = leading * prod_{j != i} (g_i - g_j); never zero.
inline std::vector<Rat> derivative_at_roots(const FactoredPoly& f) {
    const auto& roots = f.roots();
    std::vector<Rat> out(roots.size(), f.leading());
    for (std::size_t i = 0; i < roots.size(); ++i)
        for (std::size_t j = 0; j < roots.size(); ++j)
            if (j != i) out[i] *= roots[i].root - roots[j].root;
    return out;
}

}  // namespace detail

/// Valuations of the derivative at the roots: per_root[i] = ord_p(f'(g_i)),
/// max = their maximum, always >= 0.
struct LambdaValues {
    std::vector<long long> per_root;
    long long max = 0;
};

/// Content valuation of f at p: min over all coefficients of ord_p.
/// Self-checks the product-form identity
///   delta(p) = ord_p(lead coeff) + sum_i mult_i * min(0, ord_p(root_i))
/// and fails loudly on mismatch.
inline long long delta_at(const FactoredPoly& f, const Int& p) {
    detail::require_prime(p, "delta_at");
    const IntPoly F = expand(f);

    Valuation from_coeffs = Valuation::infinity();
    for (const Int& c : F.coefficients)
        if (c != 0) from_coeffs = min(from_coeffs, Valuation(detail::ord_unchecked(p, c)));

    Valuation from_roots(detail::ord_unchecked(p, F.coefficients.back()));
    for (const auto& rm : f.roots())
        for (unsigned k = 0; k < rm.mult; ++k)
            from_roots = from_roots + min(Valuation(0), ord(p, rm.root));

    if (from_coeffs != from_roots)
        throw internal_error("delta_at: content valuation " + from_coeffs.str() +
                             " disagrees with product form " + from_roots.str() + " at p=" + p.str());
    return from_coeffs.value();
}

/// ord_p(f'(g_i)) for every root and their maximum. Individual values may be
/// negative; the maximum is >= delta(p) >= 0, which is asserted.
inline LambdaValues lambda_at(const FactoredPoly& f, const Int& p) {
    detail::require_prime(p, "lambda_at");
    detail::require_separable_integral(f, "lambda_at");

    LambdaValues out;
    bool first = true;
    for (const Rat& dv : detail::derivative_at_roots(f)) {
        long long v = ord(p, dv).value();  // finite: f separable
        out.per_root.push_back(v);
        out.max = first ? v : std::max(out.max, v);
        first = false;
    }
    const long long delta = delta_at(f, p);
    if (out.max < delta)
        throw internal_error("lambda_at: max " + std::to_string(out.max) + " below content valuation " +
                             std::to_string(delta) + " at p=" + p.str());
    return out;
}

/// The finite data controlling the sieve bounds for a separable integer
/// polynomial with rational roots.
struct PolyInvariants {
    unsigned d = 0;                          // degree
    Int U, V;                                // max |numerator|, max denominator of the roots
    std::set<Int> S0;                        // primes with some nonzero lambda_i or non-integral root
    long long ell0 = 0;                      // max over p of lambda(p)
    std::map<Int, LambdaValues> lambda_table;  // p in S0 only; identically zero elsewhere
    std::map<Int, long long> delta_table;      // p in S0 only
};

/// Compute S0, ell0, U, V and the lambda/delta tables from finitely many
/// factorizations (derivative values at the roots, root denominators and the
/// leading coefficient); no open-ended prime scan.
inline PolyInvariants invariants(const FactoredPoly& f) {
    detail::require_separable_integral(f, "invariants");

    PolyInvariants inv;
    inv.d = f.degree();
    inv.U = 0;
    inv.V = 1;
    for (const auto& rm : f.roots()) {
        const Int u = abs(numerator(rm.root));
        const Int v = denominator(rm.root);
        if (u > inv.U) inv.U = u;
        if (v > inv.V) inv.V = v;
    }

    std::set<Int> candidates;
    auto add_primes_of = [&candidates](const Int& x) {
        if (x == 0) return;
        for (const auto& [p, e] : factor_integer(x).exponents) candidates.insert(p);
    };
    for (const Rat& dv : detail::derivative_at_roots(f)) {
        add_primes_of(numerator(dv));
        add_primes_of(denominator(dv));
    }
    for (const auto& rm : f.roots()) add_primes_of(denominator(rm.root));
    add_primes_of(numerator(f.leading()));

    for (const Int& p : candidates) {
        LambdaValues lv = lambda_at(f, p);
        bool nonzero_lambda =
            std::any_of(lv.per_root.begin(), lv.per_root.end(), [](long long v) { return v != 0; });
        bool nonintegral_root = std::any_of(f.roots().begin(), f.roots().end(), [&p](const RootMult& rm) {
            return denominator(rm.root) % p == 0;
        });
        if (!nonzero_lambda && !nonintegral_root) continue;
        inv.S0.insert(p);
        inv.ell0 = std::max(inv.ell0, lv.max);
        inv.lambda_table.emplace(p, std::move(lv));
        inv.delta_table.emplace(p, delta_at(f, p));
    }
    return inv;
}

}  // namespace fibercount
