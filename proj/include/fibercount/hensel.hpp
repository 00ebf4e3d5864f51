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

#include <cstddef>
#include <vector>

#include "fibercount/errors.hpp"
#include "fibercount/invariants.hpp"
#include "fibercount/numeric.hpp"
#include "fibercount/poly.hpp"
#include "fibercount/valuation.hpp"

namespace fibercount {

/// Output of the root localizer: under ord_p(f(n)) > 2*lambda(p) there is a
/// unique root index j with ord_p(n - g_j) = ord_p(f(n)) - lambda_j(p).
/// The certificate carries both sides of that identity plus the side
/// conditions ord_p(g_j) >= 0 and ord_p(n - g_j) > lambda_j, all re-checked
/// before returning.
struct HenselCertificate {
    std::size_t index;       // j, position in f.roots()
    Rat root;                // g_j
    long long ord_value;     // ord_p(f(n))
    long long lambda_root;   // lambda_j(p)
    long long ord_distance;  // ord_p(n - g_j), equals ord_value - lambda_root
    long long lambda_max;    // lambda(p)
};

inline HenselCertificate hensel_locate(const FactoredPoly& f, const Int& n, const Int& p) {
    detail::require_prime(p, "hensel_locate");
    detail::require_separable_integral(f, "hensel_locate");

    const Int value = evaluate_integer(f, n);
    if (value == 0)
        throw precondition_error("hensel_locate: f(n) = 0 at n = " + n.str());

    const LambdaValues lambda = lambda_at(f, p);
    const long long ord_value = ord(p, value).value();
    if (ord_value <= 2 * lambda.max)
        throw hypothesis_error("hensel_locate: ord_p(f(n)) = " + std::to_string(ord_value) +
                               " is not > 2*lambda(p) = " + std::to_string(2 * lambda.max) +
                               " at p = " + p.str());

    const auto& roots = f.roots();
    std::vector<long long> distance(roots.size());
    std::size_t best = 0;
    bool tie = false;
    for (std::size_t i = 0; i < roots.size(); ++i) {
        distance[i] = ord(p, Rat(n) - roots[i].root).value();  // finite: n is not a root
        if (i == 0) continue;
        if (distance[i] > distance[best]) {
            best = i;
            tie = false;
        } else if (distance[i] == distance[best]) {
            tie = true;
        }
    }
    if (tie) throw internal_error("hensel_locate: maximizing root is not unique");

    std::size_t matches = 0;
    for (std::size_t i = 0; i < roots.size(); ++i)
        if (distance[i] == ord_value - lambda.per_root[i]) ++matches;

    const bool root_integral = ord(p, roots[best].root) >= Valuation(0);
    const bool above_lambda = distance[best] > lambda.per_root[best];
    const bool identity = distance[best] == ord_value - lambda.per_root[best];
    if (matches != 1 || !root_integral || !above_lambda || !identity)
        throw internal_error("hensel_locate: localization certificate failed at n = " + n.str() +
                             ", p = " + p.str());

    return {best, roots[best].root, ord_value, lambda.per_root[best], distance[best], lambda.max};
}

}  // namespace fibercount
