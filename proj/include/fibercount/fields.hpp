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
#include <map>
#include <set>
#include <vector>

#include "fibercount/errors.hpp"
#include "fibercount/factorization.hpp"
#include "fibercount/numeric.hpp"
#include "fibercount/sieve.hpp"
#include "fibercount/valuation.hpp"

namespace fibercount {

/// The S-free kernel prod_{p not in S} p^{ord_p(a)}: two nonzero integers are
/// S-equal exactly when their kernels coincide. Signs are discarded.
inline Int s_free_kernel(const Factorization& fac, const std::set<Int>& S) {
    Int k = 1;
    for (const auto& [p, e] : fac.exponents)
        if (!S.contains(p)) k *= pow(p, e);
    return k;
}

inline Int s_free_kernel(const Int& a, const std::set<Int>& S) {
    if (a == 0) throw precondition_error("s_free_kernel: zero input");
    return s_free_kernel(factor_integer(a), S);
}

inline bool s_equal(const Int& a, const Int& b, const std::set<Int>& S) {
    if (a == 0 || b == 0) throw precondition_error("s_equal: zero input");
    return s_free_kernel(a, S) == s_free_kernel(b, S);
}

struct ClassSizeCheck {
    Int bound;             // 2*(ell+1)^{|S|}
    std::size_t observed;  // always <= bound
};

/// Check a single S-equality class of (S,ell)-square-free integers against
/// the 2*(ell+1)^{|S|} cap. Preconditions (distinct members, each
/// (S,ell)-square-free, pairwise S-equal) are verified and reported.
inline ClassSizeCheck class_size_bound(const std::vector<Int>& members, const std::set<Int>& S,
                                       long long ell) {
    if (ell < 1) throw precondition_error("class_size_bound: ell must be positive");
    std::set<Int> seen;
    Int kernel0;
    for (const Int& a : members) {
        if (a == 0) throw precondition_error("class_size_bound: zero member");
        if (!seen.insert(a).second)
            throw precondition_error("class_size_bound: duplicate member " + a.str());
        Factorization fac = factor_integer(a);
        if (!is_S_ell_squarefree(fac, S, ell))
            throw precondition_error("class_size_bound: member " + a.str() +
                                     " is not (S,ell)-square-free");
        Int kernel = s_free_kernel(fac, S);
        if (seen.size() == 1)
            kernel0 = kernel;
        else if (kernel != kernel0)
            throw precondition_error("class_size_bound: members " + members.front().str() + " and " +
                                     a.str() + " are not S-equal");
    }
    ClassSizeCheck out{Int(2) * pow(Int(ell + 1), static_cast<unsigned>(S.size())), members.size()};
    if (Int(static_cast<std::int64_t>(out.observed)) > out.bound)
        throw internal_error("class_size_bound: class size " + std::to_string(out.observed) +
                             " exceeds cap " + out.bound.str());
    return out;
}

/// Witness that two radical extensions differ: a prime p outside S that
/// ramifies in exactly one of L(A^{1/e}), L(B^{1/e}), read off from
/// 1 <= ord_p on the ramified side <= e-1 and ord_p = 0 on the other.
struct DistinctnessCertificate {
    Int p;
    bool first_ramifies;      // true: the (a, A) side carries the ramification
    long long ord_ramified;   // ord_p of the ramified A-value, in [1, e-1]

    bool validate(const Int& A, const Int& B, const std::set<Int>& S, unsigned e) const {
        if (!is_prime(p) || S.contains(p)) return false;
        const Valuation va = ord(p, first_ramifies ? A : B);
        const Valuation vb = ord(p, first_ramifies ? B : A);
        return va == Valuation(ord_ramified) && ord_ramified >= 1 &&
               ord_ramified <= static_cast<long long>(e) - 1 && vb == Valuation(0);
    }
};

namespace detail {

inline void require_e_primes_in_S(unsigned e, const std::set<Int>& S, const char* where) {
    if (e < 2) throw precondition_error(std::string(where) + ": e must be > 1");
    for (const auto& [p, k] : factor_integer(Int(e)).exponents)
        if (!S.contains(p))
            throw precondition_error(std::string(where) + ": prime divisor " + p.str() +
                                     " of e does not belong to S");
}

inline void require_divisibility_sandwich(const Int& a, const Int& A, unsigned e,
                                          const char* where) {
    if (a == 0 || A == 0) throw precondition_error(std::string(where) + ": zero value");
    const Int aa = abs(a), AA = abs(A);
    if (AA % aa != 0 || pow(aa, e - 1) % AA != 0)
        throw precondition_error(std::string(where) + ": divisibility a | A | a^(e-1) fails for a=" +
                                 a.str() + ", A=" + A.str());
}

}  // namespace detail

/// Ramification-based non-isomorphism certificate for S-distinct
/// S-square-free a, b and companions a | A | a^(e-1), b | B | b^(e-1). The
/// caller attests that S contains every prime ramified in the base field L.
inline DistinctnessCertificate fields_distinct(const Int& a, const Int& b, const Int& A,
                                               const Int& B, const std::set<Int>& S, unsigned e) {
    if (a == 0 || b == 0) throw precondition_error("fields_distinct: zero input");
    detail::require_e_primes_in_S(e, S, "fields_distinct");

    const Factorization fa = factor_integer(a), fb = factor_integer(b);
    if (!is_S_squarefree(fa, S))
        throw precondition_error("fields_distinct: " + a.str() + " is not S-square-free");
    if (!is_S_squarefree(fb, S))
        throw precondition_error("fields_distinct: " + b.str() + " is not S-square-free");
    if (s_free_kernel(fa, S) == s_free_kernel(fb, S))
        throw precondition_error("fields_distinct: " + a.str() + " and " + b.str() +
                                 " are S-equal; no ramification witness exists");
    detail::require_divisibility_sandwich(a, A, e, "fields_distinct");
    detail::require_divisibility_sandwich(b, B, e, "fields_distinct");

    // Smallest p outside S where exactly one of ord_p(a), ord_p(b) is 1.
    for (const auto& [p, ea] : fa.exponents) {
        if (S.contains(p) || ea != 1) continue;
        if (fb.exponent_of(p) == 0) {
            DistinctnessCertificate cert{p, true, ord(p, A).value()};
            if (!cert.validate(A, B, S, e))
                throw internal_error("fields_distinct: certificate failed to validate");
            return cert;
        }
    }
    for (const auto& [p, eb] : fb.exponents) {
        if (S.contains(p) || eb != 1) continue;
        if (fa.exponent_of(p) == 0) {
            DistinctnessCertificate cert{p, false, ord(p, B).value()};
            if (!cert.validate(A, B, S, e))
                throw internal_error("fields_distinct: certificate failed to validate");
            return cert;
        }
    }
    throw internal_error("fields_distinct: no witness found for S-distinct inputs");
}

struct FieldValue {
    std::int64_t n;
    Int a;  // sieved value f(n), (S,ell)-square-free
    Int A;  // companion |F(n)| with a | A | a^(e-1)
};

struct FieldCount {
    std::map<Int, std::vector<std::int64_t>> classes;  // kernel -> member n's
    std::size_t class_count = 0;
    std::size_t distinct_value_count = 0;  // distinct a values
    Rat lemma_floor;                       // distinct / (2*(ell+1)^{|S|})
    std::size_t certificates_checked = 0;
};

/// Partition sieved values into S-equality classes by kernel. The class count
/// is a certified lower bound on the number of distinct fields L(A^{1/e}):
/// representatives of different classes are S-distinct, so a ramification
/// certificate separates them. With verify_pairwise set, every cross-class
/// pair of representatives is certified explicitly.
inline FieldCount count_distinct_lower(const std::vector<FieldValue>& values,
                                       const std::set<Int>& S, long long ell, unsigned e,
                                       bool verify_pairwise = true) {
    detail::require_e_primes_in_S(e, S, "count_distinct_lower");
    if (ell < 1) throw precondition_error("count_distinct_lower: ell must be positive");

    FieldCount out;
    std::set<Int> distinct_values;
    struct Representative {
        Int a, A;
        std::vector<Int> support;  // kernel primes, ascending
    };
    std::map<Int, Representative> reps;

    for (const FieldValue& fv : values) {
        if (fv.a == 0) throw precondition_error("count_distinct_lower: zero value at n=" +
                                                std::to_string(fv.n));
        Factorization fac = factor_integer(fv.a);
        if (!is_S_ell_squarefree(fac, S, ell))
            throw precondition_error("count_distinct_lower: value at n=" + std::to_string(fv.n) +
                                     " is not (S,ell)-square-free");
        detail::require_divisibility_sandwich(fv.a, fv.A, e, "count_distinct_lower");
        distinct_values.insert(fv.a);

        Int kernel = s_free_kernel(fac, S);
        auto [it, fresh] = out.classes.try_emplace(kernel);
        it->second.push_back(fv.n);
        if (fresh) {
            Representative rep{fv.a, fv.A, {}};
            for (const auto& [p, ex] : fac.exponents)
                if (!S.contains(p)) rep.support.push_back(p);
            reps.emplace(kernel, std::move(rep));
        }
    }
    for (auto& [kernel, members] : out.classes) std::sort(members.begin(), members.end());

    out.class_count = out.classes.size();
    out.distinct_value_count = distinct_values.size();
    out.lemma_floor = make_rat(Int(static_cast<std::int64_t>(out.distinct_value_count)),
                               Int(2) * pow(Int(ell + 1), static_cast<unsigned>(S.size())));

    if (verify_pairwise && reps.size() > 1) {
        // Same witness search as fields_distinct, off the cached kernel
        // supports (kernels are squarefree, so every support prime has ord 1).
        // Support primes come from factor_integer, so primality needs no
        // re-check here; valuations are recomputed from the raw A-values.
        const long long e_cap = static_cast<long long>(e) - 1;
        for (auto i = reps.begin(); i != reps.end(); ++i) {
            for (auto j = std::next(i); j != reps.end(); ++j) {
                const auto& sa = i->second.support;
                const auto& sb = j->second.support;
                const Int* witness = nullptr;
                const Int* ramified = nullptr;
                const Int* unramified = nullptr;
                for (std::size_t x = 0, y = 0; x < sa.size() || y < sb.size();) {
                    if (y == sb.size() || (x < sa.size() && sa[x] < sb[y])) {
                        witness = &sa[x], ramified = &i->second.A, unramified = &j->second.A;
                        break;
                    }
                    if (x == sa.size() || sb[y] < sa[x]) {
                        witness = &sb[y], ramified = &j->second.A, unramified = &i->second.A;
                        break;
                    }
                    ++x, ++y;
                }
                const bool sound =
                    witness != nullptr &&
                    [&] {
                        const long long vr = detail::ord_unchecked(*witness, *ramified);
                        return vr >= 1 && vr <= e_cap &&
                               detail::ord_unchecked(*witness, *unramified) == 0;
                    }();
                if (!sound)
                    throw internal_error("count_distinct_lower: cross-class certificate failed for "
                                         "kernels " + i->first.str() + ", " + j->first.str());
                ++out.certificates_checked;
            }
        }
    }
    return out;
}

/// The signed squarefree part of A: the unique squarefree k with A = k*m^2.
/// Exact classifier of quadratic fields: Q(sqrt(A)) = Q(sqrt(B)) iff keys match.
inline Int quadratic_field_key(const Int& A) {
    if (A == 0) throw precondition_error("quadratic_field_key: zero input");
    const Factorization fac = factor_integer(A);
    Int k = fac.sign;
    for (const auto& [p, e] : fac.exponents)
        if (e % 2 == 1) k *= p;
    return k;
}

}  // namespace fibercount
