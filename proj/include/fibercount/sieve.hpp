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

#include <algorithm>
#include <cstdint>
#include <optional>
#include <set>
#include <string>
#include <thread>
#include <vector>

#include "fibercount/bounds.hpp"
#include "fibercount/errors.hpp"
#include "fibercount/factorization.hpp"
#include "fibercount/invariants.hpp"
#include "fibercount/numeric.hpp"
#include "fibercount/poly.hpp"
#include "fibercount/value_factor.hpp"

namespace fibercount {

/// Partial-sum length used for all internal zeta evaluations.
inline constexpr std::uint64_t kZetaTerms = 10000;

/// Iteration guard for the minimal-run-length scan.
inline constexpr std::int64_t kRunLengthScanLimit = 100000000;

/// ord_p(a) <= 1 for every p outside S.
inline bool is_S_squarefree(const Factorization& fac, const std::set<Int>& S) {
    for (const auto& [p, e] : fac.exponents)
        if (e > 1 && !S.contains(p)) return false;
    return true;
}

/// S-square-free and additionally ord_p(a) <= ell for every p in S.
inline bool is_S_ell_squarefree(const Factorization& fac, const std::set<Int>& S, long long ell) {
    for (const auto& [p, e] : fac.exponents) {
        if (S.contains(p)) {
            if (static_cast<long long>(e) > ell) return false;
        } else if (e > 1) {
            return false;
        }
    }
    return true;
}

enum class ExceptionKind {
    over_ell_in_S,     // ord_p > ell at some p in S
    square_outside_S,  // ord_p > 1 at some p outside S
};

inline const char* to_string(ExceptionKind k) {
    return k == ExceptionKind::over_ell_in_S ? "ord_gt_ell_in_S" : "ord_gt_1_outside_S";
}

struct ExceptionalTag {
    Int witness;
    ExceptionKind kind;
};

/// Witnessing prime (smallest) when the value is not (S,ell)-square-free.
inline std::optional<ExceptionalTag> classify_value(const Factorization& fac,
                                                    const std::set<Int>& S, long long ell) {
    for (const auto& [p, e] : fac.exponents) {
        if (S.contains(p)) {
            if (static_cast<long long>(e) > ell) return ExceptionalTag{p, ExceptionKind::over_ell_in_S};
        } else if (e > 1) {
            return ExceptionalTag{p, ExceptionKind::square_outside_S};
        }
    }
    return std::nullopt;
}

struct SieveParams {
    std::set<Int> S;
    long long ell = 1;
    std::int64_t N = 0;
};

struct ValueRecord {
    std::int64_t n;
    Int value;  // f(n), nonzero
    Factorization factors;
    std::optional<ExceptionalTag> exception;  // empty iff (S,ell)-square-free

    bool squarefree() const { return !exception.has_value(); }
};

struct SieveReport {
    SieveParams params;
    std::vector<std::int64_t> skipped_roots;  // n in [1,N] with f(n) = 0
    std::vector<ValueRecord> rows;            // remaining n, ascending
    std::int64_t good_count = 0;
    std::int64_t exceptional_count = 0;
    SieveBound paper_bound;  // estimate with the full zeta value
    SieveBound sharp_bound;  // same with zeta - 1, still a valid upper bound
};

struct BoundPair {
    SieveBound paper;
    SieveBound sharp;
    Int P;  // smallest prime outside S
};

inline Int smallest_prime_outside(const std::set<Int>& S) {
    Int p = 2;
    while (S.contains(p)) p = next_prime(p);
    return p;
}

/// Both exceptional-count bounds:
///   d*(zeta(ell+1-ell0) + 1/(P-1))*N + d*sqrt(V*N+U) + d*|S|
/// and the sharpened variant with zeta(.)-1, which still dominates the
/// underlying sum over primes.
inline BoundPair sieve_bounds(const PolyInvariants& inv, const SieveParams& params) {
    const long long s_arg = params.ell + 1 - inv.ell0;
    if (s_arg < 2)
        throw precondition_error("sieve_bounds: ell + 1 - ell0 = " + std::to_string(s_arg) +
                                 " is below the certified zeta range");
    const Rat z = zeta_upper(static_cast<unsigned>(s_arg), kZetaTerms);
    const Int P = smallest_prime_outside(params.S);
    const Rat d(inv.d);
    const Rat n(params.N);
    const Rat s_count(static_cast<std::int64_t>(params.S.size()));
    const Int radicand = inv.V * params.N + inv.U;

    BoundPair out{
        {d * (z + make_rat(1, P - 1)) * n + d * s_count, Int(inv.d), radicand},
        {d * (z - 1 + make_rat(1, P - 1)) * n + d * s_count, Int(inv.d), radicand},
        P};
    return out;
}

inline BoundPair sieve_bounds(const FactoredPoly& f, const SieveParams& params) {
    return sieve_bounds(invariants(f), params);
}

inline void validate_sieve_hypotheses(const PolyInvariants& inv, const SieveParams& params) {
    if (params.N < 1) throw precondition_error("sieve: N must be >= 1");
    if (params.ell < 1) throw precondition_error("sieve: ell must be >= 1");
    for (const Int& p : params.S)
        if (!is_prime(p)) throw precondition_error("sieve: S contains non-prime " + p.str());
    for (const Int& p : inv.S0)
        if (!params.S.contains(p))
            throw hypothesis_error("sieve: S must contain S0; missing prime " + p.str());
    if (params.ell < 2 * inv.ell0)
        throw hypothesis_error("sieve: ell = " + std::to_string(params.ell) + " is below 2*ell0 = " +
                               std::to_string(2 * inv.ell0));
}

namespace detail {

struct SieveChunk {
    std::vector<std::int64_t> skipped;
    std::vector<ValueRecord> rows;
};

inline void classify_block(const ValueFactorizer& vf, const std::set<Int>& S, long long ell,
                           std::int64_t lo, std::int64_t hi, SieveChunk& out) {
    for (std::int64_t n = lo; n <= hi; ++n) {
        Int value = vf.value(n);
        if (value == 0) {
            out.skipped.push_back(n);
            continue;
        }
        Factorization fac = vf.factor(n);
        auto tag = classify_value(fac, S, ell);
        out.rows.push_back({n, std::move(value), std::move(fac), std::move(tag)});
    }
}

}  // namespace detail

/// Classify f(n) for n in [1, N]. Refuses to run when the sieve hypotheses
/// (S contains S0, ell >= 2*ell0) fail. Data-parallel over contiguous blocks;
/// the merged report is identical for any job count.
inline SieveReport classify_range(const FactoredPoly& f, const PolyInvariants& inv,
                                  const SieveParams& params, unsigned jobs = 1) {
    validate_sieve_hypotheses(inv, params);

    SieveReport report;
    report.params = params;
    BoundPair bounds = sieve_bounds(inv, params);
    report.paper_bound = std::move(bounds.paper);
    report.sharp_bound = std::move(bounds.sharp);

    const ValueFactorizer vf(f);
    const std::int64_t N = params.N;
    const std::int64_t workers =
        std::clamp<std::int64_t>(jobs == 0 ? 1 : static_cast<std::int64_t>(jobs), 1, N);
    std::vector<detail::SieveChunk> chunks(static_cast<std::size_t>(workers));

    if (workers == 1) {
        detail::classify_block(vf, params.S, params.ell, 1, N, chunks[0]);
    } else {
        const std::int64_t step = (N + workers - 1) / workers;
        std::vector<std::thread> pool;
        pool.reserve(static_cast<std::size_t>(workers));
        for (std::int64_t w = 0; w < workers; ++w) {
            const std::int64_t lo = 1 + w * step;
            const std::int64_t hi = std::min<std::int64_t>(N, lo + step - 1);
            if (lo > hi) break;
            pool.emplace_back([&, lo, hi, w] {
                detail::classify_block(vf, params.S, params.ell, lo, hi,
                                       chunks[static_cast<std::size_t>(w)]);
            });
        }
        for (auto& t : pool) t.join();
    }

    for (auto& chunk : chunks) {
        report.skipped_roots.insert(report.skipped_roots.end(), chunk.skipped.begin(),
                                    chunk.skipped.end());
        for (auto& row : chunk.rows) {
            row.squarefree() ? ++report.good_count : ++report.exceptional_count;
            report.rows.push_back(std::move(row));
        }
    }
    return report;
}

inline SieveReport classify_range(const FactoredPoly& f, const SieveParams& params,
                                  unsigned jobs = 1) {
    return classify_range(f, invariants(f), params, jobs);
}

/// Smallest N with d*sqrt(V*N+U) + d*|S| <= N/6, by upward scan.
inline std::int64_t minimal_run_length(const PolyInvariants& inv, std::size_t s_size) {
    const Int d(inv.d);
    const Rat offset = Rat(d) * Rat(static_cast<std::int64_t>(s_size));
    for (std::int64_t n = 1; n <= kRunLengthScanLimit; ++n) {
        if (sqrt_term_le(d, inv.V * n + inv.U, make_rat(n, 6) - offset)) return n;
    }
    throw precondition_error("minimal_run_length: scan limit exceeded");
}

/// Parameters that make the sieve lose at most half the range for N >= N0.
struct ParameterChoice {
    std::set<Int> S1;
    long long ell1 = 0;
    Int P1;
    std::int64_t N0 = 0;
};

/// Smallest ell with d*(zeta_upper(ell+1-ell0) - 1) < 1/6 subject to
/// ell >= max(2*ell0, ell0+1), smallest prime P1 with d/(P1-1) < 1/6,
/// S1 = S0 union {primes < P1}, and the matching N0.
inline ParameterChoice choose_parameters(const PolyInvariants& inv) {
    ParameterChoice out;
    const Rat sixth = make_rat(1, 6);
    const Rat d(inv.d);

    long long ell = std::max<long long>(2 * inv.ell0, inv.ell0 + 1);
    while (d * (zeta_upper(static_cast<unsigned>(ell + 1 - inv.ell0), kZetaTerms) - 1) >= sixth)
        ++ell;
    out.ell1 = ell;

    Int p = 2;
    while (d / Rat(p - 1) >= sixth) p = next_prime(p);
    out.P1 = p;

    out.S1 = inv.S0;
    for (Int q = 2; q < out.P1; q = next_prime(q)) out.S1.insert(q);

    out.N0 = minimal_run_length(inv, out.S1.size());
    return out;
}

inline ParameterChoice choose_parameters(const FactoredPoly& f) {
    return choose_parameters(invariants(f));
}

}  // namespace fibercount
