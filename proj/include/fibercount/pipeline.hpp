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

#include <fstream>
#include <optional>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include <json.hpp>

#include "fibercount/errors.hpp"
#include "fibercount/fields.hpp"
#include "fibercount/hensel.hpp"
#include "fibercount/invariants.hpp"
#include "fibercount/numeric.hpp"
#include "fibercount/poly.hpp"
#include "fibercount/sieve.hpp"
#include "fibercount/value_factor.hpp"

namespace fibercount {

struct RunConfig {
    std::string poly_spec;
    unsigned e = 2;
    std::optional<std::int64_t> N;          // default: max(10*N0, 1000)
    std::optional<std::set<Int>> S_override;
    std::optional<long long> ell_override;
    std::set<Int> extra_ramified_primes;    // for a base field other than Q
    unsigned jobs = 1;
    bool verify_pairwise = true;
};

/// The guaranteed constant of the counting chain: with parameters (S, ell)
/// valid for the kernel of degree d, at least N/(4*d*(ell+1)^{|S|}) of the
/// fields are distinct once N >= N0.
inline Rat effective_constant(unsigned d, std::size_t s_size, long long ell) {
    if (d == 0 || ell < 1) throw precondition_error("effective_constant: bad arguments");
    return make_rat(1, Int(4) * Int(d) * pow(Int(ell + 1), static_cast<unsigned>(s_size)));
}

inline Rat effective_constant(const FactoredPoly& f, const std::set<Int>& S, long long ell,
                              unsigned /*e*/) {
    return effective_constant(f.degree(), S.size(), ell);
}

struct CountReport {
    std::string poly;  // canonical input spec
    unsigned e;
    std::int64_t N;
    std::set<Int> S;
    long long ell;
    Int P;
    std::int64_t N0;
    Int scale_base;        // a with a^e * F integral
    FactoredPoly reduced;  // multiplicities reduced into [1, e-1]
    FactoredPoly kernel;   // separable companion
    PolyInvariants inv;
    SieveReport sieve;
    FieldCount fields;
    std::optional<std::size_t> oracle_count;  // e = 2 only
    Rat c;
    Rat cN;
    bool certified;
};

/// Full counting chain: scale to integer coefficients, reduce multiplicities,
/// take the separable kernel, choose or validate (S, ell), sieve [1, N],
/// partition the square-free values into S-equality classes, and compare the
/// certified class count against c*N. For e = 2 an exact quadratic-field
/// oracle cross-checks the lower bound.
inline CountReport run_superelliptic(const RunConfig& config) {
    if (config.e < 2) throw precondition_error("run: e must be >= 2");
    if (config.N && *config.N < 1) throw precondition_error("run: N must be >= 1");

    const FactoredPoly input = parse_factored_poly(config.poly_spec);
    ScaledPoly scaled = scale_to_integer(input, config.e);
    MultiplicityReduction red = reduce_multiplicities(scaled.poly, config.e);
    FactoredPoly kernel = radical_kernel(red.reduced, config.e);
    PolyInvariants inv = invariants(kernel);

    ParameterChoice autop = choose_parameters(inv);
    std::set<Int> S = config.S_override.value_or(autop.S1);
    for (const auto& [p, k] : factor_integer(Int(config.e)).exponents) S.insert(p);
    for (const Int& p : config.extra_ramified_primes) {
        if (!is_prime(p)) throw precondition_error("run: extra ramified " + p.str() + " is not prime");
        S.insert(p);
    }
    const long long ell = config.ell_override.value_or(autop.ell1);
    const std::int64_t N0 = minimal_run_length(inv, S.size());
    const std::int64_t N = config.N.value_or(std::max<std::int64_t>(10 * N0, 1000));

    SieveParams params{S, ell, N};
    SieveReport sieve = classify_range(kernel, inv, params, config.jobs);

    std::vector<FieldValue> values;
    values.reserve(static_cast<std::size_t>(sieve.good_count));
    std::set<Int> oracle_keys;
    for (const ValueRecord& row : sieve.rows) {
        if (!row.squarefree()) continue;
        Int companion = evaluate_integer(red.reduced, row.n);
        if (config.e == 2) oracle_keys.insert(quadratic_field_key(companion));
        values.push_back({row.n, row.value, abs(companion)});
    }
    FieldCount fields =
        count_distinct_lower(values, S, ell, config.e, config.verify_pairwise);

    // Re-check the conclusions the chain guarantees; failures are bugs.
    const Int exceptional(sieve.exceptional_count);
    if (!sieve.paper_bound.admits(exceptional) || !sieve.sharp_bound.admits(exceptional))
        throw internal_error("run: exceptional count escapes its proved bound");
    std::optional<std::size_t> oracle_count;
    if (config.e == 2) {
        oracle_count = oracle_keys.size();
        if (fields.class_count > *oracle_count)
            throw internal_error("run: class count exceeds the exact quadratic-field count");
    }

    const Rat c = effective_constant(inv.d, S.size(), ell);
    const Rat cN = c * Rat(N);
    const bool certified = Rat(static_cast<std::int64_t>(fields.class_count)) >= cN;

    return CountReport{input.to_spec_string(),
                       config.e,
                       N,
                       std::move(S),
                       ell,
                       smallest_prime_outside(params.S),
                       N0,
                       std::move(scaled.a),
                       std::move(red.reduced),
                       std::move(kernel),
                       std::move(inv),
                       std::move(sieve),
                       std::move(fields),
                       oracle_count,
                       c,
                       cN,
                       certified};
}

inline nlohmann::ordered_json report_json(const CountReport& r) {
    nlohmann::ordered_json j;
    j["poly"] = r.poly;
    j["e"] = r.e;
    j["N"] = r.N;
    auto primes = nlohmann::ordered_json::array();
    for (const Int& p : r.S) primes.push_back(to_int64(p, "prime in S"));
    j["S"] = std::move(primes);
    j["ell"] = r.ell;
    j["P"] = to_int64(r.P, "P");
    j["N0"] = r.N0;
    j["d"] = r.inv.d;
    j["ell0"] = r.inv.ell0;
    j["U"] = to_int64(r.inv.U, "U");
    j["V"] = to_int64(r.inv.V, "V");
    j["skipped_roots"] = r.sieve.skipped_roots;
    j["exceptional_count"] = r.sieve.exceptional_count;
    j["paper_bound"] = rat_str(r.sieve.paper_bound.rational_upper());
    j["sharp_bound"] = rat_str(r.sieve.sharp_bound.rational_upper());
    j["class_count"] = r.fields.class_count;
    if (r.oracle_count)
        j["oracle_count"] = *r.oracle_count;
    else
        j["oracle_count"] = nullptr;
    j["lemma13_floor"] = rat_str(r.fields.lemma_floor);
    j["c"] = rat_str(r.c);
    j["cN"] = rat_str(r.cN);
    j["certified"] = r.certified;
    return j;
}

/// Per-n CSV rows: `n,value,sign,factorization,squarefree_flag,witness_prime`.
/// Roots of f get value 0, sign 0 and empty remaining fields.
inline std::string sieve_csv(const SieveReport& report) {
    std::string out = "n,value,sign,factorization,squarefree_flag,witness_prime\n";
    std::size_t row = 0, root = 0;
    for (std::int64_t n = 1; n <= report.params.N; ++n) {
        if (root < report.skipped_roots.size() && report.skipped_roots[root] == n) {
            ++root;
            out += std::to_string(n) + ",0,0,,,\n";
            continue;
        }
        const ValueRecord& rec = report.rows[row++];
        if (rec.n != n) throw internal_error("sieve_csv: row order is inconsistent");
        out += std::to_string(n) + ',' + rec.value.str() + ',' +
               (rec.factors.sign < 0 ? "-1" : "1") + ',' + rec.factors.str() + ',' +
               (rec.squarefree() ? '1' : '0') + ',';
        if (rec.exception) out += rec.exception->witness.str();
        out += '\n';
    }
    return out;
}

inline std::string render_report(const CountReport& r, const std::string& format) {
    if (format == "json") return report_json(r).dump(2) + "\n";
    if (format == "csv") return sieve_csv(r.sieve);
    throw precondition_error("render_report: unknown format '" + format + "'");
}

/// Write the chosen rendering to `path`. Byte-stable for identical inputs.
inline void emit_report(const CountReport& r, const std::string& format, const std::string& path) {
    const std::string body = render_report(r, format);
    std::ofstream out(path, std::ios::binary);
    if (!out) throw error("emit_report: cannot open '" + path + "' for writing");
    out << body;
    if (!out.good()) throw error("emit_report: write to '" + path + "' failed");
}

}  // namespace fibercount
