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

#include <fstream>
#include <iostream>
#include <optional>
#include <set>
#include <sstream>
#include <string>

#include <CLI11.hpp>
#include <json.hpp>

#include "fibercount/fibercount.hpp"

namespace {

using namespace fibercount;
using nlohmann::ordered_json;

std::set<Int> parse_prime_set(const std::string& csv) {
    std::set<Int> out;
    std::stringstream ss(csv);
    std::string item;
    while (std::getline(ss, item, ',')) {
        if (item.empty()) continue;
        Int p(item);
        if (!is_prime(p)) throw precondition_error("-S: " + item + " is not prime");
        out.insert(p);
    }
    return out;
}

ordered_json prime_array(const std::set<Int>& S) {
    auto arr = ordered_json::array();
    for (const Int& p : S) arr.push_back(to_int64(p, "prime"));
    return arr;
}

// Input polynomial for the non-pipeline subcommands: with --e the full
// preparation chain runs first, otherwise the spec must already describe a
// separable polynomial with integer coefficients.
FactoredPoly prepared_kernel(const std::string& spec, std::optional<unsigned> e) {
    FactoredPoly input = parse_factored_poly(spec);
    if (e) {
        ScaledPoly scaled = scale_to_integer(input, *e);
        MultiplicityReduction red = reduce_multiplicities(scaled.poly, *e);
        return radical_kernel(red.reduced, *e);
    }
    return input;
}

void write_output(const std::string& body, const std::string& out_path) {
    if (out_path.empty()) {
        std::cout << body;
        return;
    }
    std::ofstream out(out_path, std::ios::binary);
    if (!out) throw error("cannot open '" + out_path + "' for writing");
    out << body;
    if (!out.good()) throw error("write to '" + out_path + "' failed");
}

int run_analyze(const std::string& spec, std::optional<unsigned> e, const std::string& out_path) {
    FactoredPoly kernel = prepared_kernel(spec, e);
    PolyInvariants inv = invariants(kernel);
    ordered_json j;
    j["poly"] = kernel.to_spec_string();
    j["d"] = inv.d;
    j["U"] = to_int64(inv.U, "U");
    j["V"] = to_int64(inv.V, "V");
    j["S0"] = prime_array(inv.S0);
    j["ell0"] = inv.ell0;
    ordered_json lambdas = ordered_json::object();
    for (const auto& [p, lv] : inv.lambda_table) {
        ordered_json entry;
        entry["per_root"] = lv.per_root;
        entry["max"] = lv.max;
        lambdas[p.str()] = std::move(entry);
    }
    j["lambda"] = std::move(lambdas);
    ordered_json deltas = ordered_json::object();
    for (const auto& [p, d] : inv.delta_table) deltas[p.str()] = d;
    j["delta"] = std::move(deltas);
    write_output(j.dump(2) + "\n", out_path);
    return 0;
}

int run_params(const std::string& spec, std::optional<unsigned> e, const std::string& out_path) {
    FactoredPoly kernel = prepared_kernel(spec, e);
    PolyInvariants inv = invariants(kernel);
    ParameterChoice choice = choose_parameters(inv);
    ordered_json j;
    j["poly"] = kernel.to_spec_string();
    j["S"] = prime_array(choice.S1);
    j["ell"] = choice.ell1;
    j["P"] = to_int64(choice.P1, "P");
    j["N0"] = choice.N0;
    j["c"] = rat_str(effective_constant(inv.d, choice.S1.size(), choice.ell1));
    write_output(j.dump(2) + "\n", out_path);
    return 0;
}

int run_sieve(const std::string& spec, std::optional<unsigned> e, std::int64_t N,
              const std::string& s_csv, std::optional<long long> ell, unsigned jobs,
              const std::string& format, const std::string& out_path) {
    FactoredPoly kernel = prepared_kernel(spec, e);
    PolyInvariants inv = invariants(kernel);

    std::optional<std::set<Int>> S;
    if (!s_csv.empty()) S = parse_prime_set(s_csv);
    if (!S || !ell) {
        ParameterChoice choice = choose_parameters(inv);
        if (!S) S = choice.S1;
        if (!ell) ell = choice.ell1;
    }
    SieveParams params{*S, *ell, N};
    SieveReport report = classify_range(kernel, inv, params, jobs);

    if (format == "csv") {
        write_output(sieve_csv(report), out_path);
        return 0;
    }
    ordered_json j;
    j["poly"] = kernel.to_spec_string();
    j["S"] = prime_array(params.S);
    j["ell"] = params.ell;
    j["N"] = params.N;
    j["P"] = to_int64(smallest_prime_outside(params.S), "P");
    j["skipped_roots"] = report.skipped_roots;
    j["good_count"] = report.good_count;
    j["exceptional_count"] = report.exceptional_count;
    j["paper_bound"] = rat_str(report.paper_bound.rational_upper());
    j["sharp_bound"] = rat_str(report.sharp_bound.rational_upper());
    auto exceptional = ordered_json::array();
    for (const ValueRecord& row : report.rows) {
        if (row.squarefree()) continue;
        ordered_json entry;
        entry["n"] = row.n;
        entry["witness"] = to_int64(row.exception->witness, "witness");
        entry["reason"] = to_string(row.exception->kind);
        exceptional.push_back(std::move(entry));
    }
    j["exceptional"] = std::move(exceptional);
    write_output(j.dump(2) + "\n", out_path);
    return 0;
}

int run_hensel(const std::string& spec, std::optional<unsigned> e, std::int64_t n, std::int64_t p,
               const std::string& out_path) {
    FactoredPoly kernel = prepared_kernel(spec, e);
    HenselCertificate cert = hensel_locate(kernel, Int(n), Int(p));
    ordered_json j;
    j["poly"] = kernel.to_spec_string();
    j["n"] = n;
    j["p"] = p;
    j["root_index"] = cert.index;
    j["root"] = rat_str(cert.root);
    j["ord_value"] = cert.ord_value;
    j["lambda_root"] = cert.lambda_root;
    j["ord_distance"] = cert.ord_distance;
    j["lambda_max"] = cert.lambda_max;
    write_output(j.dump(2) + "\n", out_path);
    return 0;
}

int run_count_fields(const RunConfig& config, const std::string& format,
                     const std::string& out_path) {
    CountReport report = run_superelliptic(config);

    std::ostringstream summary;
    summary << "kernel       " << report.kernel.to_spec_string() << "\n"
            << "parameters   |S|=" << report.S.size() << " ell=" << report.ell
            << " P=" << report.P << " N0=" << report.N0 << " N=" << report.N << "\n"
            << "sieve        good=" << report.sieve.good_count
            << " exceptional=" << report.sieve.exceptional_count
            << " roots_skipped=" << report.sieve.skipped_roots.size() << "\n"
            << "distinct fields >= " << report.fields.class_count;
    if (report.oracle_count) summary << "  (exact quadratic count " << *report.oracle_count << ")";
    summary << "\n"
            << "c*N = " << rat_str(report.cN) << ", class count >= c*N: "
            << (report.certified ? "yes" : "NO") << "\n";

    if (!out_path.empty()) {
        emit_report(report, format, out_path);
        std::cout << summary.str() << "report written to " << out_path << "\n";
    } else {
        std::cout << render_report(report, format);
        std::cerr << summary.str();
    }
    return report.certified ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Exact sieve-and-count toolkit for radical fields generated by polynomial values"};
    app.require_subcommand(1);

    std::string poly_spec, s_csv, format = "json", out_path;
    std::int64_t n_arg = 0, p_arg = 0, big_n = 0;
    long long ell_arg = 0;
    unsigned e_arg = 0, jobs = 1;
    std::string extra_csv;
    bool no_pairwise = false;

    auto add_poly = [&](CLI::App* cmd, bool need_e) {
        cmd->add_option("--poly", poly_spec, "polynomial spec: lead=<q>; roots=<q>:<m>,...")
            ->required();
        auto* opt = cmd->add_option("--e", e_arg, "radical exponent e >= 2");
        if (need_e) opt->required();
    };

    auto* analyze = app.add_subcommand("analyze", "compute the sieve invariants of a polynomial");
    add_poly(analyze, false);
    analyze->add_option("--out", out_path, "output path (default stdout)");

    auto* params = app.add_subcommand("params", "choose sieve parameters (S, ell, P, N0)");
    add_poly(params, false);
    params->add_option("--out", out_path, "output path (default stdout)");

    auto* sieve = app.add_subcommand("sieve", "classify f(n) for n in [1, N]");
    add_poly(sieve, false);
    sieve->add_option("--N", big_n, "range length")->required();
    sieve->add_option("--S", s_csv, "comma-separated primes overriding S");
    auto* sieve_ell = sieve->add_option("--ell", ell_arg, "exponent cap on primes in S");
    sieve->add_option("--jobs", jobs, "worker threads");
    sieve->add_option("--format", format, "json|csv")->check(CLI::IsMember({"json", "csv"}));
    sieve->add_option("--out", out_path, "output path (default stdout)");

    auto* hensel = app.add_subcommand("hensel", "locate the root governing ord_p(f(n))");
    add_poly(hensel, false);
    hensel->add_option("--n", n_arg, "argument n")->required();
    hensel->add_option("--p", p_arg, "prime p")->required();
    hensel->add_option("--out", out_path, "output path (default stdout)");

    auto* count = app.add_subcommand("count-fields", "certified distinct-field lower bound");
    add_poly(count, true);
    count->add_option("--N", big_n, "range length (default max(10*N0, 1000))");
    count->add_option("--S", s_csv, "comma-separated primes overriding S");
    auto* count_ell = count->add_option("--ell", ell_arg, "override for ell");
    count->add_option("--extra-ramified", extra_csv,
                      "primes ramified in the base field, comma-separated");
    count->add_option("--jobs", jobs, "worker threads");
    count->add_option("--format", format, "json|csv")->check(CLI::IsMember({"json", "csv"}));
    count->add_option("--out", out_path, "output path (default stdout)");
    count->add_flag("--skip-pairwise", no_pairwise,
                    "skip explicit cross-class certificate verification");

    CLI11_PARSE(app, argc, argv);

    try {
        std::optional<unsigned> e;
        if (e_arg != 0) e = e_arg;
        if (analyze->parsed()) return run_analyze(poly_spec, e, out_path);
        if (params->parsed()) return run_params(poly_spec, e, out_path);
        if (sieve->parsed()) {
            std::optional<long long> ell;
            if (sieve_ell->count() > 0) ell = ell_arg;
            return run_sieve(poly_spec, e, big_n, s_csv, ell, jobs, format, out_path);
        }
        if (hensel->parsed()) return run_hensel(poly_spec, e, n_arg, p_arg, out_path);
        if (count->parsed()) {
            RunConfig config;
            config.poly_spec = poly_spec;
            config.e = e_arg;
            if (count->count("--N") > 0) config.N = big_n;
            if (!s_csv.empty()) config.S_override = parse_prime_set(s_csv);
            if (count_ell->count() > 0) config.ell_override = ell_arg;
            if (!extra_csv.empty()) config.extra_ramified_primes = parse_prime_set(extra_csv);
            config.jobs = jobs;
            config.verify_pairwise = !no_pairwise;
            return run_count_fields(config, format, out_path);
        }
    } catch (const fibercount::hypothesis_error& e) {
        std::cerr << "hypothesis refused: " << e.what() << "\n";
        return 2;
    } catch (const fibercount::internal_error& e) {
        std::cerr << "internal error (please report): " << e.what() << "\n";
        return 1;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return 1;
}
