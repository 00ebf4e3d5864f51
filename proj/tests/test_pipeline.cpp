#include <cstdio>
#include <filesystem>
#include <fstream>

#include <catch2/catch_amalgamated.hpp>

#include "fibercount/pipeline.hpp"

#include "oracles.hpp"

using namespace fibercount;

namespace {

RunConfig base_config(const std::string& spec, unsigned e, std::int64_t n) {
    RunConfig c;
    c.poly_spec = spec;
    c.e = e;
    c.N = n;
    return c;
}

}  // namespace

TEST_CASE("effective_constant") {
    CHECK(effective_constant(2, 6, 3) == make_rat(1, 32768));
    CHECK(effective_constant(1, 0, 1) == make_rat(1, 4));
    // monotone decreasing in |S| and ell
    CHECK(effective_constant(2, 7, 3) < effective_constant(2, 6, 3));
    CHECK(effective_constant(2, 6, 4) < effective_constant(2, 6, 3));
    FactoredPoly f = parse_factored_poly("lead=1; roots=0:1,1:1");
    CHECK(effective_constant(f, {Int(2), Int(3)}, 3, 2) == make_rat(1, Int(4) * 2 * 16));
}

TEST_CASE("full run on T(T-1), e = 2, N = 1000") {
    CountReport report = run_superelliptic(base_config("lead=1; roots=0:1,1:1", 2, 1000));

    CHECK(report.N == 1000);
    CHECK(report.ell == 3);
    CHECK(report.S.size() == 6);
    CHECK(report.P == 17);
    CHECK(report.c == make_rat(1, 32768));
    CHECK(report.certified);
    CHECK(report.sieve.skipped_roots == std::vector<std::int64_t>{1});
    REQUIRE(report.oracle_count.has_value());
    CHECK(report.fields.class_count <= *report.oracle_count);
    CHECK(Rat(static_cast<std::int64_t>(report.fields.class_count)) >= report.cN);

    // independent check: distinct squarefree parts of n(n-1) over the same n
    std::set<Int> parts;
    for (std::int64_t n = 2; n <= 1000; ++n)
        parts.insert(oracles::naive_squarefree_part(Int(n) * (n - 1)));
    CHECK(report.fields.class_count <= parts.size());
}

TEST_CASE("perfect powers are refused") {
    CHECK_THROWS_AS(run_superelliptic(base_config("lead=1; roots=0:2", 2, 100)), hypothesis_error);
}

TEST_CASE("N = 0 is rejected") {
    CHECK_THROWS_AS(run_superelliptic(base_config("lead=1; roots=0:1,1:1", 2, 0)),
                    precondition_error);
}

TEST_CASE("multiplicity reduction inside the pipeline: T(T-1)^2 at e = 3") {
    CountReport report = run_superelliptic(base_config("lead=1; roots=0:1,1:2", 3, 500));
    CHECK(report.kernel.to_spec_string() == "lead=1; roots=0:1,1:1");
    CHECK_FALSE(report.oracle_count.has_value());  // oracle is e = 2 only

    // divisibility sandwich f(n) | F(n) | f(n)^2, re-checked from scratch
    for (std::int64_t n = 2; n <= 500; ++n) {
        Int fn = Int(n) * (n - 1);
        Int Fn = Int(n) * (n - 1) * (n - 1);
        if (Fn == 0) continue;
        CHECK(Fn % fn == 0);
        CHECK((fn * fn) % Fn == 0);
    }
}

TEST_CASE("overrides are validated against the hypotheses") {
    RunConfig c = base_config("lead=4; roots=1/2:1,-1/2:1", 2, 200);
    c.ell_override = 3;  // below 2*ell0 = 4
    CHECK_THROWS_AS(run_superelliptic(c), hypothesis_error);

    c.ell_override = 4;
    CHECK_NOTHROW(run_superelliptic(c));

    RunConfig s = base_config("lead=1; roots=0:1,1:1", 2, 200);
    s.S_override = std::set<Int>{Int(2), Int(3), Int(5), Int(7), Int(11), Int(13)};
    CountReport r = run_superelliptic(s);
    CHECK(r.S.size() == 6);
}

TEST_CASE("extra ramified primes enlarge S") {
    RunConfig c = base_config("lead=1; roots=0:1,1:1", 2, 300);
    c.extra_ramified_primes = {Int(17)};
    CountReport r = run_superelliptic(c);
    CHECK(r.S.contains(17));
    CHECK(r.P == 19);
    CHECK_THROWS_AS(
        [] {
            RunConfig bad = base_config("lead=1; roots=0:1,1:1", 2, 100);
            bad.extra_ramified_primes = {Int(15)};
            return run_superelliptic(bad);
        }(),
        precondition_error);
}

TEST_CASE("linear growth of the class count") {
    Rat c;
    std::size_t prev = 0;
    for (std::int64_t n : {1000, 2000, 4000}) {
        RunConfig config = base_config("lead=1; roots=0:1,1:1", 2, n);
        config.jobs = 4;
        CountReport report = run_superelliptic(config);
        c = report.c;
        CHECK(report.fields.class_count >= prev);
        CHECK(Rat(static_cast<std::int64_t>(report.fields.class_count)) >= c * Rat(n));
        prev = report.fields.class_count;
    }
}

TEST_CASE("reports are byte-identical across job counts") {
    RunConfig one = base_config("lead=1; roots=0:1,1:1,-2:1", 2, 600);
    one.jobs = 1;
    RunConfig eight = one;
    eight.jobs = 8;
    CountReport a = run_superelliptic(one);
    CountReport b = run_superelliptic(eight);
    CHECK(render_report(a, "json") == render_report(b, "json"));
    CHECK(render_report(a, "csv") == render_report(b, "csv"));
}

TEST_CASE("csv rows carry the documented columns") {
    CountReport report = run_superelliptic(base_config("lead=1; roots=0:1,1:1", 2, 12));
    std::string csv = render_report(report, "csv");
    std::istringstream in(csv);
    std::string line;
    std::getline(in, line);
    CHECK(line == "n,value,sign,factorization,squarefree_flag,witness_prime");
    std::getline(in, line);
    CHECK(line == "1,0,0,,,");  // n = 1 is a root of n(n-1)
    std::getline(in, line);
    CHECK(line == "2,2,1,2^1,1,");
    std::size_t rows = 2;
    while (std::getline(in, line)) ++rows;
    CHECK(rows == 12);
}

TEST_CASE("emit_report writes files and surfaces bad paths") {
    CountReport report = run_superelliptic(base_config("lead=1; roots=0:1,1:1", 2, 50));
    auto path = std::filesystem::temp_directory_path() / "fibercount_test_report.json";
    emit_report(report, "json", path.string());
    std::ifstream in(path);
    std::string body((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
    CHECK(body == render_report(report, "json"));
    std::filesystem::remove(path);

    CHECK_THROWS_AS(emit_report(report, "json", "/nonexistent-dir/x/y.json"), error);
    CHECK_THROWS_AS(render_report(report, "xml"), precondition_error);
}

TEST_CASE("report json has the stable key set") {
    CountReport report = run_superelliptic(base_config("lead=1; roots=0:1,1:1", 2, 64));
    auto j = report_json(report);
    const char* keys[] = {"poly",    "e",  "N", "S",  "ell",           "P",
                          "N0",      "d",  "ell0", "U", "V",            "skipped_roots",
                          "exceptional_count", "paper_bound", "sharp_bound", "class_count",
                          "oracle_count", "lemma13_floor", "c", "cN", "certified"};
    std::size_t i = 0;
    for (auto it = j.begin(); it != j.end(); ++it, ++i) {
        REQUIRE(i < std::size(keys));
        CHECK(it.key() == keys[i]);
    }
    CHECK(i == std::size(keys));
    CHECK(j["poly"] == "lead=1; roots=0:1,1:1");
    CHECK(j["c"] == "1/32768");
    CHECK(j["certified"] == true);
}
