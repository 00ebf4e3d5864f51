#include <random>

#include <catch2/catch_amalgamated.hpp>

#include "fibercount/factorization.hpp"

#include "oracles.hpp"

using namespace fibercount;

TEST_CASE("factor_integer on fixed values") {
    Factorization f = factor_integer(Int(72));
    CHECK(f.sign == 1);
    CHECK(f.exponent_of(2) == 3);
    CHECK(f.exponent_of(3) == 2);
    CHECK(f.exponent_of(5) == 0);
    CHECK(f.str() == "2^3 3^2");

    Factorization g = factor_integer(Int(-45));
    CHECK(g.sign == -1);
    CHECK(g.recompose() == -45);

    CHECK(factor_integer(Int(1)).is_unit());
    CHECK(factor_integer(Int(-1)).recompose() == -1);
    CHECK_THROWS_AS(factor_integer(Int(0)), precondition_error);
}

TEST_CASE("recomposition round-trips random integers") {
    std::mt19937_64 rng(101);
    std::uniform_int_distribution<long long> dist(-5000000, 5000000);
    for (int k = 0; k < 2000; ++k) {
        long long x = dist(rng);
        if (x == 0) continue;
        Factorization f = factor_integer(Int(x));
        CHECK(f.recompose() == x);
        auto expected = oracles::naive_factor(Int(x));
        CHECK(f.exponents.size() == expected.size());
        for (const auto& [p, e] : expected) CHECK(f.exponent_of(p) == e);
    }
}

TEST_CASE("multiply_pow adds exponents and tracks sign") {
    Factorization f = factor_integer(Int(12));   // 2^2 3
    Factorization g = factor_integer(Int(-10));  // -(2 5)
    f.multiply_pow(g, 3);
    CHECK(f.recompose() == Int(12) * (-1000));
    f.multiply_pow(g, 0);
    CHECK(f.recompose() == Int(12) * (-1000));
}
