#include <catch2/catch_amalgamated.hpp>

#include <wachlab/padic.hpp>

#include "testutil.hpp"

using namespace wachlab;
using testutil::eq_at_precision;

namespace {
PadicScalar s(std::uint64_t p, std::int64_t n, int rel = 12) {
    return PadicScalar::from_int(p, n, rel);
}
}  // namespace

TEST_CASE("profile validation") {
    CHECK_THROWS_AS(PrecisionProfile(2, 8, 16, 2), ConfigError);
    CHECK_THROWS_AS(PrecisionProfile(9, 8, 16, 2), ConfigError);
    CHECK_THROWS_AS(PrecisionProfile(3, 0, 16, 2), ConfigError);
    CHECK_THROWS_AS(PrecisionProfile(3, 8, 0, 2), ConfigError);
    PrecisionProfile prof(3, 12, 60, 5);
    CHECK(prof.working_precision() >= prof.cap_p + 30);
}

TEST_CASE("exact division and valuation arithmetic") {
    // (3^2 + 3)/3 = 3 + 1
    auto q = s(3, 12) / s(3, 3);
    CHECK(eq_at_precision(q, s(3, 4)));
    CHECK(q.valuation() == 0);

    // absorbing element
    auto z = PadicScalar::exact_zero(3) * s(3, 17);
    CHECK(z.is_exact_zero());

    // valuation additivity, v_5(5 * 5^2) = 3
    CHECK((s(5, 5) * s(5, 25)).valuation() == 3);
}

TEST_CASE("valuation basics") {
    CHECK(s(3, 9).valuation() == 2);
    CHECK(PadicScalar::exact_zero(3).valuation() == PadicScalar::kInfValuation);
    CHECK((s(3, 1) / s(3, 3)).valuation() == -1);
}

TEST_CASE("binomial coefficients") {
    CHECK(eq_at_precision(binomial(s(3, 4), 2), s(3, 6)));
    CHECK(eq_at_precision(binomial(s(3, 7), 0), s(3, 1)));
    CHECK(binomial(s(3, 3), 1).valuation() == 1);
    CHECK(binomial(s(3, 3), 2).valuation() == 1);
    CHECK_THROWS_AS(binomial(s(3, 1) / s(3, 3), 1), ConfigError);
}

TEST_CASE("binomial integrality (property)") {
    for (std::uint64_t p : {3ULL, 5ULL, 7ULL}) {
        auto g = testutil::rng(1000 + p);
        for (int trial = 0; trial < 60; ++trial) {
            auto a = testutil::random_integer(g, p, 14);
            std::uniform_int_distribution<unsigned> id(0, static_cast<unsigned>(2 * p));
            auto b = binomial(a, id(g), 14);
            CHECK(b.integral_certified());
        }
    }
}

TEST_CASE("ultrametric inequality (property)") {
    auto g = testutil::rng(42);
    for (int trial = 0; trial < 200; ++trial) {
        auto a = testutil::random_scalar(g, 5, 12);
        auto b = testutil::random_scalar(g, 5, 12);
        auto c = a + b;
        auto lo = std::min(a.valuation(), b.valuation());
        CHECK(c.valuation() >= lo);
        if (a.valuation() != b.valuation()) CHECK(c.valuation() == lo);
    }
}

TEST_CASE("algebraic laws at tracked precision (property)") {
    auto g = testutil::rng(7);
    for (int trial = 0; trial < 200; ++trial) {
        auto a = testutil::random_scalar(g, 3, 10);
        auto b = testutil::random_scalar(g, 3, 10);
        auto c = testutil::random_scalar(g, 3, 10);
        CHECK(eq_at_precision((a + b) + c, a + (b + c)));
        CHECK(eq_at_precision(a * (b + c), a * b + a * c));
        CHECK(eq_at_precision(a * b, b * a));
        CHECK(eq_at_precision((a * b) * c, a * (b * c)));
    }
}

TEST_CASE("precision bookkeeping never inflates") {
    auto one = s(3, 1);
    auto diff = one - one;
    CHECK(diff.is_zero());
    CHECK_FALSE(diff.is_exact_zero());
    CHECK(diff.valuation() == 12);  // O(3^12): all 12 digits cancelled

    // cancellation of leading digits costs relative precision
    auto a = s(3, 1 + 81);  // 1 + 3^4
    auto b = s(3, 1);
    auto d = a - b;         // 3^4, known mod 3^12 -> 8 digits
    CHECK(d.valuation() == 4);
    CHECK(d.abs_precision() == 12);
}

TEST_CASE("division errors") {
    CHECK_THROWS_AS(s(3, 1) / PadicScalar::exact_zero(3), CheckError);
    auto fuzz = PadicScalar::inexact_zero(3, 5);
    CHECK_THROWS_AS(s(3, 1) / fuzz, PrecisionError);
    // dividing an inexact zero is fine
    auto q = fuzz / s(3, 3);
    CHECK(q.is_zero());
    CHECK(q.valuation() == 4);
}

TEST_CASE("divisibility certificates") {
    CHECK(s(3, 18).divisible_by(2));
    CHECK_FALSE(s(3, 18).divisible_by(3));
    CHECK(PadicScalar::inexact_zero(3, 7).divisible_by(5));
    CHECK_THROWS_AS(PadicScalar::inexact_zero(3, 2).divisible_by(5), PrecisionError);
}

TEST_CASE("residues") {
    CHECK(s(3, 14).residue_mod(2) == 5);
    CHECK(s(3, 9).residue_mod(1) == 0);
    CHECK(PadicScalar::exact_zero(3).residue_mod(4) == 0);
    CHECK_THROWS_AS((s(3, 1) / s(3, 3)).residue_mod(1), CheckError);
}

TEST_CASE("scalar strings round-trip") {
    auto a = s(3, 45);  // 5*3^2
    CHECK(a.to_string() == "5*3^2 (mod 3^14)");
    auto back = PadicScalar::parse(3, a.to_string(), 12);
    CHECK(back == a);

    CHECK(PadicScalar::parse(3, "0", 12).is_exact_zero());
    auto iz = PadicScalar::inexact_zero(3, 6);
    CHECK(PadicScalar::parse(3, iz.to_string(), 12) == iz);
    CHECK(eq_at_precision(PadicScalar::parse(3, "12", 12), s(3, 12)));
    CHECK(PadicScalar::parse(3, "1*3^1", 12).valuation() == 1);
    CHECK_THROWS_AS(PadicScalar::parse(3, "junk", 12), ConfigError);
    CHECK_THROWS_AS(PadicScalar::parse(3, "1*5^1", 12), ConfigError);
}
