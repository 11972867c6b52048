#include <catch2/catch_amalgamated.hpp>

#include <cmath>

#include "sqf/equidist.hpp"
#include "support.hpp"

TEST_CASE("bucket fractions at the classic phase frequency", "[equidist]") {
    const auto r = sqf::bucket_fractions(1'000'000, 14.134725, 0.0, 0.5);
    CHECK(r.frac_plus >= 0.28);
    CHECK(r.frac_plus <= 0.38);
    CHECK(std::abs(r.frac_plus + r.frac_minus + r.frac_neutral - 1.0) <= 1e-15);
    CHECK(r.count_plus + r.count_minus + r.count_neutral == r.total);
}

TEST_CASE("slow phases put everything in the plus bucket", "[equidist]") {
    const auto r = sqf::bucket_fractions(1000, 0.0001, 0.0, 0.5);
    CHECK(r.frac_plus >= 0.99);
}

TEST_CASE("a narrow cap leaves the neutral bucket dominant", "[equidist]") {
    const auto r = sqf::bucket_fractions(100'000, 14.134725, 0.0, 0.999);
    CHECK(r.frac_neutral > 0.5);
    CHECK(r.frac_neutral > r.frac_plus);
    CHECK(r.frac_neutral > r.frac_minus);
}

TEST_CASE("bucket fraction domain guards", "[equidist]") {
    CHECK_THROWS_AS(sqf::bucket_fractions(2, 1.0, 0.0, 0.5), sqf::DomainError);
    CHECK_THROWS_AS(sqf::bucket_fractions(100, 1.0, 0.0, 1.2), sqf::DomainError);
    CHECK_THROWS_AS(sqf::bucket_fractions(100, 0.0, 0.0, 0.5), sqf::DomainError);
    CHECK_THROWS_AS(sqf::reciprocal_sums(100, 1.0, 0.0, 0.5, 1.5), sqf::DomainError);
}

TEST_CASE("reciprocal sums grow monotonically and partition at every checkpoint", "[equidist]") {
    const auto table = sqf::reciprocal_sums(1'000'000, 14.134725, 0.0, 0.5, 0.75);
    REQUIRE(table.rows.size() == 4);  // 1e3, 1e4, 1e5, 1e6

    const sqf::PrimeTable t = sqf::sieve_odd_primes(1'000'000);
    for (std::size_t i = 0; i < table.rows.size(); ++i) {
        const auto& row = table.rows[i];
        std::uint64_t expected_total = 0;
        for (std::uint32_t p : t.primes())
            if (p <= row.N) ++expected_total;
        CHECK(row.count[0] + row.count[1] + row.count[2] == expected_total);
        if (i > 0) {
            for (int c = 0; c < 3; ++c) {
                CHECK(row.recip[c] > table.rows[i - 1].recip[c]);
                CHECK(row.recip_x[c] > table.rows[i - 1].recip_x[c]);
            }
        }
    }
}

TEST_CASE("plus-bucket growth sits in the Mertens band", "[equidist]") {
    const auto table = sqf::reciprocal_sums(1'000'000, 14.134725, 0.0, 0.5, 1.0);
    REQUIRE(table.rows.size() == 4);
    const double at_1e4 = table.rows[1].recip[0];
    const double at_1e6 = table.rows[3].recip[0];
    const double increment = at_1e6 - at_1e4;
    const double predicted =
        (std::log(std::log(1e6)) - std::log(std::log(1e4))) / 3.0;  // density 1/3
    CHECK(increment >= 0.75 * predicted);
    CHECK(increment <= 1.25 * predicted);
    CHECK(table.slope_vs_lnln[0] > 0.0);
}

TEST_CASE("two runs produce identical tables", "[equidist]") {
    const auto a = sqf::reciprocal_sums(100'000, 14.134725, 0.0, 0.5, 0.75);
    const auto b = sqf::reciprocal_sums(100'000, 14.134725, 0.0, 0.5, 0.75);
    REQUIRE(a.rows.size() == b.rows.size());
    for (std::size_t i = 0; i < a.rows.size(); ++i) {
        for (int c = 0; c < 3; ++c) {
            CHECK(a.rows[i].count[c] == b.rows[i].count[c]);
            CHECK(a.rows[i].recip[c] == b.rows[i].recip[c]);      // bitwise
            CHECK(a.rows[i].recip_x[c] == b.rows[i].recip_x[c]);  // bitwise
        }
    }
    for (int c = 0; c < 3; ++c) CHECK(a.slope_vs_lnln[c] == b.slope_vs_lnln[c]);
}
