#include <catch2/catch_amalgamated.hpp>

#include <set>

#include "sqf/primes.hpp"
#include "support.hpp"

using sqf::PrimeOrdering;
using sqf::PrimeTable;

TEST_CASE("sieve matches hand values and the trial-division oracle", "[primes]") {
    CHECK(sqf::sieve_odd_primes(10).primes() == std::vector<std::uint32_t>{3, 5, 7});
    CHECK(sqf::sieve_odd_primes(3).primes() == std::vector<std::uint32_t>{3});

    const PrimeTable t = sqf::sieve_odd_primes(100);
    REQUIRE(t.primes().size() == 24);
    const auto oracle = support::trial_division_odd_primes(100);
    REQUIRE(oracle.size() == 24);
    for (std::size_t i = 0; i < oracle.size(); ++i) CHECK(t.primes()[i] == oracle[i]);
}

TEST_CASE("sieve rejects limits below 3", "[primes]") {
    CHECK_THROWS_AS(sqf::sieve_odd_primes(2), sqf::DomainError);
    CHECK_THROWS_AS(sqf::sieve_odd_primes(0), sqf::DomainError);
}

TEST_CASE("smallest factor divides and is prime", "[primes]") {
    const PrimeTable t = sqf::sieve_odd_primes(2000);
    for (std::uint64_t n = 3; n <= 1999; n += 2) {
        const std::uint64_t sf = t.smallest_factor(n);
        CHECK(n % sf == 0);
        CHECK(support::is_odd_prime_trial(sf));
        // smallest: no odd divisor below sf
        for (std::uint64_t d = 3; d < sf; d += 2) CHECK(n % d != 0);
    }
}

TEST_CASE("ordering nth follows prefix then ascending tail", "[primes]") {
    CHECK(PrimeOrdering::increasing().nth(1) == 3);
    const PrimeOrdering o({7, 3});
    CHECK(o.nth(1) == 7);
    CHECK(o.nth(2) == 3);
    CHECK(o.nth(3) == 5);
    CHECK(o.nth(4) == 11);
}

TEST_CASE("first_m returns the m-set", "[primes]") {
    CHECK(PrimeOrdering::increasing().first_m(3) == std::vector<std::uint64_t>{3, 5, 7});
    CHECK(PrimeOrdering({11}).first_m(1) == std::vector<std::uint64_t>{11});
    CHECK(PrimeOrdering::increasing().first_m(5) == std::vector<std::uint64_t>{3, 5, 7, 11, 13});
}

TEST_CASE("prefix validation", "[primes]") {
    CHECK_THROWS_AS(PrimeOrdering({9}), sqf::DomainError);
    CHECK_THROWS_AS(PrimeOrdering({2}), sqf::DomainError);
    CHECK_THROWS_AS(PrimeOrdering({4}), sqf::DomainError);
    CHECK_THROWS_AS(PrimeOrdering({5, 5}), sqf::DomainError);
    CHECK_NOTHROW(PrimeOrdering({104729}));  // larger than the initial table
}

TEST_CASE("induced sequence is a bijection onto the odd primes", "[primes]") {
    const auto prefixes = support::fixed_random_prefixes(4, 20260809);
    for (const auto& pf : prefixes) {
        const PrimeOrdering o(pf);
        std::set<std::uint64_t> seen;
        for (std::uint64_t i = 1; i <= 100'000; ++i) {
            const std::uint64_t p = o.nth(i);
            CHECK(p % 2 == 1);
            const bool fresh = seen.insert(p).second;
            if (!fresh) FAIL("duplicate prime at index " << i);
        }
        // every set of m first entries has cardinality m by injectivity
        CHECK(o.first_m(257).size() == 257);
    }
}

TEST_CASE("empty prefix reproduces the ascending odd primes", "[primes]") {
    const PrimeOrdering o;
    const auto oracle = support::trial_division_odd_primes(105'000);
    for (std::size_t i = 0; i < oracle.size(); ++i) CHECK(o.nth(i + 1) == oracle[i]);
}

TEST_CASE("index_of inverts nth", "[primes]") {
    for (const auto& pf : support::fixed_random_prefixes(4, 7)) {
        const PrimeOrdering o(pf);
        for (std::uint64_t i = 1; i <= 1000; ++i) CHECK(o.index_of(o.nth(i)) == i);
    }
    CHECK_THROWS_AS(PrimeOrdering::increasing().index_of(9), sqf::DomainError);
    CHECK_THROWS_AS(PrimeOrdering::increasing().index_of(2), sqf::DomainError);
}

TEST_CASE("table auto-extends past its initial limit", "[primes]") {
    const PrimeOrdering o;
    const std::uint64_t p = o.nth(100'000);
    CHECK(p > (std::uint64_t{1} << 20));
    CHECK(o.table(p).is_odd_prime(p));
}
