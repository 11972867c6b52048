#include <catch2/catch_amalgamated.hpp>

#include <cmath>
#include <set>

#include "sqf/squarefree.hpp"
#include "support.hpp"

using sqf::BigInt;
using sqf::PrimeOrdering;

namespace {
std::vector<std::uint64_t> block_values(const sqf::BlockIndex& b) {
    std::vector<std::uint64_t> v;
    for (const auto& t : b.members) v.push_back(t.q.convert_to<std::uint64_t>());
    return v;
}
}  // namespace

TEST_CASE("blocks under the increasing ordering", "[squarefree]") {
    const PrimeOrdering o;
    CHECK(block_values(sqf::block(o, 1)) == std::vector<std::uint64_t>{3});
    CHECK(block_values(sqf::block(o, 2)) == std::vector<std::uint64_t>{5, 15});
    CHECK(block_values(sqf::block(o, 3)) == std::vector<std::uint64_t>{7, 21, 35, 105});
    CHECK_THROWS_AS(sqf::block(o, 31), sqf::ResourceError);
}

TEST_CASE("induced sequence start", "[squarefree]") {
    const PrimeOrdering o;
    const auto seq = sqf::induced_sequence(o, 8);
    const std::vector<std::uint64_t> expect_q{3, 5, 15, 7, 21, 35, 105, 11};
    const std::vector<int> expect_sign{-1, -1, 1, -1, 1, 1, -1, -1};
    const std::vector<std::uint64_t> expect_block{1, 2, 2, 3, 3, 3, 3, 4};
    REQUIRE(seq.size() == 8);
    for (std::size_t i = 0; i < 8; ++i) {
        CHECK(seq[i].q == expect_q[i]);
        CHECK(seq[i].sign == expect_sign[i]);
        CHECK(seq[i].block == expect_block[i]);
        CHECK(seq[i].position == i + 1);
    }

    CHECK(sqf::induced_sequence(o, 1).at(0).q == 3);

    const auto pref5 = sqf::induced_sequence(PrimeOrdering({5}), 3);
    CHECK(pref5[0].q == 5);
    CHECK(pref5[1].q == 3);
    CHECK(pref5[2].q == 15);
}

TEST_CASE("term invariants hold on generated terms", "[squarefree]") {
    for (const auto& pf : support::fixed_random_prefixes(3, 11)) {
        const PrimeOrdering o(pf);
        for (const auto& t : sqf::induced_sequence(o, 1 << 10)) {
            BigInt prod = 1;
            std::uint64_t max_idx = 0;
            for (std::uint64_t p : t.prime_set) {
                prod *= p;
                max_idx = std::max(max_idx, o.index_of(p));
            }
            REQUIRE(prod == t.q);
            CHECK(t.sign == ((t.prime_set.size() % 2) ? -1 : 1));
            CHECK(t.block == max_idx);
            if (t.q < (BigInt(1) << 53)) {
                const double direct = std::log(t.q.convert_to<double>());
                CHECK(std::abs(t.log_q - direct) <= 1e-12 * std::abs(direct));
            }
        }
    }
}

TEST_CASE("sgn and delta and f", "[squarefree]") {
    const PrimeOrdering o;
    const auto seq = sqf::induced_sequence(o, 8);
    CHECK(sqf::sgn(seq[2]) == 1);    // 15
    CHECK(sqf::sgn(seq[0]) == -1);   // 3
    CHECK(sqf::sgn(seq[6]) == -1);   // 105

    CHECK(sqf::delta(15, seq[0]) == 1);   // 3 | 15
    CHECK(sqf::delta(8, seq[0]) == 0);
    CHECK(sqf::delta(105, seq[5]) == 1);  // 35 | 105

    CHECK(sqf::f_k(8) == 0);
    CHECK(sqf::f_k(1) == 0);
    CHECK(sqf::f_k(45) == -1);
    CHECK_THROWS_AS(sqf::f_k(0), sqf::DomainError);
}

TEST_CASE("m_of_K", "[squarefree]") {
    const PrimeOrdering inc;
    CHECK(sqf::m_of_K(inc, 10) == 3);  // needs {3,5,7}
    CHECK(sqf::m_of_K(inc, 2) == 1);   // vacuous
    CHECK(sqf::m_of_K(inc, 1) == 1);
    CHECK(sqf::m_of_K(PrimeOrdering({7, 5, 3}), 7) == 3);
    CHECK(sqf::m_of_K(PrimeOrdering({11}), 3) == 2);  // 3 sits at index 2
}

TEST_CASE("signed divisor sum matches hand values and the brute oracle", "[squarefree]") {
    const PrimeOrdering inc;
    CHECK(sqf::signed_divisor_sum(inc, 45) == -1);
    CHECK(sqf::signed_divisor_sum(inc, 16) == 0);
    CHECK(sqf::signed_divisor_sum(inc, 105) == -1);
    for (std::uint64_t k = 1; k <= 2000; ++k)
        CHECK(sqf::signed_divisor_sum(inc, k) == support::brute_signed_divisor_sum(k));
}

TEST_CASE("signed divisor sum filters", "[squarefree]") {
    const PrimeOrdering inc;
    sqf::DivisorFilter f;
    f.within_m = 2;  // U_2 = {3, 5, 15}
    CHECK(sqf::signed_divisor_sum(inc, 45, f) == -1);  // -3 -5 +15
    f.within_m = 1;  // U_1 = {3}
    CHECK(sqf::signed_divisor_sum(inc, 45, f) == -1);
    f = {};
    f.min_q = sqf::Rational64{16, 3};  // q >= 16/3
    CHECK(sqf::signed_divisor_sum(inc, 45, f) == 1);  // only 15 passes
}

TEST_CASE("block and universe sizes", "[squarefree]") {
    for (const auto& pf : support::fixed_random_prefixes(2, 5)) {
        const PrimeOrdering o(pf);
        sqf::BlockStream s(o);
        std::set<BigInt> seen;
        for (std::uint64_t m = 1; m <= 12; ++m) {
            const auto [first, last] = s.advance();
            CHECK(last - first == (std::uint64_t{1} << (m - 1)));
            CHECK(last == (std::uint64_t{1} << m) - 1);
            for (std::size_t j = first; j < last; ++j) {
                const bool fresh = seen.insert(s.universe()[j].q).second;
                if (!fresh) FAIL("duplicate q across blocks");
                if (j > first) CHECK(s.universe()[j - 1].q < s.universe()[j].q);
            }
        }
        CHECK(seen.size() == (std::size_t{1} << 12) - 1);
    }
}
