#pragma once

#include <bit>
#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>

#include "sqf/errors.hpp"
#include "sqf/primes.hpp"

namespace sqf {

using BigInt = boost::multiprecision::cpp_int;

inline constexpr std::uint64_t kBlockCap = 30;        // hard cap for a single materialized block
inline constexpr std::uint64_t kBlockStreamCap = 22;  // cap while streaming whole prefixes of Q

// Squarefree odd q with its exact value and bookkeeping for the induced
// ordering. q is kept as an exact integer; log_q is the sum of ln p over the
// factorization, never a float conversion of q itself.
struct SquarefreeTerm {
    BigInt q;
    std::vector<std::uint64_t> prime_set;  // ascending by value
    int sign = 1;                          // (-1)^{|prime_set|}
    std::uint64_t block = 0;               // ordering index of the largest-indexed prime
    std::uint64_t position = 0;            // 1-based index in the induced ordering, 0 = unset
    double log_q = 0.0;
};

// Just enough to evaluate series terms without the factorization.
struct QLite {
    BigInt q;
    double log_q;
    std::int8_t sign;
};

struct BlockIndex {
    std::uint64_t m = 0;
    std::vector<SquarefreeTerm> members;  // ascending by q
};

// Emits the blocks induced by a prime ordering. Block m is
// {p_m} ∪ p_m·U_{m-1}, sorted ascending; the accumulated universe U_m is the
// concatenation of blocks 1..m, which is exactly the induced ordering of Q.
class BlockStream {
public:
    explicit BlockStream(const PrimeOrdering& ordering, std::uint64_t max_m = kBlockStreamCap)
        : ordering_(&ordering), max_m_(max_m) {}

    std::uint64_t current_m() const { return m_; }
    const std::vector<QLite>& universe() const { return u_; }

    // generates the next block; returns its [first, last) span within universe()
    std::pair<std::size_t, std::size_t> advance() {
        if (m_ + 1 > max_m_)
            throw ResourceError("block stream: m = " + std::to_string(m_ + 1) +
                                " exceeds materialization cap " + std::to_string(max_m_));
        const std::uint64_t m = m_ + 1;
        const std::uint64_t p = ordering_->nth(m);
        const double lnp = ordering_->log_nth(m);
        const std::size_t first = u_.size();
        std::vector<QLite> blk;
        blk.reserve(first + 1);
        blk.push_back(QLite{BigInt(p), lnp, -1});
        for (std::size_t j = 0; j < first; ++j)
            blk.push_back(QLite{u_[j].q * p, u_[j].log_q + lnp, static_cast<std::int8_t>(-u_[j].sign)});
        std::sort(blk.begin(), blk.end(), [](const QLite& a, const QLite& b) { return a.q < b.q; });
        u_.reserve(first + blk.size());
        for (auto& t : blk) u_.push_back(std::move(t));
        m_ = m;
        return {first, u_.size()};
    }

    void advance_to(std::uint64_t m) {
        while (m_ < m) advance();
    }
    void advance_until_size(std::size_t n) {
        while (u_.size() < n) advance();
    }

private:
    const PrimeOrdering* ordering_;  // must outlive the stream
    std::uint64_t m_ = 0;
    std::uint64_t max_m_;
    std::vector<QLite> u_;
};

inline int f_k(std::uint64_t k) {
    if (k == 0) throw DomainError("f_k: k >= 1 required");
    return (k & (k - 1)) == 0 ? 0 : -1;
}

inline int sgn(const SquarefreeTerm& t) { return t.sign; }

inline int delta(std::uint64_t k, const BigInt& q) {
    if (k == 0) throw DomainError("delta: k >= 1 required");
    if (q > k) return 0;
    return (BigInt(k) % q == 0) ? 1 : 0;
}

inline int delta(std::uint64_t k, const SquarefreeTerm& t) { return delta(k, t.q); }

// Recovers the factorization of a streamed q over the first within_m entries
// of the ordering.
inline SquarefreeTerm enrich(const PrimeOrdering& o, const QLite& lite, std::uint64_t within_m,
                             std::uint64_t position) {
    SquarefreeTerm t;
    t.q = lite.q;
    t.sign = lite.sign;
    t.log_q = lite.log_q;
    t.position = position;
    for (std::uint64_t i = 1; i <= within_m; ++i) {
        const std::uint64_t p = o.nth(i);
        if (t.q % p == 0) {
            t.prime_set.push_back(p);
            t.block = std::max(t.block, i);
        }
    }
    std::sort(t.prime_set.begin(), t.prime_set.end());
    return t;
}

inline BlockIndex block(const PrimeOrdering& o, std::uint64_t m) {
    if (m == 0) throw DomainError("block: m >= 1 required");
    if (m > kBlockCap)
        throw ResourceError("block: m = " + std::to_string(m) + " rejected (2^(m-1) members, cap " +
                            std::to_string(kBlockCap) + ")");
    BlockStream s(o, m);
    std::pair<std::size_t, std::size_t> span{0, 0};
    for (std::uint64_t i = 0; i < m; ++i) span = s.advance();
    BlockIndex b;
    b.m = m;
    b.members.reserve(span.second - span.first);
    for (std::size_t j = span.first; j < span.second; ++j)
        b.members.push_back(enrich(o, s.universe()[j], m, j + 1));
    return b;
}

// q_1 .. q_n of the induced ordering (C1: ascending inside a block, C2: blocks
// in order). Position pos lives in block bit_width(pos) since |U_m| = 2^m - 1.
inline std::vector<SquarefreeTerm> induced_sequence(const PrimeOrdering& o, std::uint64_t n) {
    if (n == 0) throw DomainError("induced_sequence: n >= 1 required");
    BlockStream s(o);
    s.advance_until_size(n);
    std::vector<SquarefreeTerm> out;
    out.reserve(n);
    for (std::uint64_t pos = 1; pos <= n; ++pos)
        out.push_back(enrich(o, s.universe()[pos - 1], std::bit_width(pos), pos));
    return out;
}

// least m such that U_m contains every odd prime <= K; 1 when there is none
inline std::uint64_t m_of_K(const PrimeOrdering& o, std::uint64_t K) {
    if (K == 0) throw DomainError("m_of_K: K >= 1 required");
    if (K < 3) return 1;
    const PrimeTable& t = o.table(K);
    std::uint64_t m = 1;
    for (std::uint32_t p : t.primes()) {
        if (p > K) break;
        m = std::max(m, o.index_of(p));
    }
    return m;
}

struct Rational64 {
    std::uint64_t num = 0;
    std::uint64_t den = 1;
};

struct DivisorFilter {
    std::optional<std::uint64_t> within_m;  // q ∈ U_m: every prime factor has ordering index <= m
    std::optional<Rational64> min_q;        // q >= num/den, evaluated exactly
};

// Sum of sgn q over squarefree odd q dividing k, via subsets of the distinct
// odd prime factors of k. With no filter this telescopes to f(k).
inline int signed_divisor_sum(const PrimeOrdering& o, std::uint64_t k, const DivisorFilter& filter = {}) {
    if (k == 0) throw DomainError("signed_divisor_sum: k >= 1 required");
    std::uint64_t odd = k >> std::countr_zero(k);
    std::vector<std::uint64_t> ps;
    if (odd > 1) {
        const PrimeTable& t = o.table(odd);
        while (odd > 1) {
            const std::uint64_t p = t.smallest_factor(odd);
            ps.push_back(p);
            while (odd % p == 0) odd /= p;
        }
    }
    if (filter.within_m)
        std::erase_if(ps, [&](std::uint64_t p) { return o.index_of(p) > *filter.within_m; });
    const auto w = static_cast<std::uint32_t>(ps.size());
    int sum = 0;
    for (std::uint64_t mask = 1; mask < (std::uint64_t{1} << w); ++mask) {
        std::uint64_t q = 1;
        for (std::uint32_t b = 0; b < w; ++b)
            if (mask & (std::uint64_t{1} << b)) q *= ps[b];
        if (filter.min_q) {
            const auto lhs = static_cast<unsigned __int128>(q) * filter.min_q->den;
            if (lhs < filter.min_q->num) continue;
        }
        sum += (std::popcount(mask) & 1) ? -1 : 1;
    }
    return sum;
}

}  // namespace sqf
