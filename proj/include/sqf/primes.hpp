#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <memory>
#include <string>
#include <vector>

#include "sqf/errors.hpp"

namespace sqf {

inline constexpr std::uint64_t kMaxSieveLimit = std::uint64_t{1} << 27;

// Odd-only sieve with a smallest-prime-factor table. Serves both prime
// enumeration and factoring the odd part of series indices. Immutable once
// built.
class PrimeTable {
public:
    static PrimeTable build(std::uint64_t limit) {
        if (limit < 3) throw DomainError("PrimeTable: limit must be >= 3");
        if (limit > kMaxSieveLimit)
            throw ResourceError("PrimeTable: limit " + std::to_string(limit) +
                                " exceeds sieve cap " + std::to_string(kMaxSieveLimit));
        PrimeTable t;
        t.limit_ = limit;
        t.sf_.assign(static_cast<std::size_t>((limit - 1) / 2), 0);  // slot i <-> odd value 2i+3
        for (std::uint64_t v = 3; v * v <= limit; v += 2) {
            if (t.sf_[(v - 3) / 2] != 0) continue;
            for (std::uint64_t mult = v * v; mult <= limit; mult += 2 * v) {
                auto& slot = t.sf_[(mult - 3) / 2];
                if (slot == 0) slot = static_cast<std::uint32_t>(v);
            }
        }
        for (std::size_t i = 0; i < t.sf_.size(); ++i) {
            if (t.sf_[i] == 0) {
                const std::uint64_t v = 2 * i + 3;
                t.sf_[i] = static_cast<std::uint32_t>(v);
                t.primes_.push_back(static_cast<std::uint32_t>(v));
            }
        }
        return t;
    }

    std::uint64_t limit() const { return limit_; }

    // ascending odd primes <= limit
    const std::vector<std::uint32_t>& primes() const { return primes_; }

    // smallest prime factor of odd n in [3, limit]
    std::uint32_t smallest_factor(std::uint64_t n) const {
        if (n < 3 || n % 2 == 0 || n > limit_)
            throw DomainError("smallest_factor: odd n with 3 <= n <= limit required");
        return sf_[(n - 3) / 2];
    }

    bool is_odd_prime(std::uint64_t n) const {
        return n >= 3 && n % 2 == 1 && n <= limit_ && sf_[(n - 3) / 2] == n;
    }

    // 1-based position of p among the ascending odd primes
    std::uint64_t rank(std::uint64_t p) const {
        const auto it = std::lower_bound(primes_.begin(), primes_.end(), p);
        if (it == primes_.end() || *it != p)
            throw DomainError("rank: " + std::to_string(p) + " is not an odd prime within the table");
        return static_cast<std::uint64_t>(it - primes_.begin()) + 1;
    }

private:
    std::uint64_t limit_ = 0;
    std::vector<std::uint32_t> primes_;
    std::vector<std::uint32_t> sf_;
};

inline PrimeTable sieve_odd_primes(std::uint64_t limit) { return PrimeTable::build(limit); }

// An ordering of the odd primes: an explicit finite prefix followed by the
// remaining primes in increasing order. The induced sequence and its logs are
// materialized lazily; the sieve grows by doubling when an index runs past
// it. Logically const; share across threads only under a single writer.
class PrimeOrdering {
public:
    PrimeOrdering() { init({}); }
    explicit PrimeOrdering(std::vector<std::uint64_t> prefix) { init(std::move(prefix)); }

    static PrimeOrdering increasing() { return PrimeOrdering{}; }

    const std::vector<std::uint64_t>& prefix() const { return prefix_; }
    bool is_increasing() const { return prefix_.empty(); }

    // i-th prime of the induced sequence, 1-based
    std::uint64_t nth(std::uint64_t i) const {
        if (i == 0) throw DomainError("PrimeOrdering::nth: index is 1-based");
        ensure_count(i);
        return seq_[i - 1];
    }

    double log_nth(std::uint64_t i) const {
        if (i == 0) throw DomainError("PrimeOrdering::log_nth: index is 1-based");
        ensure_count(i);
        return logs_[i - 1];
    }

    // {p_1, ..., p_m}
    std::vector<std::uint64_t> first_m(std::uint64_t m) const {
        if (m == 0) throw DomainError("PrimeOrdering::first_m: m >= 1 required");
        ensure_count(m);
        return {seq_.begin(), seq_.begin() + static_cast<std::ptrdiff_t>(m)};
    }

    // position of the odd prime p in the induced sequence, 1-based
    std::uint64_t index_of(std::uint64_t p) const {
        for (std::size_t j = 0; j < prefix_.size(); ++j)
            if (prefix_[j] == p) return j + 1;
        const PrimeTable& t = table(p);
        if (!t.is_odd_prime(p))
            throw DomainError("PrimeOrdering::index_of: " + std::to_string(p) + " is not an odd prime");
        const std::uint64_t r = t.rank(p);
        const auto skipped = static_cast<std::uint64_t>(
            std::upper_bound(prefix_sorted_.begin(), prefix_sorted_.end(), p) - prefix_sorted_.begin());
        return prefix_.size() + r - skipped;
    }

    // read access to the shared sieve, grown to cover at least min_limit
    const PrimeTable& table(std::uint64_t min_limit) const {
        if (table_->limit() < min_limit) grow_table(min_limit);
        return *table_;
    }

private:
    std::vector<std::uint64_t> prefix_;
    std::vector<std::uint64_t> prefix_sorted_;
    mutable std::shared_ptr<const PrimeTable> table_;
    mutable std::vector<std::uint64_t> seq_;
    mutable std::vector<double> logs_;
    mutable std::size_t tail_rank_ = 0;  // 0-based rank of the next ascending prime to consider

    void init(std::vector<std::uint64_t> prefix) {
        prefix_ = std::move(prefix);
        prefix_sorted_ = prefix_;
        std::sort(prefix_sorted_.begin(), prefix_sorted_.end());
        if (std::adjacent_find(prefix_sorted_.begin(), prefix_sorted_.end()) != prefix_sorted_.end())
            throw DomainError("ordering prefix: entries must be distinct");
        table_ = std::make_shared<PrimeTable>(PrimeTable::build(std::uint64_t{1} << 20));
        for (std::uint64_t p : prefix_) {
            if (!table(std::max<std::uint64_t>(p, 3)).is_odd_prime(p))
                throw DomainError("ordering prefix: " + std::to_string(p) + " is not an odd prime");
        }
        seq_ = prefix_;
        logs_.reserve(prefix_.size());
        for (std::uint64_t p : prefix_) logs_.push_back(std::log(static_cast<double>(p)));
    }

    void grow_table(std::uint64_t min_limit) const {
        if (min_limit > kMaxSieveLimit)
            throw ResourceError("prime table: needed limit " + std::to_string(min_limit) +
                                " exceeds sieve cap " + std::to_string(kMaxSieveLimit));
        std::uint64_t lim = table_->limit();
        while (lim < min_limit) lim = std::min(kMaxSieveLimit, lim * 2);
        table_ = std::make_shared<PrimeTable>(PrimeTable::build(lim));
    }

    void ensure_count(std::uint64_t count) const {
        while (seq_.size() < count) {
            if (tail_rank_ >= table_->primes().size()) {
                if (table_->limit() >= kMaxSieveLimit)
                    throw ResourceError("prime ordering: sieve cap reached while extending the sequence");
                grow_table(table_->limit() * 2);
            }
            const std::uint64_t cand = table_->primes()[tail_rank_++];
            if (std::binary_search(prefix_sorted_.begin(), prefix_sorted_.end(), cand)) continue;
            seq_.push_back(cand);
            logs_.push_back(std::log(static_cast<double>(cand)));
        }
    }
};

}  // namespace sqf
