#pragma once

#include <algorithm>
#include <bit>
#include <cstdint>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include "sqf/parallel.hpp"
#include "sqf/primes.hpp"
#include "sqf/series.hpp"
#include "sqf/squarefree.hpp"

namespace sqf {

struct VerifyResult {
    bool pass = true;
    std::uint64_t checked = 0;
    double max_error = 0.0;
    std::string witness;  // first discrepancy; empty on pass
};

// Exact check that ∏_{i<=m}(1 - X_{p_i}) - 1 expands to the signed multiset
// {(q, sgn q) : q ∈ U_m}. One side enumerates subsets of {p_1..p_m} directly,
// the other runs the block machinery; both sides are exact integers, so any
// mismatch is a counterexample rather than a tolerance issue.
inline VerifyResult verify_product_expansion(const PrimeOrdering& o, std::uint64_t m) {
    if (m == 0 || m > 16)
        throw ResourceError("verify_product_expansion: 1 <= m <= 16 required (2^m - 1 terms)");
    VerifyResult res;

    std::vector<std::pair<BigInt, int>> expansion;
    expansion.reserve((std::size_t{1} << m) - 1);
    const std::vector<std::uint64_t> ps = o.first_m(m);
    for (std::uint64_t mask = 1; mask < (std::uint64_t{1} << m); ++mask) {
        BigInt q = 1;
        for (std::uint64_t b = 0; b < m; ++b)
            if (mask & (std::uint64_t{1} << b)) q *= ps[b];
        expansion.emplace_back(std::move(q), (std::popcount(mask) & 1) ? -1 : 1);
    }
    std::sort(expansion.begin(), expansion.end(),
              [](const auto& a, const auto& b) { return a.first < b.first; });

    BlockStream s(o, m);
    s.advance_to(m);
    std::vector<std::pair<BigInt, int>> um;
    um.reserve(s.universe().size());
    for (const QLite& t : s.universe()) um.emplace_back(t.q, static_cast<int>(t.sign));
    std::sort(um.begin(), um.end(), [](const auto& a, const auto& b) { return a.first < b.first; });

    res.checked = expansion.size();
    const auto fail = [&](const std::string& w) {
        res.pass = false;
        res.witness = w;
        return res;
    };
    if (expansion.size() != um.size())
        return fail("cardinality: expansion has " + std::to_string(expansion.size()) + ", blocks have " +
                    std::to_string(um.size()));
    for (std::size_t i = 0; i < expansion.size(); ++i) {
        // collisions are impossible by unique factorization; assert rather than assume
        if (i + 1 < expansion.size() && expansion[i].first == expansion[i + 1].first)
            return fail("expansion collision at q = " + expansion[i].first.str());
        if (i + 1 < um.size() && um[i].first == um[i + 1].first)
            return fail("block collision at q = " + um[i].first.str());
        if (expansion[i] != um[i]) {
            std::ostringstream w;
            w << "entry " << i << ": expansion (" << expansion[i].first.str() << ", " << expansion[i].second
              << ") vs blocks (" << um[i].first.str() << ", " << um[i].second << ")";
            return fail(w.str());
        }
    }
    return res;
}

struct FkRangeResult {
    bool pass = true;
    std::uint64_t checked = 0;
    std::vector<std::uint64_t> failing;
};

// signed_divisor_sum(k) == f(k) for every 1 <= k <= k_max
inline FkRangeResult verify_fk_range(std::uint64_t k_max, unsigned threads = 1) {
    if (k_max == 0) throw DomainError("verify_fk_range: k_max >= 1 required");
    PrimeOrdering inc;
    inc.table(std::max<std::uint64_t>(k_max, 3));  // grow once; workers then only read
    const auto chunks = map_chunks_ordered<std::vector<std::uint64_t>>(
        1, k_max + 1, 65536, threads, [&](std::uint64_t b, std::uint64_t e) {
            std::vector<std::uint64_t> bad;
            for (std::uint64_t k = b; k < e; ++k)
                if (signed_divisor_sum(inc, k) != f_k(k)) bad.push_back(k);
            return bad;
        });
    FkRangeResult res;
    res.checked = k_max;
    for (const auto& c : chunks) res.failing.insert(res.failing.end(), c.begin(), c.end());
    res.pass = res.failing.empty();
    return res;
}

// |U_m| = 2^m - 1 and |Q_m| = 2^{m-1}, with full distinctness of U up to
// m = 16 and streaming counts (block sizes, ascending blocks) above.
inline VerifyResult verify_counts(std::uint64_t m_max, const PrimeOrdering& o = PrimeOrdering()) {
    if (m_max == 0 || m_max > 20) throw ResourceError("verify_counts: 1 <= m_max <= 20 required");
    VerifyResult res;
    BlockStream s(o, m_max);
    const std::uint64_t enumerate_to = std::min<std::uint64_t>(m_max, 16);
    for (std::uint64_t m = 1; m <= m_max; ++m) {
        const auto [first, last] = s.advance();
        const std::uint64_t block_size = last - first;
        if (block_size != (std::uint64_t{1} << (m - 1))) {
            res.pass = false;
            res.witness = "|Q_" + std::to_string(m) + "| = " + std::to_string(block_size);
            return res;
        }
        if (last != (std::uint64_t{1} << m) - 1) {
            res.pass = false;
            res.witness = "|U_" + std::to_string(m) + "| = " + std::to_string(last);
            return res;
        }
        for (std::size_t j = first + 1; j < last; ++j) {
            if (!(s.universe()[j - 1].q < s.universe()[j].q)) {
                res.pass = false;
                res.witness = "block " + std::to_string(m) + " not strictly ascending at offset " +
                              std::to_string(j - first);
                return res;
            }
        }
        if (m == enumerate_to) {
            std::vector<BigInt> qs;
            qs.reserve(s.universe().size());
            for (const QLite& t : s.universe()) qs.push_back(t.q);
            std::sort(qs.begin(), qs.end());
            if (std::adjacent_find(qs.begin(), qs.end()) != qs.end()) {
                res.pass = false;
                res.witness = "duplicate q within U_" + std::to_string(m);
                return res;
            }
        }
        res.checked = m;
    }
    return res;
}

// |θ_{2^m - 1}(z) - (∏_{i<=m}(1 - p_i^{-z}) - 1)| <= tol for every m <= m_max.
// Finite identity, so it holds for any ordering.
inline VerifyResult verify_theta_subsequence(const PrimeOrdering& o, std::uint64_t m_max,
                                             const SeriesPoint& z, double tol) {
    if (m_max == 0) throw DomainError("verify_theta_subsequence: m_max >= 1 required");
    require_domain(z, Domain::ThetaStrip, "verify_theta_subsequence");
    VerifyResult res;
    BlockStream s(o, m_max);
    ComplexSum theta;
    Complex prod{1.0, 0.0};
    for (std::uint64_t m = 1; m <= m_max; ++m) {
        const auto [first, last] = s.advance();
        for (std::size_t j = first; j < last; ++j) {
            const QLite& t = s.universe()[j];
            theta.add(static_cast<double>(t.sign) * unit_power(t.log_q, z));
        }
        prod *= (1.0 - unit_power(o.log_nth(m), z));
        const double err = std::abs(theta.value() - (prod - 1.0));
        if (err > res.max_error) res.max_error = err;
        if (err > tol && res.witness.empty()) {
            res.pass = false;
            res.witness = "m = " + std::to_string(m) + ": error " + std::to_string(err);
        }
        res.checked = m;
    }
    return res;
}

// Partial sums against the closed form. The allowance max(tol, 3·2^{-Lx})
// covers the geometric tail left after L terms; the closed form must also be
// bounded away from zero.
inline VerifyResult verify_pow2_closed_form(const SeriesPoint& z, std::uint64_t L, double tol) {
    require_domain(z, Domain::UnitStrip, "verify_pow2_closed_form");
    if (L == 0) throw DomainError("verify_pow2_closed_form: L >= 1 required");
    VerifyResult res;
    res.checked = L;
    const Complex closed = pow2_sum_closed_form(z);
    const Complex partial = pow2_partial_sum(L, z);
    res.max_error = std::abs(partial - closed);
    const double allowed = std::max(tol, 3.0 * std::exp2(-static_cast<double>(L) * z.x));
    if (!(std::abs(closed) > 0.0)) {
        res.pass = false;
        res.witness = "closed form vanished";
    } else if (res.max_error > allowed) {
        res.pass = false;
        res.witness = "error " + std::to_string(res.max_error) + " > allowed " + std::to_string(allowed);
    }
    return res;
}

}  // namespace sqf
