#pragma once

#include <cmath>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "sqf/parallel.hpp"
#include "sqf/primes.hpp"
#include "sqf/series.hpp"
#include "sqf/squarefree.hpp"
#include "sqf/summation.hpp"

namespace sqf {

inline constexpr std::uint64_t kDirectTermCap = 10'000'000;

// Φ(m, n) = (Σ_{q ∈ U_m} sgn q · q^{-z}) · (Σ_{h<=n} (-1)^{h-1} h^{-z}),
// with the first factor summed over the materialized U_m.
inline Complex Phi(const PrimeOrdering& o, std::uint64_t m, std::uint64_t n, const SeriesPoint& z) {
    if (m == 0 || n == 0) throw DomainError("Phi: m, n >= 1 required");
    require_domain(z, Domain::ThetaStrip, "Phi");
    if (m > kBlockStreamCap)
        throw ResourceError("Phi: m = " + std::to_string(m) + " exceeds materialization cap " +
                            std::to_string(kBlockStreamCap));
    const Complex um_sum = theta_partial(o, (std::uint64_t{1} << m) - 1, z).value;
    return um_sum * eta_partial(n, z).value;
}

enum class PsiRoute {
    EulerProduct,  // U_m factor as ∏(1 - p_i^{-z}) - 1; works for any m(K)
    UmSum,         // U_m factor summed termwise; needs 2^{m(K)} materialization
};

// Ψ(K) = Φ(m(K), K). The product form of the first factor is the identity
// verified by verify_theta_subsequence and stays computable when 2^{m(K)}
// is far beyond materialization.
inline Complex Psi(const PrimeOrdering& o, std::uint64_t K, const SeriesPoint& z,
                   PsiRoute route = PsiRoute::EulerProduct) {
    if (K == 0) throw DomainError("Psi: K >= 1 required");
    require_domain(z, Domain::ThetaStrip, "Psi");
    const std::uint64_t m = m_of_K(o, K);
    if (route == PsiRoute::UmSum) return Phi(o, m, K, z);
    const Complex factor = euler_product_partial(o, m, z) - 1.0;
    return factor * eta_partial(K, z).value;
}

// c(K, k): signed count of the squarefree odd divisors q of k with q ∈
// U_{m(K)} and q >= k/K; the threshold is evaluated as q·K >= k exactly.
inline int c_coeff_with_m(const PrimeOrdering& o, std::uint64_t m, std::uint64_t K, std::uint64_t k) {
    DivisorFilter f;
    f.within_m = m;
    f.min_q = Rational64{k, K};
    return signed_divisor_sum(o, k, f);
}

inline int c_coeff(const PrimeOrdering& o, std::uint64_t K, std::uint64_t k) {
    if (K == 0 || k == 0) throw DomainError("c_coeff: K, k >= 1 required");
    return c_coeff_with_m(o, m_of_K(o, K), K, k);
}

// K · p_1 ··· p_{m(K)} when it stays within the direct-route term cap
inline std::optional<std::uint64_t> direct_upper_limit(const PrimeOrdering& o, std::uint64_t K) {
    const std::uint64_t m = m_of_K(o, K);
    BigInt n = K;
    for (std::uint64_t i = 1; i <= m; ++i) {
        n *= o.nth(i);
        if (n > kDirectTermCap) return std::nullopt;
    }
    return n.convert_to<std::uint64_t>();
}

// Ω(K) by its definition: Σ_{k=K+1}^{K·p_1···p_m(K)} c(K,k) φ(k). Chunked
// compensated sums merged pairwise in order, so the result is independent of
// the worker count.
inline Complex omega_direct(const PrimeOrdering& o, std::uint64_t K, const SeriesPoint& z,
                            unsigned threads = 1) {
    if (K == 0) throw DomainError("Omega: K >= 1 required");
    require_domain(z, Domain::ThetaStrip, "Omega");
    const auto upper = direct_upper_limit(o, K);
    if (!upper)
        throw ResourceError("Omega direct route: K·p_1···p_m(K) exceeds the term cap " +
                            std::to_string(kDirectTermCap));
    const std::uint64_t m = m_of_K(o, K);
    o.table(std::max<std::uint64_t>(*upper, 3));  // grow once; workers then only read
    auto partials = map_chunks_ordered<Complex>(
        K + 1, *upper + 1, kReductionChunk, threads, [&](std::uint64_t b, std::uint64_t e) {
            ComplexSum s;
            for (std::uint64_t k = b; k < e; ++k) {
                const int c = c_coeff_with_m(o, m, K, k);
                if (c != 0) s.add(static_cast<double>(c) * phi(k, z));
            }
            return s.value();
        });
    return pairwise_merge(std::move(partials));
}

struct OmegaRow {
    std::uint64_t K = 0;
    std::uint64_t mK = 0;
    Complex psi{};
    Complex fk_phi_prefix{};  // Σ_{k<=K} f(k) φ(k)
    Complex omega{};          // psi - fk_phi_prefix, exactly as computed
    std::optional<Complex> omega_direct;
    std::optional<double> route_gap;
    std::string note;  // per-row diagnostics, empty when clean
};

enum class OmegaRoute { Product, Direct, Both };

inline OmegaRow omega_row(const PrimeOrdering& o, std::uint64_t K, const SeriesPoint& z,
                          OmegaRoute route = OmegaRoute::Product, unsigned threads = 1) {
    if (K == 0) throw DomainError("Omega: K >= 1 required");
    require_domain(z, Domain::ThetaStrip, "Omega");
    OmegaRow row;
    row.K = K;
    row.mK = m_of_K(o, K);
    row.psi = Psi(o, K, z);
    ComplexSum fk;
    for (std::uint64_t k = 1; k <= K; ++k)
        if (f_k(k) != 0) fk.add(-phi(k, z));
    row.fk_phi_prefix = fk.value();
    row.omega = row.psi - row.fk_phi_prefix;
    if (route != OmegaRoute::Product) {
        row.omega_direct = omega_direct(o, K, z, threads);
        row.route_gap = std::abs(row.omega - *row.omega_direct);
    }
    return row;
}

inline Complex Omega(const PrimeOrdering& o, std::uint64_t K, const SeriesPoint& z,
                     OmegaRoute route = OmegaRoute::Product, unsigned threads = 1) {
    if (route == OmegaRoute::Direct) return omega_direct(o, K, z, threads);
    return omega_row(o, K, z, route, threads).omega;
}

struct ProbeConfig {
    SeriesPoint z;
    PrimeOrdering ordering;
    std::uint64_t K_from = 1;
    std::uint64_t K_to = 1;
    OmegaRoute route = OmegaRoute::Product;
    unsigned threads = 1;
};

// One row per K. The eta partial, the f·φ prefix and the Euler product grow
// incrementally, in the same operation order a from-scratch evaluation uses,
// so rows match standalone computations. Direct-route failures are recorded
// per row and the scan continues.
inline std::vector<OmegaRow> omega_scan(const ProbeConfig& cfg) {
    if (cfg.K_from == 0 || cfg.K_to < cfg.K_from)
        throw DomainError("omega_scan: 1 <= K_from <= K_to required");
    if (cfg.route == OmegaRoute::Direct)
        throw DomainError("omega_scan: route must be product or both");
    require_domain(cfg.z, Domain::ThetaStrip, "omega_scan");
    const PrimeOrdering& o = cfg.ordering;
    const PrimeTable& table = o.table(std::max<std::uint64_t>(cfg.K_to, 3));

    std::vector<OmegaRow> rows;
    rows.reserve(cfg.K_to - cfg.K_from + 1);
    ComplexSum eta_acc, fk_acc;
    std::uint64_t m = 1;  // m(K) >= 1 even when no odd prime <= K
    Complex prod = 1.0 - unit_power(o.log_nth(1), cfg.z);
    for (std::uint64_t k = 1; k <= cfg.K_to; ++k) {
        eta_acc.add(phi(k, cfg.z));
        if (f_k(k) != 0) fk_acc.add(-phi(k, cfg.z));
        if (k >= 3 && (k & 1) && table.is_odd_prime(k)) {
            const std::uint64_t idx = o.index_of(k);
            while (m < idx) {
                ++m;
                prod *= (1.0 - unit_power(o.log_nth(m), cfg.z));
            }
        }
        if (k < cfg.K_from) continue;
        OmegaRow row;
        row.K = k;
        row.mK = m;
        row.psi = (prod - 1.0) * eta_acc.value();
        row.fk_phi_prefix = fk_acc.value();
        row.omega = row.psi - row.fk_phi_prefix;
        rows.push_back(row);
    }

    if (cfg.route == OmegaRoute::Both) {
        // pre-grow the sieve so parallel rows only read
        std::uint64_t need = 3;
        for (const OmegaRow& row : rows)
            if (const auto upper = direct_upper_limit(o, row.K)) need = std::max(need, *upper);
        o.table(need);
        map_chunks_ordered<int>(0, rows.size(), 1, cfg.threads, [&](std::uint64_t b, std::uint64_t) {
            OmegaRow& row = rows[b];
            try {
                row.omega_direct = omega_direct(o, row.K, cfg.z, 1);
                row.route_gap = std::abs(row.omega - *row.omega_direct);
            } catch (const ResourceError& e) {
                row.note = e.what();
            }
            return 0;
        });
    }
    return rows;
}

// Σ_{k<=K} φ(k) + Σ_{k<=K} f(k) φ(k) - Σ_{2^l<=K} φ(2^l); identically zero
// for every K since f(k) φ(k) cancels φ(k) off the powers of two.
inline Complex final_combination(std::uint64_t K, const SeriesPoint& z) {
    if (K == 0) throw DomainError("final_combination: K >= 1 required");
    ComplexSum all, fk, pw2;
    for (std::uint64_t k = 1; k <= K; ++k) {
        const Complex ph = phi(k, z);
        all.add(ph);
        if (f_k(k) != 0)
            fk.add(-ph);
        else
            pw2.add(ph);
    }
    return all.value() + fk.value() - pw2.value();
}

}  // namespace sqf
