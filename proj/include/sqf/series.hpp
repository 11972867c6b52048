#pragma once

#include <cmath>
#include <complex>
#include <cstdint>
#include <numbers>
#include <span>
#include <string>
#include <vector>

#include "sqf/errors.hpp"
#include "sqf/primes.hpp"
#include "sqf/squarefree.hpp"
#include "sqf/summation.hpp"

namespace sqf {

using Complex = std::complex<double>;

// Each series has its own admissible parameter region; evaluation outside it
// is rejected unless the point carries an explicit override.
enum class Domain {
    ThetaStrip,    // 1/2 < x < 1, y > 0
    RhoLine,       // 0 < x <= 1
    EtaHalfPlane,  // x > 0
    UnitStrip,     // 0 < x < 1
    SteerRegion,   // 0 < x <= 1, y > 0
};

struct SeriesPoint {
    double x = 0.0;
    double y = 0.0;
    bool domain_override = false;
};

inline bool in_domain(const SeriesPoint& z, Domain d) {
    switch (d) {
        case Domain::ThetaStrip: return z.x > 0.5 && z.x < 1.0 && z.y > 0.0;
        case Domain::RhoLine: return z.x > 0.0 && z.x <= 1.0;
        case Domain::EtaHalfPlane: return z.x > 0.0;
        case Domain::UnitStrip: return z.x > 0.0 && z.x < 1.0;
        case Domain::SteerRegion: return z.x > 0.0 && z.x <= 1.0 && z.y > 0.0;
    }
    return false;
}

inline const char* domain_name(Domain d) {
    switch (d) {
        case Domain::ThetaStrip: return "1/2 < x < 1, y > 0";
        case Domain::RhoLine: return "0 < x <= 1";
        case Domain::EtaHalfPlane: return "x > 0";
        case Domain::UnitStrip: return "0 < x < 1";
        case Domain::SteerRegion: return "0 < x <= 1, y > 0";
    }
    return "?";
}

inline void require_domain(const SeriesPoint& z, Domain d, const char* where) {
    if (z.domain_override || in_domain(z, d)) return;
    throw DomainError(std::string(where) + ": z = " + std::to_string(z.x) + " + " + std::to_string(z.y) +
                      "i outside its domain (" + domain_name(d) + "); use the domain override to explore");
}

// b^{-z} for b = e^{log_b}: e^{-x log_b} (cos(y log_b) - i sin(y log_b))
inline Complex unit_power(double log_b, const SeriesPoint& z) {
    const double mag = std::exp(-z.x * log_b);
    const double ang = z.y * log_b;
    return {mag * std::cos(ang), -mag * std::sin(ang)};
}

// (-1)^{k-1} k^{-z}, with (-1)^0 = 1
inline Complex phi(std::uint64_t k, const SeriesPoint& z) {
    if (k == 0) throw DomainError("phi: k >= 1 required");
    const Complex v = unit_power(std::log(static_cast<double>(k)), z);
    return (k % 2 == 0) ? -v : v;
}

struct TracePoint {
    std::uint64_t n;
    Complex value;
    double last_term_abs;
};

// Compensated running sum with recorded checkpoints (powers of two and the
// final index unless noted otherwise).
struct SumTrace {
    Complex value;
    Complex carry;
    std::vector<TracePoint> checkpoints;
};

inline SumTrace theta_partial(const PrimeOrdering& o, std::uint64_t n, const SeriesPoint& z) {
    if (n == 0) throw DomainError("theta_partial: n >= 1 required");
    require_domain(z, Domain::ThetaStrip, "theta_partial");
    BlockStream stream(o);
    stream.advance_until_size(n);
    ComplexSum s;
    SumTrace tr;
    for (std::uint64_t i = 1; i <= n; ++i) {
        const QLite& t = stream.universe()[i - 1];
        const Complex term = static_cast<double>(t.sign) * unit_power(t.log_q, z);
        s.add(term);
        if ((i & (i - 1)) == 0 || i == n) tr.checkpoints.push_back({i, s.value(), std::abs(term)});
    }
    tr.value = s.value();
    tr.carry = s.carry();
    return tr;
}

// ∏_{i<=m} (1 - p_i^{-z}), sequential in ordering index
inline Complex euler_product_partial(const PrimeOrdering& o, std::uint64_t m, const SeriesPoint& z) {
    if (m == 0) throw DomainError("euler_product_partial: m >= 1 required");
    Complex prod{1.0, 0.0};
    for (std::uint64_t i = 1; i <= m; ++i) prod *= (1.0 - unit_power(o.log_nth(i), z));
    return prod;
}

// 2^{-z} + Σ_{i<=n} p_i^{-z}; n = 0 gives the bare 2-term
inline SumTrace rho_partial(const PrimeOrdering& o, std::uint64_t n, const SeriesPoint& z) {
    require_domain(z, Domain::RhoLine, "rho_partial");
    ComplexSum s;
    SumTrace tr;
    const Complex two_term = unit_power(std::numbers::ln2, z);
    s.add(two_term);
    tr.checkpoints.push_back({0, s.value(), std::abs(two_term)});
    for (std::uint64_t i = 1; i <= n; ++i) {
        const Complex term = unit_power(o.log_nth(i), z);
        s.add(term);
        if ((i & (i - 1)) == 0 || i == n) tr.checkpoints.push_back({i, s.value(), std::abs(term)});
    }
    tr.value = s.value();
    tr.carry = s.carry();
    return tr;
}

// Σ_{k<=K} (-1)^{k-1} k^{-z}
inline SumTrace eta_partial(std::uint64_t K, const SeriesPoint& z) {
    if (K == 0) throw DomainError("eta_partial: K >= 1 required");
    require_domain(z, Domain::EtaHalfPlane, "eta_partial");
    ComplexSum s;
    SumTrace tr;
    for (std::uint64_t k = 1; k <= K; ++k) {
        const Complex term = phi(k, z);
        s.add(term);
        if ((k & (k - 1)) == 0 || k == K) tr.checkpoints.push_back({k, s.value(), std::abs(term)});
    }
    tr.value = s.value();
    tr.carry = s.carry();
    return tr;
}

// midpoint of the K-th and (K+1)-th partial sums; for an alternating series
// this cancels the leading tail term
inline Complex eta_midpoint_estimate(std::uint64_t K, const SeriesPoint& z) {
    const SumTrace t = eta_partial(K, z);
    return t.value + 0.5 * phi(K + 1, z);
}

// Σ_{l>=0} φ(2^l) = (2^x - 2 e^{-iy ln 2}) / (2^x - e^{-iy ln 2})
inline Complex pow2_sum_closed_form(const SeriesPoint& z) {
    require_domain(z, Domain::UnitStrip, "pow2_sum_closed_form");
    const double tx = std::exp2(z.x);
    const Complex e{std::cos(z.y * std::numbers::ln2), -std::sin(z.y * std::numbers::ln2)};
    const Complex den = tx - e;
    if (std::abs(den) < 1e-300) throw DomainError("pow2_sum_closed_form: denominator vanishes");
    return (tx - 2.0 * e) / den;
}

// Σ_{l<L} φ(2^l), evaluated termwise so L may exceed 64
inline Complex pow2_partial_sum(std::uint64_t L, const SeriesPoint& z) {
    if (L == 0) throw DomainError("pow2_partial_sum: L >= 1 required");
    ComplexSum s;
    for (std::uint64_t l = 0; l < L; ++l) {
        const Complex v = unit_power(static_cast<double>(l) * std::numbers::ln2, z);
        s.add(l == 0 ? v : -v);
    }
    return s.value();
}

struct CoriolisCheckpoint {
    std::uint64_t n;
    Complex sum;
    double sum_sq;
    Complex product;
};

struct CoriolisReport {
    Complex sum;
    double sum_sq = 0.0;
    Complex product{1.0, 0.0};
    std::vector<CoriolisCheckpoint> checkpoints;
    std::vector<std::uint64_t> degenerate;  // 1-based i with |1 + z_i| < 1e-15
};

// Convergence diagnostic for ∏(1 + z_i): tracks Σ z_i, Σ |z_i|^2 and the
// partial product side by side. Dense checkpoints for short sequences.
inline CoriolisReport coriolis_diagnostic(std::span<const Complex> terms) {
    if (terms.empty()) throw DomainError("coriolis_diagnostic: nonempty sequence required");
    ComplexSum s;
    CompensatedSum sq;
    Complex prod{1.0, 0.0};
    CoriolisReport r;
    const bool dense = terms.size() <= 4096;
    for (std::size_t j = 0; j < terms.size(); ++j) {
        const std::uint64_t i = j + 1;
        const Complex zi = terms[j];
        s.add(zi);
        sq.add(std::norm(zi));
        const Complex factor = 1.0 + zi;
        if (std::abs(factor) < 1e-15) r.degenerate.push_back(i);
        prod *= factor;
        if (dense || (i & (i - 1)) == 0 || i == terms.size())
            r.checkpoints.push_back({i, s.value(), sq.value(), prod});
    }
    r.sum = s.value();
    r.sum_sq = sq.value();
    r.product = prod;
    return r;
}

}  // namespace sqf
