#pragma once

#include <cmath>
#include <cstdint>
#include <vector>

#include "sqf/errors.hpp"
#include "sqf/primes.hpp"
#include "sqf/rearrange.hpp"

namespace sqf {

struct BucketFractions {
    std::uint64_t N = 0;
    std::uint64_t total = 0;
    std::uint64_t count_plus = 0, count_minus = 0, count_neutral = 0;
    double frac_plus = 0.0, frac_minus = 0.0, frac_neutral = 0.0;
};

// Fractions of the odd primes <= N per phase bucket.
inline BucketFractions bucket_fractions(std::uint64_t N, double y, double alpha, double K) {
    if (N < 3) throw DomainError("bucket_fractions: N >= 3 required");
    const PrimeTable t = PrimeTable::build(N);
    BucketFractions r;
    r.N = N;
    for (std::uint32_t p : t.primes()) {
        switch (classify_prime(p, y, alpha, K)) {
            case PhaseClass::Plus: ++r.count_plus; break;
            case PhaseClass::Minus: ++r.count_minus; break;
            case PhaseClass::Neutral: ++r.count_neutral; break;
        }
    }
    r.total = r.count_plus + r.count_minus + r.count_neutral;
    if (r.total > 0) {
        const auto tot = static_cast<double>(r.total);
        r.frac_plus = static_cast<double>(r.count_plus) / tot;
        r.frac_minus = static_cast<double>(r.count_minus) / tot;
        r.frac_neutral = static_cast<double>(r.count_neutral) / tot;
    }
    return r;
}

struct GrowthRow {
    std::uint64_t N = 0;
    std::uint64_t count[3] = {0, 0, 0};  // plus, minus, neutral
    double recip[3] = {0, 0, 0};         // Σ 1/p per bucket so far
    double recip_x[3] = {0, 0, 0};       // Σ p^{-x}
};

struct GrowthTable {
    double y = 0, alpha = 0, K = 0, x = 1;
    std::vector<GrowthRow> rows;        // one per checkpoint, ascending N
    double slope_vs_lnln[3] = {0, 0, 0};  // least-squares slope of Σ 1/p against ln ln N
};

// Checkpointed bucket reciprocal sums at decade boundaries up to N. The
// fitted slope is a calibration aid: with equidistributed phases the plus
// bucket should grow like its density times ln ln N.
inline GrowthTable reciprocal_sums(std::uint64_t N, double y, double alpha, double K, double x) {
    if (N < 3) throw DomainError("reciprocal_sums: N >= 3 required");
    if (!(x > 0.0 && x <= 1.0)) throw DomainError("reciprocal_sums: 0 < x <= 1 required");
    std::vector<std::uint64_t> checkpoints;
    for (std::uint64_t c = 1000; c < N; c *= 10) checkpoints.push_back(c);
    checkpoints.push_back(N);

    GrowthTable table;
    table.y = y;
    table.alpha = alpha;
    table.K = K;
    table.x = x;
    PhaseBuckets acc{y, alpha, K, x, {}, {}, {}};
    const PrimeTable primes = PrimeTable::build(N);
    std::size_t pi = 0;
    const auto& ps = primes.primes();
    for (std::uint64_t cp : checkpoints) {
        while (pi < ps.size() && ps[pi] <= cp) acc.add(ps[pi++]);
        GrowthRow row;
        row.N = cp;
        for (int c = 0; c < 3; ++c) {
            row.count[c] = acc.count[c];
            row.recip[c] = acc.recip[c].value();
            row.recip_x[c] = acc.recip_x[c].value();
        }
        table.rows.push_back(row);
    }

    if (table.rows.size() >= 2) {
        for (int c = 0; c < 3; ++c) {
            double sx = 0, sy = 0, sxx = 0, sxy = 0;
            for (const GrowthRow& row : table.rows) {
                const double lx = std::log(std::log(static_cast<double>(row.N)));
                sx += lx;
                sy += row.recip[c];
                sxx += lx * lx;
                sxy += lx * row.recip[c];
            }
            const double n = static_cast<double>(table.rows.size());
            const double denom = n * sxx - sx * sx;
            table.slope_vs_lnln[c] = denom != 0.0 ? (n * sxy - sx * sy) / denom : 0.0;
        }
    }
    return table;
}

}  // namespace sqf
