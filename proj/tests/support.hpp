#pragma once

#include <algorithm>
#include <complex>
#include <cstdint>
#include <random>
#include <vector>

#include "sqf/series.hpp"

namespace support {

// Independent primality oracle: plain trial division, no sieve shared with
// the implementation under test.
inline bool is_odd_prime_trial(std::uint64_t n) {
    if (n < 3 || n % 2 == 0) return false;
    for (std::uint64_t d = 3; d * d <= n; d += 2)
        if (n % d == 0) return false;
    return true;
}

inline std::vector<std::uint64_t> trial_division_odd_primes(std::uint64_t limit) {
    std::vector<std::uint64_t> ps;
    for (std::uint64_t n = 3; n <= limit; n += 2)
        if (is_odd_prime_trial(n)) ps.push_back(n);
    return ps;
}

// Brute oracle for the signed divisor sum: walk every odd divisor of k, keep
// the squarefree ones, add (-1)^{number of prime factors}.
inline int brute_signed_divisor_sum(std::uint64_t k) {
    int sum = 0;
    for (std::uint64_t d = 3; d <= k; d += 2) {
        if (k % d != 0) continue;
        std::uint64_t r = d;
        int factors = 0;
        bool squarefree = true;
        for (std::uint64_t p = 3; p * p <= r; p += 2) {
            if (r % p != 0) continue;
            r /= p;
            ++factors;
            if (r % p == 0) {
                squarefree = false;
                break;
            }
        }
        if (!squarefree) continue;
        if (r > 1) ++factors;
        sum += (factors % 2) ? -1 : 1;
    }
    return sum;
}

// Deterministic "random" prefixes: distinct small odd primes, fixed seed.
inline std::vector<std::vector<std::uint64_t>> fixed_random_prefixes(std::size_t count, unsigned seed) {
    static const std::vector<std::uint64_t> pool = {
        3,  5,  7,  11, 13, 17, 19, 23, 29, 31, 37, 41, 43, 47, 53, 59, 61, 67, 71, 73,
        79, 83, 89, 97, 101, 103, 107, 109, 113, 127, 131, 137, 139, 149, 151, 157, 163, 167, 173, 179};
    std::mt19937 rng(seed);
    std::vector<std::vector<std::uint64_t>> out;
    out.reserve(count);
    for (std::size_t i = 0; i < count; ++i) {
        std::vector<std::uint64_t> shuffled = pool;
        std::shuffle(shuffled.begin(), shuffled.end(), rng);
        const std::size_t len = 1 + rng() % 8;
        out.emplace_back(shuffled.begin(), shuffled.begin() + static_cast<std::ptrdiff_t>(len));
    }
    return out;
}

inline std::vector<sqf::SeriesPoint> fixed_random_strip_points(std::size_t count, unsigned seed) {
    std::mt19937 rng(seed);
    std::uniform_real_distribution<double> ux(0.55, 0.95), uy(0.5, 30.0);
    std::vector<sqf::SeriesPoint> out;
    out.reserve(count);
    for (std::size_t i = 0; i < count; ++i) out.push_back({ux(rng), uy(rng), false});
    return out;
}

inline double cdist(std::complex<double> a, std::complex<double> b) { return std::abs(a - b); }

// b^{-z} through std::pow, as an independent route for small integer bases
inline std::complex<double> pow_oracle(double base, const sqf::SeriesPoint& z) {
    return std::pow(std::complex<double>(base, 0.0), std::complex<double>(-z.x, -z.y));
}

}  // namespace support
