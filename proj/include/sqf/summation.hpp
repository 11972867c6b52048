#pragma once

#include <cmath>
#include <complex>
#include <cstddef>
#include <span>
#include <vector>

namespace sqf {

// Neumaier variant of compensated summation: the carry picks up the rounding
// error of every add, whichever operand dominates.
class CompensatedSum {
public:
    CompensatedSum() = default;
    explicit CompensatedSum(double init) : sum_(init) {}

    void add(double x) {
        const double t = sum_ + x;
        if (std::abs(sum_) >= std::abs(x))
            carry_ += (sum_ - t) + x;
        else
            carry_ += (x - t) + sum_;
        sum_ = t;
    }

    double value() const { return sum_ + carry_; }
    double carry() const { return carry_; }

private:
    double sum_ = 0.0;
    double carry_ = 0.0;
};

class ComplexSum {
public:
    void add(std::complex<double> x) {
        re_.add(x.real());
        im_.add(x.imag());
    }
    std::complex<double> value() const { return {re_.value(), im_.value()}; }
    std::complex<double> carry() const { return {re_.carry(), im_.carry()}; }

private:
    CompensatedSum re_, im_;
};

inline constexpr std::size_t kReductionChunk = 4096;

// Pairwise tree over partial results in index order. Fixed association, so
// the outcome does not depend on how the partials were produced.
inline std::complex<double> pairwise_merge(std::vector<std::complex<double>> partials) {
    if (partials.empty()) return {0.0, 0.0};
    while (partials.size() > 1) {
        std::vector<std::complex<double>> next;
        next.reserve((partials.size() + 1) / 2);
        for (std::size_t i = 0; i + 1 < partials.size(); i += 2)
            next.push_back(partials[i] + partials[i + 1]);
        if (partials.size() % 2) next.push_back(partials.back());
        partials = std::move(next);
    }
    return partials[0];
}

// Deterministic reduction: compensated sums over fixed-size chunks, then a
// pairwise tree over the chunk results.
inline std::complex<double> chunked_pairwise_sum(std::span<const std::complex<double>> xs,
                                                 std::size_t chunk = kReductionChunk) {
    std::vector<std::complex<double>> partials;
    partials.reserve(xs.size() / chunk + 1);
    for (std::size_t i = 0; i < xs.size(); i += chunk) {
        ComplexSum s;
        const std::size_t end = std::min(xs.size(), i + chunk);
        for (std::size_t j = i; j < end; ++j) s.add(xs[j]);
        partials.push_back(s.value());
    }
    return pairwise_merge(std::move(partials));
}

}  // namespace sqf
