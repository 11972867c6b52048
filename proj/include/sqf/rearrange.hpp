#pragma once

#include <cmath>
#include <cstdint>
#include <deque>
#include <functional>
#include <limits>
#include <string>
#include <vector>

#include "sqf/errors.hpp"
#include "sqf/primes.hpp"
#include "sqf/series.hpp"
#include "sqf/summation.hpp"

namespace sqf {

enum class PhaseClass { Plus, Minus, Neutral };

// Bucket of p by cos(y ln p + alpha) against the threshold K in (0,1).
inline PhaseClass classify_prime(std::uint64_t p, double y, double alpha, double K) {
    if (!(K > 0.0 && K < 1.0)) throw DomainError("classify_prime: K must lie in (0,1)");
    if (!(y > 0.0)) throw DomainError("classify_prime: y > 0 required");
    const double c = std::cos(y * std::log(static_cast<double>(p)) + alpha);
    if (c > K) return PhaseClass::Plus;
    if (c < -K) return PhaseClass::Minus;
    return PhaseClass::Neutral;
}

// Streaming tallies per bucket: counts plus the reciprocal sums the growth
// experiments need. Membership is reproducible from (p, y, alpha, K) alone.
struct PhaseBuckets {
    double y, alpha, K, x;
    std::uint64_t count[3] = {0, 0, 0};
    CompensatedSum recip[3];    // Σ 1/p
    CompensatedSum recip_x[3];  // Σ p^{-x}

    void add(std::uint64_t p) {
        const auto cls = static_cast<std::size_t>(classify_prime(p, y, alpha, K));
        ++count[cls];
        const double lp = std::log(static_cast<double>(p));
        recip[cls].add(std::exp(-lp));
        recip_x[cls].add(std::exp(-x * lp));
    }
    std::uint64_t total() const { return count[0] + count[1] + count[2]; }
};

struct GreedyParams {
    std::uint64_t window = 256;  // candidates scanned per step
};

struct RearrangementPlan {
    SeriesPoint z;
    Complex target{};
    std::vector<std::uint64_t> prefix;  // primes in consumption order
    SumTrace trace;                     // one checkpoint per step, n = 0..steps
    GreedyParams params;
};

// Greedy steering of Σ p^{-z} toward a target: each step scans the first W
// unused primes in increasing order and consumes the one whose term vector
// best aligns with (target - S), score normalized by term magnitude so only
// the angle matters. With no positively aligned candidate the smallest unused
// prime is consumed, which keeps the produced ordering a permutation.
inline RearrangementPlan greedy_rearrange(const SeriesPoint& z, Complex target, std::uint64_t steps,
                                          GreedyParams params = {}) {
    require_domain(z, Domain::SteerRegion, "greedy_rearrange");
    if (params.window == 0) throw DomainError("greedy_rearrange: window >= 1 required");
    PrimeOrdering pool;  // ascending odd primes
    RearrangementPlan plan{z, target, {}, {}, params};
    plan.prefix.reserve(steps);

    const std::uint64_t cap = steps + params.window + 1;
    std::vector<Complex> term(cap + 2);
    std::vector<double> mag(cap + 2);
    for (std::uint64_t i = 1; i <= cap; ++i) {
        term[i] = unit_power(pool.log_nth(i), z);
        mag[i] = std::abs(term[i]);
    }
    // doubly linked list over unused 1-based candidate indices; 0 is the head sentinel
    std::vector<std::uint64_t> nxt(cap + 2), prv(cap + 2);
    for (std::uint64_t i = 0; i < nxt.size(); ++i) {
        nxt[i] = i + 1;
        prv[i] = (i == 0) ? 0 : i - 1;
    }

    ComplexSum s;
    plan.trace.checkpoints.push_back({0, s.value(), 0.0});
    for (std::uint64_t step = 1; step <= steps; ++step) {
        const Complex d = target - s.value();
        std::uint64_t best = 0;
        double best_score = 0.0;
        std::uint64_t idx = nxt[0];
        for (std::uint64_t c = 0; c < params.window && idx <= cap; ++c, idx = nxt[idx]) {
            const double score =
                (term[idx].real() * d.real() + term[idx].imag() * d.imag()) / mag[idx];
            if (score > best_score) {  // ties keep the earlier (smaller) prime
                best_score = score;
                best = idx;
            }
        }
        if (best == 0) best = nxt[0];
        s.add(term[best]);
        plan.prefix.push_back(pool.nth(best));
        plan.trace.checkpoints.push_back({step, s.value(), mag[best]});
        nxt[prv[best]] = nxt[best];
        prv[nxt[best]] = prv[best];
    }
    plan.trace.value = s.value();
    plan.trace.carry = s.carry();
    return plan;
}

struct Crossing {
    std::uint64_t step;
    double value;
    double last_term_abs;
};

struct RealRearrangeResult {
    SumTrace trace;  // real partial sums in the real component, one checkpoint per step
    std::vector<Crossing> crossings;
    double positive_part_sum = 0.0;  // Σ a_i^+ over the scanned prefix
    double negative_part_sum = 0.0;  // Σ a_i^-
    std::uint64_t scanned = 0;
    double final_value = 0.0;
};

// Two-pile steering for a real series with terms -> 0 and divergent positive
// and negative parts: consume positive terms while at or below the target,
// negative terms while above. After every crossing the overshoot is bounded
// by the magnitude of the last consumed term.
inline RealRearrangeResult riemann_rearrange_real(const std::function<double(std::uint64_t)>& term,
                                                  double target, std::uint64_t steps,
                                                  std::uint64_t scan_budget = 2'000'000) {
    CompensatedSum s;
    RealRearrangeResult r;
    r.trace.checkpoints.push_back({0, {0.0, 0.0}, 0.0});
    std::deque<double> pos, neg;
    CompensatedSum pos_sum, neg_sum;

    const auto refill = [&](bool need_pos) -> double {
        while (true) {
            auto& q = need_pos ? pos : neg;
            if (!q.empty()) {
                const double v = q.front();
                q.pop_front();
                return v;
            }
            if (r.scanned >= scan_budget)
                throw HypothesisError(std::string("riemann_rearrange_real: ") +
                                      (need_pos ? "positive" : "negative") +
                                      " pile exhausted within the scan budget; the divergence "
                                      "hypothesis is violated at desk scale");
            const double a = term(++r.scanned);
            if (a >= 0.0) {
                pos_sum.add(a);
                pos.push_back(a);
            } else {
                neg_sum.add(-a);
                neg.push_back(a);
            }
        }
    };

    for (std::uint64_t step = 1; step <= steps; ++step) {
        const double before = s.value();
        const double a = refill(before <= target);
        s.add(a);
        const double after = s.value();
        r.trace.checkpoints.push_back({step, {after, 0.0}, std::abs(a)});
        if ((before - target) * (after - target) < 0.0 || after == target)
            r.crossings.push_back({step, after, std::abs(a)});
    }
    r.positive_part_sum = pos_sum.value();
    r.negative_part_sum = neg_sum.value();
    r.final_value = s.value();
    r.trace.value = {r.final_value, 0.0};
    return r;
}

struct MonitorReport {
    std::int64_t first_entry = -1;  // step of the first strict entry into the eps-ball
    std::uint64_t longest_residence = 0;
    std::uint64_t exits = 0;
    double min_distance = std::numeric_limits<double>::infinity();
    double trailing_min = std::numeric_limits<double>::infinity();
    std::uint64_t trailing_window = 0;
};

// Scans a recorded trace against |S - target| < eps. window = 0 picks the
// trailing tenth of the trace.
inline MonitorReport convergence_monitor(const SumTrace& trace, Complex target, double eps,
                                         std::uint64_t window = 0) {
    if (trace.checkpoints.empty()) throw DomainError("convergence_monitor: empty trace");
    if (!(eps > 0.0)) throw DomainError("convergence_monitor: eps > 0 required");
    MonitorReport rep;
    const std::size_t len = trace.checkpoints.size();
    const std::uint64_t w = window ? window : std::max<std::uint64_t>(1, len / 10);
    rep.trailing_window = w;
    bool inside = false;
    std::uint64_t run = 0;
    for (std::size_t j = 0; j < len; ++j) {
        const TracePoint& cp = trace.checkpoints[j];
        const double dist = std::abs(cp.value - target);
        rep.min_distance = std::min(rep.min_distance, dist);
        if (j + w >= len) rep.trailing_min = std::min(rep.trailing_min, dist);
        const bool in = dist < eps;
        if (in) {
            if (rep.first_entry < 0) rep.first_entry = static_cast<std::int64_t>(cp.n);
            run = inside ? run + 1 : 1;
            rep.longest_residence = std::max(rep.longest_residence, run);
        } else {
            if (inside) ++rep.exits;
            run = 0;
        }
        inside = in;
    }
    return rep;
}

inline MonitorReport convergence_monitor(const RearrangementPlan& plan, double eps,
                                         std::uint64_t window = 0) {
    return convergence_monitor(plan.trace, plan.target, eps, window);
}

}  // namespace sqf
