#pragma once

#include <algorithm>
#include <atomic>
#include <cstdint>
#include <future>
#include <vector>

namespace sqf {

// Maps fn over [begin, end) in fixed chunks and returns the per-chunk results
// in chunk order. With threads > 1 the chunks are claimed by a small worker
// pool; results land in their slot, so the output is independent of the
// worker count. fn must not mutate shared state.
template <typename T, typename Fn>
std::vector<T> map_chunks_ordered(std::uint64_t begin, std::uint64_t end, std::uint64_t chunk,
                                  unsigned threads, Fn fn) {
    std::vector<T> out;
    if (begin >= end || chunk == 0) return out;
    const std::uint64_t n_chunks = (end - begin + chunk - 1) / chunk;
    out.resize(n_chunks);
    if (threads <= 1 || n_chunks == 1) {
        for (std::uint64_t c = 0; c < n_chunks; ++c) {
            const std::uint64_t b = begin + c * chunk;
            out[c] = fn(b, std::min(end, b + chunk));
        }
        return out;
    }
    std::atomic<std::uint64_t> cursor{0};
    const unsigned workers = static_cast<unsigned>(std::min<std::uint64_t>(threads, n_chunks));
    std::vector<std::future<void>> pending;
    pending.reserve(workers);
    for (unsigned w = 0; w < workers; ++w)
        pending.push_back(std::async(std::launch::async, [&] {
            for (std::uint64_t c = cursor.fetch_add(1); c < n_chunks; c = cursor.fetch_add(1)) {
                const std::uint64_t b = begin + c * chunk;
                out[c] = fn(b, std::min(end, b + chunk));
            }
        }));
    for (auto& f : pending) f.get();
    return out;
}

}  // namespace sqf
