// SPDX-License-Identifier: Apache-2.0
#pragma once

#include "errors.hpp"

#include <algorithm>
#include <cstdint>
#include <exception>
#include <cstdlib>
#include <string>
#include <thread>
#include <vector>

namespace nc {

/// Worker count from NEWTON_CIRCLE_THREADS (positive integer, default 1).
inline unsigned worker_count() {
    char const* env = std::getenv("NEWTON_CIRCLE_THREADS");
    if (env == nullptr || *env == '\0') return 1;
    char* end = nullptr;
    long const v = std::strtol(env, &end, 10);
    if (*end != '\0' || v < 1) throw ConfigurationError("NEWTON_CIRCLE_THREADS must be a positive integer");
    return static_cast<unsigned>(v);
}

/// Half-open block [begin, end) of a partitioned index range.
struct Block {
    std::int64_t begin;
    std::int64_t end;
};

/// Splits [begin, end) into at most `parts` contiguous nonempty blocks, in order.
inline std::vector<Block> partition_range(std::int64_t begin, std::int64_t end, unsigned parts) {
    std::vector<Block> blocks;
    std::int64_t const n = end > begin ? end - begin : 0;
    if (n == 0) return blocks;
    std::int64_t const k = std::min<std::int64_t>(parts == 0 ? 1 : parts, n);
    for (std::int64_t i = 0; i < k; ++i) blocks.push_back({begin + n * i / k, begin + n * (i + 1) / k});
    return blocks;
}

/// Runs body(i) for i in [0, count) on up to worker_count() threads.
/// Block i is always handled by a single call, so results that are combined
/// per block do not depend on the thread count.
template <typename Body>
void run_blocks(std::size_t count, Body&& body) {
    std::size_t const threads = std::min<std::size_t>(worker_count(), count);
    if (threads <= 1) {
        for (std::size_t i = 0; i < count; ++i) body(i);
        return;
    }
    std::vector<std::thread> workers;
    workers.reserve(threads);
    std::vector<std::exception_ptr> errors(threads);
    for (std::size_t w = 0; w < threads; ++w) {
        workers.emplace_back([&, w] {
            try {
                for (std::size_t i = w; i < count; i += threads) body(i);
            } catch (...) {
                errors[w] = std::current_exception();
            }
        });
    }
    for (auto& t : workers) t.join();
    for (auto& e : errors)
        if (e) std::rethrow_exception(e);
}

/// Combines partial results pairwise in a fixed tree order.
template <typename T, typename Merge>
T tree_reduce(std::vector<T> parts, Merge&& merge) {
    if (parts.empty()) return T{};
    while (parts.size() > 1) {
        std::vector<T> next;
        for (std::size_t i = 0; i + 1 < parts.size(); i += 2) {
            T a = parts[i];
            merge(a, parts[i + 1]);
            next.push_back(std::move(a));
        }
        if (parts.size() % 2 == 1) next.push_back(parts.back());
        parts = std::move(next);
    }
    return parts.front();
}

} // namespace nc
