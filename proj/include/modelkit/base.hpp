#pragma once

#include <cstdint>
#include <functional>
#include <string>
#include <string_view>

namespace modelkit {

// 64-bit FNV-1a over a canonical serialization; used as content hash for
// stale-reference checks in class/structure files and reports.
inline std::uint64_t fnv1a64(std::string_view s) {
    std::uint64_t h = 0xcbf29ce484222325ull;
    for (unsigned char c : s) {
        h ^= c;
        h *= 0x100000001b3ull;
    }
    return h;
}

std::string hex64(std::uint64_t v);

// Worker count: MODELKIT_THREADS if set (clamped to >= 1), otherwise
// hardware concurrency.
int thread_count();

// Runs fn(i) for i in [0, n). Callers write results into slots indexed by i,
// so merged output is deterministic regardless of scheduling.
void parallel_for(std::size_t n, const std::function<void(std::size_t)>& fn);

}  // namespace modelkit
