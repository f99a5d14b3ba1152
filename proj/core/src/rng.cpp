#include "ubq/rng.hpp"

#include <array>
#include <atomic>
#include <thread>

#include "ubq/parallel.hpp"

namespace ubq {

Engine make_engine(ExperimentSeed seed) {
    const std::array<std::uint32_t, 4> words = {
        static_cast<std::uint32_t>(seed.seed), static_cast<std::uint32_t>(seed.seed >> 32),
        static_cast<std::uint32_t>(seed.stream_id), static_cast<std::uint32_t>(seed.stream_id >> 32)};
    std::seed_seq seq(words.begin(), words.end());
    return Engine(seq);
}

namespace {
std::atomic<unsigned> g_worker_threads{0};
}

void set_worker_threads(unsigned n) noexcept { g_worker_threads.store(n); }

unsigned worker_threads() noexcept {
    const unsigned n = g_worker_threads.load();
    if (n != 0) return n;
    const unsigned hw = std::thread::hardware_concurrency();
    return hw == 0 ? 1 : hw;
}

}  // namespace ubq
