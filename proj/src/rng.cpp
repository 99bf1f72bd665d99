#include "dcurve/rng.hpp"

#include <atomic>
#include <thread>

namespace dcurve {

namespace {
constexpr std::size_t kChunk = 4096;
}

std::vector<double> deterministic_fold(
    std::size_t trials, std::size_t width, unsigned threads,
    const std::function<void(std::size_t, std::span<double>)>& trial_fn) {
    const std::size_t chunks = (trials + kChunk - 1) / kChunk;
    std::vector<std::vector<double>> partials(chunks);

    auto run_chunk = [&](std::size_t c) {
        const std::size_t begin = c * kChunk;
        const std::size_t end = std::min(trials, begin + kChunk);
        std::vector<KahanSum> acc(width);
        std::vector<double> scratch(width);
        for (std::size_t i = begin; i < end; ++i) {
            std::fill(scratch.begin(), scratch.end(), 0.0);
            trial_fn(i, scratch);
            for (std::size_t k = 0; k < width; ++k) acc[k].add(scratch[k]);
        }
        std::vector<double> out(width);
        for (std::size_t k = 0; k < width; ++k) out[k] = acc[k].value();
        partials[c] = std::move(out);
    };

    if (threads == 0) threads = std::max(1u, std::thread::hardware_concurrency());
    if (threads <= 1 || chunks <= 1) {
        for (std::size_t c = 0; c < chunks; ++c) run_chunk(c);
    } else {
        std::atomic<std::size_t> next{0};
        std::vector<std::thread> pool;
        const unsigned n_workers = static_cast<unsigned>(
            std::min<std::size_t>(threads, chunks));
        pool.reserve(n_workers);
        for (unsigned w = 0; w < n_workers; ++w) {
            pool.emplace_back([&] {
                while (true) {
                    const std::size_t c = next.fetch_add(1);
                    if (c >= chunks) break;
                    run_chunk(c);
                }
            });
        }
        for (auto& th : pool) th.join();
    }

    std::vector<KahanSum> total(width);
    for (const auto& part : partials) {
        for (std::size_t k = 0; k < width; ++k) total[k].add(part[k]);
    }
    std::vector<double> out(width);
    for (std::size_t k = 0; k < width; ++k) out[k] = total[k].value();
    return out;
}

}  // namespace dcurve
