#include "affiq/accum.hpp"

#include <algorithm>
#include <atomic>
#include <cstdlib>
#include <thread>

namespace affiq {

double compensated_total(std::span<const double> values) {
    CompensatedSum acc;
    for (double v : values) acc.add(v);
    return acc.value();
}

double mean(std::span<const double> values) {
    if (values.empty()) return 0.0;
    return compensated_total(values) / static_cast<double>(values.size());
}

double sample_sd(std::span<const double> values) {
    const std::size_t n = values.size();
    if (n < 2) return 0.0;
    bool constant = true;
    for (double v : values)
        if (v != values.front()) {
            constant = false;
            break;
        }
    if (constant) return 0.0;  // zero-variance integrands report exactly 0
    const double m = mean(values);
    CompensatedSum acc;
    for (double v : values) acc.add((v - m) * (v - m));
    return std::sqrt(acc.value() / static_cast<double>(n - 1));
}

double standard_error(std::span<const double> values) {
    if (values.empty()) return 0.0;
    return sample_sd(values) / std::sqrt(static_cast<double>(values.size()));
}

double sample_cov(std::span<const double> a, std::span<const double> b) {
    const std::size_t n = std::min(a.size(), b.size());
    if (n < 2) return 0.0;
    const double ma = mean(a.subspan(0, n));
    const double mb = mean(b.subspan(0, n));
    CompensatedSum acc;
    for (std::size_t i = 0; i < n; ++i) acc.add((a[i] - ma) * (b[i] - mb));
    return acc.value() / static_cast<double>(n - 1);
}

int default_thread_count() {
    if (const char* env = std::getenv("AFFIQ_THREADS")) {
        const int v = std::atoi(env);
        if (v >= 1) return std::min(v, 64);
    }
    const unsigned hw = std::thread::hardware_concurrency();
    return static_cast<int>(std::clamp(hw, 1u, 16u));
}

namespace {

constexpr std::size_t kChunk = 2048;

template <class Work>
void run_chunked(std::size_t n, int threads, Work&& work) {
    if (threads < 1) threads = default_thread_count();
    const std::size_t n_chunks = (n + kChunk - 1) / kChunk;
    if (threads == 1 || n_chunks <= 1) {
        for (std::size_t c = 0; c < n_chunks; ++c) work(c);
        return;
    }
    std::atomic<std::size_t> next{0};
    auto worker = [&] {
        for (;;) {
            const std::size_t c = next.fetch_add(1);
            if (c >= n_chunks) return;
            work(c);
        }
    };
    std::vector<std::thread> pool;
    const int n_workers = static_cast<int>(std::min<std::size_t>(threads, n_chunks));
    pool.reserve(n_workers);
    for (int t = 0; t < n_workers; ++t) pool.emplace_back(worker);
    for (auto& th : pool) th.join();
}

}  // namespace

void fill_indexed_samples(std::vector<double>& out, std::size_t n, const RngStream& base,
                          const std::function<double(std::size_t, RngStream)>& fn, int threads) {
    out.resize(n);
    run_chunked(n, threads, [&](std::size_t c) {
        const std::size_t lo = c * kChunk;
        const std::size_t hi = std::min(n, lo + kChunk);
        for (std::size_t i = lo; i < hi; ++i) out[i] = fn(i, base.substream(i));
    });
}

void fill_indexed_sample_pairs(std::vector<double>& out_a, std::vector<double>& out_b,
                               std::size_t n, const RngStream& base,
                               const std::function<std::pair<double, double>(std::size_t, RngStream)>& fn,
                               int threads) {
    out_a.resize(n);
    out_b.resize(n);
    run_chunked(n, threads, [&](std::size_t c) {
        const std::size_t lo = c * kChunk;
        const std::size_t hi = std::min(n, lo + kChunk);
        for (std::size_t i = lo; i < hi; ++i) {
            auto [a, b] = fn(i, base.substream(i));
            out_a[i] = a;
            out_b[i] = b;
        }
    });
}

}  // namespace affiq
