#include <carnot/parallel.hpp>

#include <algorithm>

namespace carnot {

namespace {
std::atomic<int> g_thread_cap{0}; // 0 = hardware default
}

void set_thread_cap(int cap) { g_thread_cap.store(cap); }

int effective_thread_count()
{
    const int cap = g_thread_cap.load();
    int hw = static_cast<int>(std::thread::hardware_concurrency());
    if (hw <= 0) hw = 1;
    if (cap > 0) return std::min(cap, hw);
    return hw;
}

double parallel_reduce(std::size_t n, std::size_t chunk_size,
                       const std::function<double(std::size_t, std::size_t)>& chunk_sum)
{
    if (n == 0) return 0.0;
    if (chunk_size == 0) chunk_size = 1;
    const std::size_t chunks = (n + chunk_size - 1) / chunk_size;
    std::vector<double> partial(chunks, 0.0);

    const int workers = std::min<std::size_t>(effective_thread_count(), chunks);
    if (workers <= 1) {
        for (std::size_t c = 0; c < chunks; ++c) {
            const std::size_t b = c * chunk_size;
            partial[c] = chunk_sum(b, std::min(n, b + chunk_size));
        }
    } else {
        std::atomic<std::size_t> next{0};
        auto worker = [&] {
            while (true) {
                const std::size_t c = next.fetch_add(1);
                if (c >= chunks) return;
                const std::size_t b = c * chunk_size;
                partial[c] = chunk_sum(b, std::min(n, b + chunk_size));
            }
        };
        std::vector<std::thread> pool;
        pool.reserve(workers);
        for (int t = 0; t < workers; ++t) pool.emplace_back(worker);
        for (auto& t : pool) t.join();
    }

    CompensatedSum acc;
    for (double p : partial) acc.add(p);
    return acc.value();
}

} // namespace carnot
