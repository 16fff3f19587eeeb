#include "nlmc/parallel.hpp"

#include <algorithm>
#include <thread>
#include <vector>

namespace nlmc {

int resolve_threads(int requested) {
    if (requested > 0) return requested;
    unsigned hw = std::thread::hardware_concurrency();
    return hw == 0 ? 1 : static_cast<int>(hw);
}

void parallel_chunks(std::size_t n, int threads,
                     const std::function<void(int, std::size_t, std::size_t)>& fn) {
    if (n == 0) return;
    int workers = std::min<std::size_t>(resolve_threads(threads), n);
    if (workers <= 1) {
        fn(0, 0, n);
        return;
    }
    std::vector<std::thread> pool;
    pool.reserve(workers);
    std::size_t base = n / workers, rem = n % workers, begin = 0;
    for (int c = 0; c < workers; ++c) {
        std::size_t len = base + (static_cast<std::size_t>(c) < rem ? 1 : 0);
        pool.emplace_back(fn, c, begin, begin + len);
        begin += len;
    }
    for (auto& t : pool) t.join();
}

}  // namespace nlmc
