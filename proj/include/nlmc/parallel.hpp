#pragma once

#include <cstddef>
#include <functional>

namespace nlmc {

// 0 means "all cores".
int resolve_threads(int requested);

// Splits [0, n) into one contiguous chunk per worker and runs
// fn(chunk_index, begin, end) concurrently. Callers combine chunk results in
// chunk order, so outcomes do not depend on scheduling or thread count.
void parallel_chunks(std::size_t n, int threads,
                     const std::function<void(int chunk, std::size_t begin, std::size_t end)>& fn);

}  // namespace nlmc
