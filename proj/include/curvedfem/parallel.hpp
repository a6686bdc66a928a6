#pragma once

#include <cstddef>
#include <functional>

namespace curvedfem {

/// Worker count: CURVEDFEM_THREADS when set to a positive integer, else the
/// hardware concurrency (at least 1).
int worker_count();

/// Splits [0, n) into contiguous chunks, one per worker, and calls
/// `body(begin, end, chunk)` for each. Chunk c always covers a lower index
/// range than chunk c + 1, so callers can merge per-chunk results in order.
void parallel_chunks(std::size_t n, int chunks,
                     const std::function<void(std::size_t, std::size_t, int)> &body);

} // namespace curvedfem
