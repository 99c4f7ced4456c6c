#ifndef PGQ_PARALLEL_HPP
#define PGQ_PARALLEL_HPP

#include <cstddef>
#include <functional>

namespace pgq {

/// Worker count resolution: explicit request, else PGQ_WORKERS, else
/// hardware concurrency; always at least 1.
unsigned resolve_workers(unsigned requested);

/// Run chunk_fn(0..chunk_count-1) on a pool of `workers` threads.
/// Chunks own disjoint output slots, so merging in chunk order keeps
/// every report deterministic regardless of scheduling.
void run_chunks(std::size_t chunk_count, unsigned workers,
                const std::function<void(std::size_t)>& chunk_fn);

} // namespace pgq

#endif
