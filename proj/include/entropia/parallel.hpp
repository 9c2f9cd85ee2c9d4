#pragma once

#include <cstddef>
#include <span>
#include <vector>

namespace entropia {

/// Thread cap from ENTROPIA_THREADS (0 or unset = OpenMP default).
int thread_count();

/// Pairwise tree reduction in index order; the result depends only on the
/// sequence of partials, never on the thread count that produced them.
double tree_sum(std::span<const double> partials);

/// Fixed chunk boundaries for `n` items.
struct ChunkPlan {
  std::size_t n = 0;
  std::size_t chunk = 1;
  std::size_t count() const { return chunk == 0 ? 0 : (n + chunk - 1) / chunk; }
  std::size_t begin(std::size_t k) const { return k * chunk; }
  std::size_t end(std::size_t k) const { return (k + 1) * chunk < n ? (k + 1) * chunk : n; }
};

}  // namespace entropia
