#include "entropia/parallel.hpp"

#include <omp.h>

#include <cstdlib>
#include <string>

namespace entropia {

int thread_count() {
  if (const char* env = std::getenv("ENTROPIA_THREADS")) {
    const int requested = std::atoi(env);
    if (requested > 0) return requested;
  }
  return omp_get_max_threads();
}

double tree_sum(std::span<const double> partials) {
  if (partials.empty()) return 0.0;
  std::vector<double> level(partials.begin(), partials.end());
  while (level.size() > 1) {
    std::vector<double> next((level.size() + 1) / 2);
    for (std::size_t i = 0; i < next.size(); ++i) {
      next[i] = level[2 * i] + (2 * i + 1 < level.size() ? level[2 * i + 1] : 0.0);
    }
    level.swap(next);
  }
  return level.front();
}

}  // namespace entropia
