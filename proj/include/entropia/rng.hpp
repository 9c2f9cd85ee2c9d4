#pragma once

#include <cstdint>
#include <random>

namespace entropia {

/// Seeded stream with platform-independent conversion to doubles in [0, 1).
/// Parallel kernels give chunk k its own stream seeded with `seed + k`, so
/// results never depend on how chunks are assigned to threads.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : engine_(seed) {}

  double uniform() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }
  double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }
  /// Standard normal by Box-Muller (the libstdc++ distribution is not portable).
  double normal();
  std::uint64_t next() { return engine_(); }

 private:
  std::mt19937_64 engine_;
  bool has_spare_ = false;
  double spare_ = 0.0;
};

}  // namespace entropia
