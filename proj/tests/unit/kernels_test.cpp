#include <gtest/gtest.h>

#include <cmath>
#include <cstdlib>
#include <numbers>
#include <vector>

#include "entropia/convex_body.hpp"
#include "entropia/kernels.hpp"
#include "entropia/parallel.hpp"
#include "entropia/rng.hpp"

namespace entropia {
namespace {

// Runs `f` with ENTROPIA_THREADS set to `threads`, restoring the old value.
template <class F>
auto with_threads(int threads, F f) {
  const char* old = std::getenv("ENTROPIA_THREADS");
  const std::string saved = old ? old : "";
  setenv("ENTROPIA_THREADS", std::to_string(threads).c_str(), 1);
  auto result = f();
  if (old) {
    setenv("ENTROPIA_THREADS", saved.c_str(), 1);
  } else {
    unsetenv("ENTROPIA_THREADS");
  }
  return result;
}

TEST(Kernels, MonteCarloVolumeIsThreadIndependent) {
  const StarBody disk = StarBody::ball(2, 1.0, 2000);
  const HitCount serial = mc_volume_serial(disk, 1.0, 42, 200000);
  for (int threads : {1, 2, 4}) {
    const HitCount par = with_threads(threads, [&] { return mc_volume_parallel(disk, 1.0, 42, 200000); });
    EXPECT_EQ(par.hits, serial.hits);
    EXPECT_EQ(par.samples, serial.samples);
  }
  const double p = std::numbers::pi / 4.0;
  const double frac = static_cast<double>(serial.hits) / static_cast<double>(serial.samples);
  EXPECT_NEAR(frac, p, 4.0 * std::sqrt(p * (1 - p) / 200000.0));
}

TEST(Kernels, WeylMonteCarloIsThreadIndependent) {
  const MeanEstimate serial = weyl_mc_serial(4, WeylRegion::CrossPolytope, 9, 100000);
  for (int threads : {1, 3}) {
    const MeanEstimate par =
        with_threads(threads, [&] { return weyl_mc_parallel(4, WeylRegion::CrossPolytope, 9, 100000); });
    EXPECT_EQ(par.mean, serial.mean);
    EXPECT_EQ(par.std_error, serial.std_error);
  }
}

TEST(Kernels, ConflictScanMatchesSerial) {
  Rng rng(5);
  std::vector<double> pts(3000);
  for (auto& x : pts) x = rng.uniform();
  Adjacency cand(pts.size());
  for (std::size_t i = 0; i < pts.size(); ++i)
    for (std::size_t j = 0; j < i; j += 7) cand[i].push_back(j);
  const PairDistance dist = [&](std::size_t i, std::size_t j) { return std::abs(pts[i] - pts[j]); };
  const Adjacency a = conflict_scan_serial(cand, dist, 0.01);
  const Adjacency b = with_threads(4, [&] { return conflict_scan_parallel(cand, dist, 0.01); });
  EXPECT_EQ(a, b);
  std::size_t total = 0;
  for (const auto& row : a) total += row.size();
  EXPECT_GT(total, 0u);
}

TEST(Kernels, CocycleMaxMatchesSerial) {
  const CocycleLogNorm f = [](std::size_t s) {
    std::vector<double> v(50);
    for (std::size_t n = 0; n < v.size(); ++n) v[n] = std::sin(0.1 * static_cast<double>(s * n)) + 0.01 * n;
    return v;
  };
  EXPECT_EQ(cocycle_max_serial(64, 50, f), with_threads(4, [&] { return cocycle_max_parallel(64, 50, f); }));
}

TEST(Parallel, TreeSumIsExactForIntegersAndOrderFixed) {
  std::vector<double> v(1001);
  for (std::size_t i = 0; i < v.size(); ++i) v[i] = static_cast<double>(i);
  EXPECT_EQ(tree_sum(v), 500500.0);
  EXPECT_EQ(tree_sum({}), 0.0);
}

TEST(Parallel, ThreadCountHonoursEnvironment) {
  EXPECT_EQ(with_threads(3, [] { return thread_count(); }), 3);
}

TEST(RngTest, StreamsAreReproducible) {
  Rng a(17), b(17);
  for (int i = 0; i < 100; ++i) EXPECT_EQ(a.uniform(), b.uniform());
  Rng c(1);
  double sum = 0.0, sq = 0.0;
  for (int i = 0; i < 100000; ++i) {
    const double z = c.normal();
    sum += z;
    sq += z * z;
  }
  EXPECT_NEAR(sum / 1e5, 0.0, 0.02);
  EXPECT_NEAR(sq / 1e5, 1.0, 0.02);
}

}  // namespace
}  // namespace entropia
