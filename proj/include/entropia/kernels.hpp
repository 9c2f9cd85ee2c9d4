#pragma once

// Data-parallel hot loops. Each kernel has a serial reference and an OpenMP
// version that must return bit-identical results: work is split into fixed
// chunks, chunk k draws from the stream seeded with seed + k, and partial
// results are combined in chunk order.

#include <Eigen/Dense>

#include <cstddef>
#include <cstdint>
#include <functional>
#include <vector>

namespace entropia {

class StarBody;

inline constexpr std::size_t kMcChunk = 1 << 14;

struct HitCount {
  std::uint64_t hits = 0;
  std::uint64_t samples = 0;
};

/// Uniform points in the cube [−half_width, half_width]^dim tested against the body.
HitCount mc_volume_serial(const StarBody& body, double half_width, std::uint64_t seed, std::size_t samples);
HitCount mc_volume_parallel(const StarBody& body, double half_width, std::uint64_t seed, std::size_t samples);

struct MeanEstimate {
  double mean = 0.0;
  double std_error = 0.0;
  std::size_t samples = 0;
};

/// Stratified Monte Carlo of ∫_{[0,1]^k} x₁⋯x_k·1[x ∈ region] dx with
/// `strata` equal slabs along the first coordinate.
enum class WeylRegion { Ball, CrossPolytope, Cube };
MeanEstimate weyl_mc_serial(int k, WeylRegion region, std::uint64_t seed, std::size_t samples);
MeanEstimate weyl_mc_parallel(int k, WeylRegion region, std::uint64_t seed, std::size_t samples);

/// For each candidate i, the entries j of candidates[i] with
/// distance(i, j) <= delta, in the given order. Used by the greedy
/// separated-set pass. The distance callback must be pure.
using PairDistance = std::function<double(std::size_t, std::size_t)>;
using Adjacency = std::vector<std::vector<std::size_t>>;
Adjacency conflict_scan_serial(const Adjacency& candidates, const PairDistance& distance, double delta);
Adjacency conflict_scan_parallel(const Adjacency& candidates, const PairDistance& distance, double delta);

/// Largest log operator norm over grid states of a Jacobian cocycle,
/// evaluated independently for every state.
using CocycleLogNorm = std::function<std::vector<double>(std::size_t)>;
std::vector<double> cocycle_max_serial(std::size_t states, std::size_t horizon, const CocycleLogNorm& per_state);
std::vector<double> cocycle_max_parallel(std::size_t states, std::size_t horizon, const CocycleLogNorm& per_state);

}  // namespace entropia
