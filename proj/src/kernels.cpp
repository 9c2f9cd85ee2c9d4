#include "entropia/kernels.hpp"

#include <algorithm>
#include <cmath>
#include <exception>
#include <limits>

#include "entropia/convex_body.hpp"
#include "entropia/error.hpp"
#include "entropia/parallel.hpp"
#include "entropia/rng.hpp"

namespace entropia {

namespace {

std::uint64_t mc_chunk(const StarBody& body, double half_width, std::uint64_t seed, std::size_t count) {
  Rng rng(seed);
  Eigen::VectorXd x(body.dim());
  std::uint64_t hits = 0;
  for (std::size_t s = 0; s < count; ++s) {
    for (int c = 0; c < body.dim(); ++c) x[c] = rng.uniform(-half_width, half_width);
    if (body.contains(x)) ++hits;
  }
  return hits;
}

struct StratumSums {
  double sum = 0.0;
  double sum_sq = 0.0;
  std::size_t n = 0;
};

StratumSums weyl_chunk(int k, WeylRegion region, std::uint64_t seed, std::size_t count, double lo, double hi) {
  Rng rng(seed);
  StratumSums out;
  out.n = count;
  for (std::size_t s = 0; s < count; ++s) {
    double prod = 1.0;
    double sum = 0.0;
    double sum_sq = 0.0;
    for (int c = 0; c < k; ++c) {
      const double x = c == 0 ? rng.uniform(lo, hi) : rng.uniform();
      prod *= x;
      sum += x;
      sum_sq += x * x;
    }
    bool inside = true;
    if (region == WeylRegion::Ball) inside = sum_sq <= 1.0;
    if (region == WeylRegion::CrossPolytope) inside = sum <= 1.0;
    const double f = inside ? prod : 0.0;
    out.sum += f;
    out.sum_sq += f * f;
  }
  return out;
}

MeanEstimate combine_strata(const std::vector<StratumSums>& strata) {
  const double S = static_cast<double>(strata.size());
  MeanEstimate out;
  double var = 0.0;
  for (const auto& st : strata) {
    const double n = static_cast<double>(st.n);
    const double mean = st.sum / n;
    const double v = n > 1 ? std::max(0.0, (st.sum_sq - n * mean * mean) / (n - 1.0)) : 0.0;
    out.mean += mean / S;
    var += v / (n * S * S);
    out.samples += st.n;
  }
  out.std_error = std::sqrt(var);
  return out;
}

ChunkPlan plan_for(std::size_t samples) { return ChunkPlan{samples, kMcChunk}; }

}  // namespace

HitCount mc_volume_serial(const StarBody& body, double half_width, std::uint64_t seed, std::size_t samples) {
  const ChunkPlan plan = plan_for(samples);
  HitCount out{0, samples};
  for (std::size_t c = 0; c < plan.count(); ++c)
    out.hits += mc_chunk(body, half_width, seed + c, plan.end(c) - plan.begin(c));
  return out;
}

HitCount mc_volume_parallel(const StarBody& body, double half_width, std::uint64_t seed, std::size_t samples) {
  const ChunkPlan plan = plan_for(samples);
  const auto chunks = static_cast<std::int64_t>(plan.count());
  std::uint64_t hits = 0;
#pragma omp parallel for schedule(static) reduction(+ : hits) num_threads(thread_count())
  for (std::int64_t c = 0; c < chunks; ++c) {
    const auto cu = static_cast<std::size_t>(c);
    hits += mc_chunk(body, half_width, seed + cu, plan.end(cu) - plan.begin(cu));
  }
  return HitCount{hits, samples};
}

MeanEstimate weyl_mc_serial(int k, WeylRegion region, std::uint64_t seed, std::size_t samples) {
  if (k < 1) throw Error(ErrorKind::InvalidInput, "k must be positive");
  const ChunkPlan plan = plan_for(samples);
  const double S = static_cast<double>(plan.count());
  std::vector<StratumSums> strata(plan.count());
  for (std::size_t c = 0; c < plan.count(); ++c)
    strata[c] = weyl_chunk(k, region, seed + c, plan.end(c) - plan.begin(c), c / S, (c + 1) / S);
  return combine_strata(strata);
}

MeanEstimate weyl_mc_parallel(int k, WeylRegion region, std::uint64_t seed, std::size_t samples) {
  if (k < 1) throw Error(ErrorKind::InvalidInput, "k must be positive");
  const ChunkPlan plan = plan_for(samples);
  const double S = static_cast<double>(plan.count());
  std::vector<StratumSums> strata(plan.count());
  const auto chunks = static_cast<std::int64_t>(plan.count());
#pragma omp parallel for schedule(static) num_threads(thread_count())
  for (std::int64_t c = 0; c < chunks; ++c) {
    const auto cu = static_cast<std::size_t>(c);
    strata[cu] = weyl_chunk(k, region, seed + cu, plan.end(cu) - plan.begin(cu), cu / S, (cu + 1) / S);
  }
  return combine_strata(strata);
}

Adjacency conflict_scan_serial(const Adjacency& candidates, const PairDistance& distance, double delta) {
  Adjacency out(candidates.size());
  for (std::size_t i = 0; i < candidates.size(); ++i)
    for (std::size_t j : candidates[i])
      if (distance(i, j) <= delta) out[i].push_back(j);
  return out;
}

Adjacency conflict_scan_parallel(const Adjacency& candidates, const PairDistance& distance, double delta) {
  Adjacency out(candidates.size());
  const auto n = static_cast<std::int64_t>(candidates.size());
#pragma omp parallel for schedule(dynamic, 64) num_threads(thread_count())
  for (std::int64_t ii = 0; ii < n; ++ii) {
    const auto i = static_cast<std::size_t>(ii);
    for (std::size_t j : candidates[i])
      if (distance(i, j) <= delta) out[i].push_back(j);
  }
  return out;
}

std::vector<double> cocycle_max_serial(std::size_t states, std::size_t horizon, const CocycleLogNorm& per_state) {
  std::vector<double> best(horizon, -std::numeric_limits<double>::infinity());
  for (std::size_t s = 0; s < states; ++s) {
    const auto v = per_state(s);
    for (std::size_t n = 0; n < horizon; ++n) best[n] = std::max(best[n], v[n]);
  }
  return best;
}

std::vector<double> cocycle_max_parallel(std::size_t states, std::size_t horizon, const CocycleLogNorm& per_state) {
  std::vector<std::vector<double>> all(states);
  const auto n_states = static_cast<std::int64_t>(states);
  std::vector<std::exception_ptr> errors(states);
#pragma omp parallel for schedule(dynamic) num_threads(thread_count())
  for (std::int64_t s = 0; s < n_states; ++s) {
    const auto i = static_cast<std::size_t>(s);
    try {
      all[i] = per_state(i);
    } catch (...) {
      errors[i] = std::current_exception();
    }
  }
  for (const auto& e : errors)
    if (e) std::rethrow_exception(e);
  std::vector<double> best(horizon, -std::numeric_limits<double>::infinity());
  for (const auto& v : all)
    for (std::size_t n = 0; n < horizon; ++n) best[n] = std::max(best[n], v[n]);
  return best;
}

}  // namespace entropia
