#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <string_view>
#include <vector>

#include "socnet/graph.hpp"
#include "socnet/rng.hpp"

namespace socnet {

enum class SamplingStrategy { kUniformNode, kUniformEdge, kSnowball, kRandomWalk, kTopDegree };

std::string_view strategy_name(SamplingStrategy s);
SamplingStrategy parse_strategy(std::string_view name);
inline constexpr SamplingStrategy kAllStrategies[] = {
    SamplingStrategy::kUniformNode, SamplingStrategy::kUniformEdge, SamplingStrategy::kSnowball,
    SamplingStrategy::kRandomWalk, SamplingStrategy::kTopDegree};

/// Restart probability of the random-walk sampler.
inline constexpr double kWalkRestart = 0.15;

struct SampleResult {
  SamplingStrategy strategy = SamplingStrategy::kUniformNode;
  std::size_t budget = 0;
  std::vector<NodeId> nodes;  // ascending, size min(budget, n)
  std::uint64_t seed = 0;
};

/// Draws min(budget, n) distinct nodes.
///  uniform-node  without replacement
///  uniform-edge  endpoints of uniform edges (with replacement) in stored
///                order, the overshooting endpoint dropped; once every
///                non-isolated node is in, the rest is filled uniformly
///  snowball      BFS (out-edges when directed) from a uniform start,
///                restarting at a uniform unvisited node when a component runs out
///  random-walk   simple walk (out-edges when directed) from a uniform start,
///                restarting uniformly w.p. 0.15 and at sinks
///  top-degree    highest degree first, ties by id
/// Throws std::invalid_argument for budget < 1.
SampleResult sample(const AttributedGraph& g, SamplingStrategy strategy, std::size_t budget,
                    std::uint64_t seed);

/// Snowball from a fixed start node, in visit order.
std::vector<NodeId> snowball_from(const AttributedGraph& g, NodeId start, std::size_t budget,
                                  Rng& rng);

/// Seed of cell (strategy, budget, rep):
/// seed ^ splitmix64(splitmix64(splitmix64(strategy) ^ budget) ^ rep).
std::uint64_t cell_seed(std::uint64_t seed, SamplingStrategy strategy, std::size_t budget,
                        std::size_t rep);

struct BiasRecord {
  SamplingStrategy strategy = SamplingStrategy::kUniformNode;
  std::size_t budget = 0;
  std::size_t rep = 0;
  double minority_fraction = 0.0;
  double mean_degree = 0.0;
};

/// Aggregate over repetitions of one (strategy, budget) cell. Bias is sample
/// statistic minus population statistic; sd is the sample standard deviation
/// (0 for a single repetition).
struct BiasSummary {
  SamplingStrategy strategy = SamplingStrategy::kUniformNode;
  std::size_t budget = 0;
  std::size_t reps = 0;
  double minority_bias_mean = 0.0;
  double minority_bias_sd = 0.0;
  double minority_abs_bias_mean = 0.0;
  double degree_bias_mean = 0.0;
  double degree_bias_sd = 0.0;
};

struct BiasReport {
  double population_minority_fraction = 0.0;
  double population_mean_degree = 0.0;
  std::vector<BiasRecord> records;    // strategy-major, then budget, then rep
  std::vector<BiasSummary> summary;   // strategy-major, then budget
};

/// Full factorial over strategies x budgets x reps. Requires reps >= 1 and
/// 1 <= budget <= n.
BiasReport benchmark(const AttributedGraph& g, std::span<const SamplingStrategy> strategies,
                     std::span<const std::size_t> budgets, std::size_t reps, std::uint64_t seed,
                     unsigned threads = 0);

}  // namespace socnet
