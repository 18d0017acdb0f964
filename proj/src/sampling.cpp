#include "socnet/sampling.hpp"

#include <algorithm>
#include <cmath>
#include <deque>
#include <stdexcept>
#include <string>

#include "socnet/parallel.hpp"
#include "socnet/ranking.hpp"

namespace socnet {

namespace {

class Collector {
 public:
  Collector(std::size_t n, std::size_t budget) : seen_(n, 0), budget_(budget) {}
  bool full() const { return nodes_.size() >= budget_; }
  bool contains(NodeId v) const { return seen_[v] != 0; }
  void add(NodeId v) {
    if (!full() && !seen_[v]) {
      seen_[v] = 1;
      nodes_.push_back(v);
    }
  }
  std::vector<NodeId>& nodes() { return nodes_; }

 private:
  std::vector<char> seen_;
  std::vector<NodeId> nodes_;
  std::size_t budget_;
};

NodeId uniform_unseen(const Collector& c, std::size_t n, std::size_t unseen, Rng& rng) {
  auto idx = rng.below(unseen);
  for (NodeId v = 0; v < n; ++v) {
    if (!c.contains(v)) {
      if (idx == 0) return v;
      --idx;
    }
  }
  return 0;
}

std::vector<NodeId> uniform_nodes(std::size_t n, std::size_t budget, Rng& rng) {
  std::vector<NodeId> all(n);
  for (NodeId v = 0; v < n; ++v) all[v] = v;
  for (std::size_t i = 0; i < budget; ++i) std::swap(all[i], all[i + rng.below(n - i)]);
  all.resize(budget);
  return all;
}

std::vector<NodeId> uniform_edges(const AttributedGraph& g, std::size_t budget, Rng& rng) {
  const std::size_t n = g.num_nodes();
  Collector c(n, budget);
  std::size_t covered_max = 0;
  for (NodeId v = 0; v < n; ++v) covered_max += g.degree(v) > 0;
  const auto& edges = g.edges();
  while (!edges.empty() && !c.full() && c.nodes().size() < covered_max) {
    const Edge& e = edges[rng.below(edges.size())];
    c.add(e.source);
    c.add(e.target);
  }
  while (!c.full()) c.add(uniform_unseen(c, n, n - c.nodes().size(), rng));
  return std::move(c.nodes());
}

std::vector<NodeId> random_walk(const AttributedGraph& g, std::size_t budget, Rng& rng) {
  const std::size_t n = g.num_nodes();
  Collector c(n, budget);
  auto current = static_cast<NodeId>(rng.below(n));
  c.add(current);
  while (!c.full()) {
    const auto nbrs = g.out_neighbors(current);
    if (nbrs.empty() || rng.uniform() < kWalkRestart) {
      current = static_cast<NodeId>(rng.below(n));
    } else {
      current = nbrs[rng.below(nbrs.size())];
    }
    c.add(current);
  }
  return std::move(c.nodes());
}

std::vector<NodeId> snowball(const AttributedGraph& g, NodeId start, std::size_t budget,
                             Rng& rng) {
  const std::size_t n = g.num_nodes();
  Collector c(n, budget);
  std::deque<NodeId> queue;
  c.add(start);
  queue.push_back(start);
  while (!c.full()) {
    if (queue.empty()) {
      const NodeId restart = uniform_unseen(c, n, n - c.nodes().size(), rng);
      c.add(restart);
      queue.push_back(restart);
      continue;
    }
    const NodeId v = queue.front();
    queue.pop_front();
    for (NodeId u : g.out_neighbors(v)) {
      if (c.full()) break;
      if (!c.contains(u)) {
        c.add(u);
        queue.push_back(u);
      }
    }
  }
  return std::move(c.nodes());
}

double mean_of(const std::vector<double>& xs) {
  double s = 0.0;
  for (double x : xs) s += x;
  return s / static_cast<double>(xs.size());
}

double sd_of(const std::vector<double>& xs, double mean) {
  if (xs.size() < 2) return 0.0;
  double s = 0.0;
  for (double x : xs) s += (x - mean) * (x - mean);
  return std::sqrt(s / static_cast<double>(xs.size() - 1));
}

}  // namespace

std::string_view strategy_name(SamplingStrategy s) {
  switch (s) {
    case SamplingStrategy::kUniformNode: return "uniform-node";
    case SamplingStrategy::kUniformEdge: return "uniform-edge";
    case SamplingStrategy::kSnowball: return "snowball";
    case SamplingStrategy::kRandomWalk: return "random-walk";
    case SamplingStrategy::kTopDegree: return "top-degree";
  }
  return "unknown";
}

SamplingStrategy parse_strategy(std::string_view name) {
  for (SamplingStrategy s : kAllStrategies) {
    if (name == strategy_name(s)) return s;
  }
  throw std::invalid_argument("unknown sampling strategy '" + std::string(name) + "'");
}

std::vector<NodeId> snowball_from(const AttributedGraph& g, NodeId start, std::size_t budget,
                                  Rng& rng) {
  if (budget < 1) throw std::invalid_argument("sampling budget must be at least 1");
  if (start >= g.num_nodes()) throw std::invalid_argument("snowball start out of range");
  return snowball(g, start, std::min(budget, g.num_nodes()), rng);
}

SampleResult sample(const AttributedGraph& g, SamplingStrategy strategy, std::size_t budget,
                    std::uint64_t seed) {
  if (budget < 1) throw std::invalid_argument("sampling budget must be at least 1");
  const std::size_t n = g.num_nodes();
  const std::size_t take = std::min(budget, n);
  Rng rng(seed);
  SampleResult result{strategy, budget, {}, seed};
  switch (strategy) {
    case SamplingStrategy::kUniformNode: result.nodes = uniform_nodes(n, take, rng); break;
    case SamplingStrategy::kUniformEdge: result.nodes = uniform_edges(g, take, rng); break;
    case SamplingStrategy::kSnowball:
      result.nodes = snowball(g, static_cast<NodeId>(rng.below(n)), take, rng);
      break;
    case SamplingStrategy::kRandomWalk: result.nodes = random_walk(g, take, rng); break;
    case SamplingStrategy::kTopDegree: {
      auto ranking = rank_nodes(g, RankMetric::kDegree);
      ranking.resize(take);
      result.nodes = std::move(ranking);
      break;
    }
  }
  std::sort(result.nodes.begin(), result.nodes.end());
  return result;
}

std::uint64_t cell_seed(std::uint64_t seed, SamplingStrategy strategy, std::size_t budget,
                        std::size_t rep) {
  const std::uint64_t h = splitmix64(
      splitmix64(splitmix64(static_cast<std::uint64_t>(strategy)) ^ budget) ^ rep);
  return seed ^ h;
}

BiasReport benchmark(const AttributedGraph& g, std::span<const SamplingStrategy> strategies,
                     std::span<const std::size_t> budgets, std::size_t reps, std::uint64_t seed,
                     unsigned threads) {
  if (reps < 1) throw std::invalid_argument("benchmark needs at least one repetition");
  const std::size_t n = g.num_nodes();
  for (std::size_t b : budgets) {
    if (b < 1) throw std::invalid_argument("sampling budget must be at least 1");
    if (b > n) throw std::invalid_argument("sampling budget exceeds the node count");
  }
  BiasReport report;
  double degree_sum = 0.0;
  for (NodeId v = 0; v < n; ++v) degree_sum += static_cast<double>(g.degree(v));
  report.population_mean_degree = degree_sum / static_cast<double>(n);
  report.population_minority_fraction =
      static_cast<double>(g.class_size(kMinority)) / static_cast<double>(n);

  const std::size_t cells = strategies.size() * budgets.size();
  report.records.resize(cells * reps);
  parallel_for(
      report.records.size(),
      [&](std::size_t idx) {
        const std::size_t cell = idx / reps;
        const std::size_t rep = idx % reps;
        const SamplingStrategy s = strategies[cell / budgets.size()];
        const std::size_t budget = budgets[cell % budgets.size()];
        const auto result = sample(g, s, budget, cell_seed(seed, s, budget, rep));
        double minority = 0.0;
        double degree = 0.0;
        for (NodeId v : result.nodes) {
          minority += g.label(v) == kMinority;
          degree += static_cast<double>(g.degree(v));
        }
        const auto size = static_cast<double>(result.nodes.size());
        report.records[idx] = {s, budget, rep, minority / size, degree / size};
      },
      threads);

  for (std::size_t cell = 0; cell < cells; ++cell) {
    std::vector<double> minority_bias;
    std::vector<double> degree_bias;
    double abs_bias = 0.0;
    for (std::size_t rep = 0; rep < reps; ++rep) {
      const BiasRecord& r = report.records[cell * reps + rep];
      minority_bias.push_back(r.minority_fraction - report.population_minority_fraction);
      degree_bias.push_back(r.mean_degree - report.population_mean_degree);
      abs_bias += std::abs(minority_bias.back());
    }
    BiasSummary s;
    s.strategy = strategies[cell / budgets.size()];
    s.budget = budgets[cell % budgets.size()];
    s.reps = reps;
    s.minority_bias_mean = mean_of(minority_bias);
    s.minority_bias_sd = sd_of(minority_bias, s.minority_bias_mean);
    s.minority_abs_bias_mean = abs_bias / static_cast<double>(reps);
    s.degree_bias_mean = mean_of(degree_bias);
    s.degree_bias_sd = sd_of(degree_bias, s.degree_bias_mean);
    report.summary.push_back(s);
  }
  return report;
}

}  // namespace socnet
