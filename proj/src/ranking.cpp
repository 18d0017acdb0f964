#include "socnet/ranking.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>
#include <string>

namespace socnet {

std::string_view metric_name(RankMetric metric) {
  switch (metric) {
    case RankMetric::kDegree: return "degree";
    case RankMetric::kInDegree: return "indegree";
    case RankMetric::kPageRank: return "pagerank";
  }
  return "unknown";
}

RankMetric parse_metric(std::string_view name) {
  for (RankMetric m : {RankMetric::kDegree, RankMetric::kInDegree, RankMetric::kPageRank}) {
    if (name == metric_name(m)) return m;
  }
  throw std::invalid_argument("unknown ranking metric '" + std::string(name) + "'");
}

PageRankResult pagerank(const AttributedGraph& g, double damping, double tol, int max_iter) {
  const std::size_t n = g.num_nodes();
  const double inv_n = 1.0 / static_cast<double>(n);
  PageRankResult result;
  result.scores.assign(n, inv_n);
  std::vector<double> next(n);
  for (int it = 0; it < max_iter; ++it) {
    double dangling = 0.0;
    for (NodeId v = 0; v < n; ++v) {
      if (g.out_degree(v) == 0) dangling += result.scores[v];
    }
    const double base = (1.0 - damping) * inv_n + damping * dangling * inv_n;
    for (NodeId v = 0; v < n; ++v) {
      double inflow = 0.0;
      for (NodeId u : g.in_neighbors(v)) {
        inflow += result.scores[u] / static_cast<double>(g.out_degree(u));
      }
      next[v] = base + damping * inflow;
    }
    double change = 0.0;
    for (NodeId v = 0; v < n; ++v) change += std::abs(next[v] - result.scores[v]);
    result.scores.swap(next);
    result.iterations = it + 1;
    if (change < tol) {
      result.converged = true;
      break;
    }
  }
  const double total = std::accumulate(result.scores.begin(), result.scores.end(), 0.0);
  for (double& s : result.scores) s /= total;
  return result;
}

std::vector<double> metric_scores(const AttributedGraph& g, RankMetric metric) {
  const std::size_t n = g.num_nodes();
  std::vector<double> scores(n);
  switch (metric) {
    case RankMetric::kDegree:
      for (NodeId v = 0; v < n; ++v) scores[v] = static_cast<double>(g.degree(v));
      break;
    case RankMetric::kInDegree:
      if (!g.directed()) throw std::invalid_argument("indegree ranking needs a directed graph");
      for (NodeId v = 0; v < n; ++v) scores[v] = static_cast<double>(g.in_degree(v));
      break;
    case RankMetric::kPageRank: scores = pagerank(g).scores; break;
  }
  return scores;
}

std::vector<NodeId> rank_by_scores(std::span<const double> scores) {
  std::vector<NodeId> order(scores.size());
  std::iota(order.begin(), order.end(), NodeId{0});
  std::stable_sort(order.begin(), order.end(),
                   [&](NodeId a, NodeId b) { return scores[a] > scores[b]; });
  return order;
}

std::vector<NodeId> rank_nodes(const AttributedGraph& g, RankMetric metric) {
  const auto scores = metric_scores(g, metric);
  return rank_by_scores(scores);
}

double top_k_minority_fraction(const AttributedGraph& g, std::span<const NodeId> ranking,
                               int k_percent) {
  const std::size_t n = ranking.size();
  const std::size_t top = (static_cast<std::size_t>(k_percent) * n + 99) / 100;
  std::size_t minority = 0;
  for (std::size_t i = 0; i < top; ++i) minority += g.label(ranking[i]) == kMinority;
  return static_cast<double>(minority) / static_cast<double>(top);
}

namespace {

VisibilityCurve curve_from_ranking(const AttributedGraph& g, RankMetric metric,
                                   std::span<const NodeId> ranking) {
  const std::size_t minority = g.class_size(kMinority);
  if (minority == 0 || minority == g.num_nodes()) {
    throw std::invalid_argument("visibility needs both classes present");
  }
  VisibilityCurve curve;
  curve.metric = metric;
  curve.f_m = static_cast<double>(minority) / static_cast<double>(g.num_nodes());
  for (int k = 5; k <= 100; k += 5) {
    curve.points.push_back({k, top_k_minority_fraction(g, ranking, k)});
  }
  return curve;
}

}  // namespace

VisibilityCurve visibility(const AttributedGraph& g, RankMetric metric) {
  const auto ranking = rank_nodes(g, metric);
  return curve_from_ranking(g, metric, ranking);
}

double gini(std::span<const double> values) {
  if (values.empty()) throw std::invalid_argument("gini of an empty sample");
  std::vector<double> sorted(values.begin(), values.end());
  std::sort(sorted.begin(), sorted.end());
  if (sorted.front() < 0.0) throw std::invalid_argument("gini needs non-negative values");
  const double total = std::accumulate(sorted.begin(), sorted.end(), 0.0);
  if (!(total > 0.0)) throw std::invalid_argument("gini of an all-zero sample");
  const auto n = static_cast<double>(sorted.size());
  // sum_ij |x_i - x_j| = 2 sum_i (2i - n - 1) x_(i), i = 1..n
  double weighted = 0.0;
  for (std::size_t i = 0; i < sorted.size(); ++i) {
    weighted += (2.0 * static_cast<double>(i + 1) - n - 1.0) * sorted[i];
  }
  return std::max(0.0, weighted / (n * total));
}

RankReport rank_report(const AttributedGraph& g, RankMetric metric) {
  RankReport report;
  std::vector<double> scores;
  if (metric == RankMetric::kPageRank) {
    auto pr = pagerank(g);
    report.pagerank_converged = pr.converged;
    scores = std::move(pr.scores);
  } else {
    scores = metric_scores(g, metric);
  }
  const auto ranking = rank_by_scores(scores);
  report.curve = curve_from_ranking(g, metric, ranking);
  report.gini = gini(scores);
  double deviation = 0.0;
  int count = 0;
  for (const auto& point : report.curve.points) {
    if (point.k_percent < 100) {
      deviation += point.minority_fraction - report.curve.f_m;
      ++count;
    }
  }
  report.inequity = deviation / count;
  return report;
}

}  // namespace socnet
