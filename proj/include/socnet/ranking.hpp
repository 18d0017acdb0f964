#pragma once

#include <cstddef>
#include <span>
#include <string_view>
#include <vector>

#include "socnet/graph.hpp"

namespace socnet {

enum class RankMetric { kDegree, kInDegree, kPageRank };

std::string_view metric_name(RankMetric metric);
RankMetric parse_metric(std::string_view name);

struct PageRankResult {
  std::vector<double> scores;
  bool converged = false;
  int iterations = 0;
};

/// Power iteration with uniform teleport; dangling mass is spread uniformly.
/// Undirected edges count in both directions. Stops once the L1 change
/// drops below `tol`; otherwise returns the last iterate with converged = false.
PageRankResult pagerank(const AttributedGraph& g, double damping = 0.85, double tol = 1e-10,
                        int max_iter = 200);

/// Per-node scores: degree (in + out when directed), in-degree or PageRank.
std::vector<double> metric_scores(const AttributedGraph& g, RankMetric metric);

/// Node ids by descending score, ties by ascending id.
std::vector<NodeId> rank_by_scores(std::span<const double> scores);

/// Throws std::invalid_argument for in-degree on an undirected graph.
std::vector<NodeId> rank_nodes(const AttributedGraph& g, RankMetric metric);

struct VisibilityPoint {
  int k_percent = 0;
  double minority_fraction = 0.0;
};

struct VisibilityCurve {
  RankMetric metric = RankMetric::kDegree;
  double f_m = 0.0;  // minority share of the whole graph
  std::vector<VisibilityPoint> points;  // k = 5, 10, ..., 100
};

/// Minority share of the top ceil(k n / 100) ranked nodes for each k.
/// Throws std::invalid_argument unless both classes are present.
VisibilityCurve visibility(const AttributedGraph& g, RankMetric metric);

/// Minority fraction among the top ceil(k n / 100) nodes of a ranking.
double top_k_minority_fraction(const AttributedGraph& g, std::span<const NodeId> ranking,
                               int k_percent);

/// Mean absolute pairwise difference over twice the mean,
/// sum_ij |x_i - x_j| / (2 n^2 mean), via the sorted-order identity.
/// Throws std::invalid_argument for empty, negative or all-zero input.
double gini(std::span<const double> values);

struct RankReport {
  VisibilityCurve curve;
  double gini = 0.0;
  /// Mean over k < 100 of (minority fraction in top k - f_m). Negative
  /// values mean the ranking under-represents the minority.
  double inequity = 0.0;
  bool pagerank_converged = true;
};

RankReport rank_report(const AttributedGraph& g, RankMetric metric);

}  // namespace socnet
