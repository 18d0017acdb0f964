#include "socnet/graph.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

namespace socnet {

MixingMatrix::MixingMatrix() : MixingMatrix(0.5, 0.5, 0.5, 0.5) {}

MixingMatrix::MixingMatrix(double h00, double h01, double h10, double h11)
    : entries_{{{h00, h01}, {h10, h11}}} {
  for (const auto& row : entries_) {
    for (double h : row) {
      if (!(h >= 0.0 && h <= 1.0)) {
        throw std::invalid_argument("mixing matrix entries must lie in [0, 1]");
      }
    }
  }
}

MixingMatrix MixingMatrix::symmetric(double h) {
  return MixingMatrix(h, 1.0 - h, 1.0 - h, h);
}

MixingMatrix MixingMatrix::ones() { return MixingMatrix(1.0, 1.0, 1.0, 1.0); }

AttributedGraph::AttributedGraph(bool directed, std::vector<ClassLabel> labels)
    : directed_(directed), labels_(std::move(labels)) {
  if (labels_.empty()) {
    throw std::invalid_argument("graph needs at least one node");
  }
  if (labels_.size() > 0xFFFFFFFEULL) {
    throw std::invalid_argument("graph too large for 32-bit node ids");
  }
  for (ClassLabel c : labels_) {
    if (c > kMinority) {
      throw std::invalid_argument("class labels must be 0 or 1");
    }
  }
  out_.resize(labels_.size());
  if (directed_) in_.resize(labels_.size());
}

std::size_t AttributedGraph::class_size(ClassLabel c) const {
  return static_cast<std::size_t>(std::count(labels_.begin(), labels_.end(), c));
}

void AttributedGraph::check_node(NodeId v) const {
  if (v >= labels_.size()) {
    throw std::invalid_argument("node id " + std::to_string(v) + " out of range (n = " +
                                std::to_string(labels_.size()) + ")");
  }
}

bool AttributedGraph::add_edge(NodeId u, NodeId v) {
  check_node(u);
  check_node(v);
  if (u == v) return false;
  if (!directed_ && u > v) std::swap(u, v);
  if (!edge_keys_.insert(key(u, v)).second) return false;
  edges_.push_back({u, v});
  out_[u].push_back(v);
  if (directed_) {
    in_[v].push_back(u);
  } else {
    out_[v].push_back(u);
  }
  return true;
}

bool AttributedGraph::has_edge(NodeId u, NodeId v) const {
  if (u >= labels_.size() || v >= labels_.size()) return false;
  if (!directed_ && u > v) std::swap(u, v);
  return edge_keys_.contains(key(u, v));
}

std::vector<Edge> AttributedGraph::sorted_edges() const {
  std::vector<Edge> sorted = edges_;
  std::sort(sorted.begin(), sorted.end());
  return sorted;
}

bool operator==(const AttributedGraph& a, const AttributedGraph& b) {
  return a.directed_ == b.directed_ && a.labels_ == b.labels_ &&
         a.num_edges() == b.num_edges() && a.sorted_edges() == b.sorted_edges();
}

AttributedGraph new_graph(bool directed, std::vector<ClassLabel> labels) {
  return AttributedGraph(directed, std::move(labels));
}

std::vector<ClassLabel> assign_classes(std::size_t n, double f_m, Rng& rng) {
  if (n == 0) throw std::invalid_argument("assign_classes: n must be at least 1");
  if (!(f_m >= 0.0 && f_m <= 0.5)) {
    throw std::invalid_argument("minority fraction must lie in [0, 0.5]");
  }
  // nearbyint honours the default round-to-nearest-even mode.
  const auto minority = static_cast<std::size_t>(std::nearbyint(static_cast<double>(n) * f_m));
  std::vector<ClassLabel> labels(n, kMajority);
  std::fill_n(labels.begin(), minority, kMinority);
  for (std::size_t i = n - 1; i > 0; --i) {
    std::swap(labels[i], labels[rng.below(i + 1)]);
  }
  return labels;
}

DegreeVector degree_vector(const AttributedGraph& g) {
  DegreeVector dv;
  dv.directed = g.directed();
  const std::size_t n = g.num_nodes();
  dv.degree.assign(n, 0);
  if (g.directed()) {
    dv.in.assign(n, 0);
    dv.out.assign(n, 0);
    for (const Edge& e : g.edges()) {
      ++dv.out[e.source];
      ++dv.in[e.target];
    }
    for (std::size_t v = 0; v < n; ++v) dv.degree[v] = dv.in[v] + dv.out[v];
  } else {
    for (const Edge& e : g.edges()) {
      ++dv.degree[e.source];
      ++dv.degree[e.target];
    }
  }
  return dv;
}

}  // namespace socnet
