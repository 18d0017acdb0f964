#pragma once

#include <array>
#include <cstddef>
#include <cstdint>
#include <span>
#include <unordered_set>
#include <utility>
#include <vector>

#include "socnet/rng.hpp"

namespace socnet {

using NodeId = std::uint32_t;
using ClassLabel = std::uint8_t;

inline constexpr ClassLabel kMajority = 0;
inline constexpr ClassLabel kMinority = 1;

struct Edge {
  NodeId source = 0;
  NodeId target = 0;

  friend bool operator==(const Edge&, const Edge&) = default;
  friend auto operator<=>(const Edge&, const Edge&) = default;
};

/// 2x2 affinity of a source of class a for a target of class b.
class MixingMatrix {
 public:
  /// Neutral matrix, every entry 0.5.
  MixingMatrix();
  MixingMatrix(double h00, double h01, double h10, double h11);

  /// H[a][a] = h, H[a][b] = 1 - h.
  static MixingMatrix symmetric(double h);
  /// Every entry 1: the kernel that ignores classes.
  static MixingMatrix ones();

  double operator()(ClassLabel source, ClassLabel target) const {
    return entries_[source][target];
  }

  friend bool operator==(const MixingMatrix&, const MixingMatrix&) = default;

 private:
  std::array<std::array<double, 2>, 2> entries_;
};

/// Simple graph (no self-loops, no multi-edges) over nodes 0..n-1, each
/// carrying a binary class label. Undirected edges are stored once as
/// (min, max). Edge list keeps insertion order.
class AttributedGraph {
 public:
  /// Throws std::invalid_argument for an empty label list or labels outside {0,1}.
  AttributedGraph(bool directed, std::vector<ClassLabel> labels);

  bool directed() const { return directed_; }
  std::size_t num_nodes() const { return labels_.size(); }
  std::size_t num_edges() const { return edges_.size(); }

  ClassLabel label(NodeId v) const { return labels_[v]; }
  std::span<const ClassLabel> labels() const { return labels_; }
  std::size_t class_size(ClassLabel c) const;

  /// Returns false, leaving the graph unchanged, for self-loops and
  /// existing edges. Out-of-range ids throw std::invalid_argument.
  bool add_edge(NodeId u, NodeId v);
  bool has_edge(NodeId u, NodeId v) const;

  /// Out-neighbors when directed, all neighbors otherwise.
  std::span<const NodeId> out_neighbors(NodeId v) const { return out_[v]; }
  /// In-neighbors when directed, all neighbors otherwise.
  std::span<const NodeId> in_neighbors(NodeId v) const {
    return directed_ ? std::span<const NodeId>(in_[v]) : std::span<const NodeId>(out_[v]);
  }
  std::span<const NodeId> neighbors(NodeId v) const { return out_[v]; }

  std::size_t out_degree(NodeId v) const { return out_[v].size(); }
  std::size_t in_degree(NodeId v) const { return in_neighbors(v).size(); }
  /// deg(v) undirected, indeg + outdeg directed.
  std::size_t degree(NodeId v) const {
    return directed_ ? in_[v].size() + out_[v].size() : out_[v].size();
  }

  const std::vector<Edge>& edges() const { return edges_; }
  std::vector<Edge> sorted_edges() const;

  /// Same directedness, labels and edge set (insertion order ignored).
  friend bool operator==(const AttributedGraph& a, const AttributedGraph& b);

 private:
  static std::uint64_t key(NodeId u, NodeId v) {
    return (static_cast<std::uint64_t>(u) << 32) | v;
  }
  void check_node(NodeId v) const;

  bool directed_;
  std::vector<ClassLabel> labels_;
  std::vector<std::vector<NodeId>> out_;
  std::vector<std::vector<NodeId>> in_;
  std::vector<Edge> edges_;
  std::unordered_set<std::uint64_t> edge_keys_;
};

AttributedGraph new_graph(bool directed, std::vector<ClassLabel> labels);

/// Exactly round(n * f_m) minority labels (round half to even), placed by a
/// Fisher-Yates shuffle driven by `rng`. Requires n >= 1 and 0 <= f_m <= 0.5.
std::vector<ClassLabel> assign_classes(std::size_t n, double f_m, Rng& rng);

/// Degree counts recomputed from the edge list. Undirected graphs fill
/// `degree` only; directed graphs fill `in`, `out` and `degree = in + out`.
struct DegreeVector {
  bool directed = false;
  std::vector<std::uint32_t> degree;
  std::vector<std::uint32_t> in;
  std::vector<std::uint32_t> out;
};

DegreeVector degree_vector(const AttributedGraph& g);

}  // namespace socnet
