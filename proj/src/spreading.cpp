#include "socnet/spreading.hpp"

#include <algorithm>
#include <stdexcept>
#include <string>

#include "socnet/ranking.hpp"

namespace socnet {

namespace {

void check_seeds(const AttributedGraph& g, std::span<const NodeId> seeds) {
  if (seeds.empty()) throw std::invalid_argument("seed set is empty");
  for (NodeId s : seeds) {
    if (s >= g.num_nodes()) throw std::invalid_argument("seed id out of range");
  }
}

// Neighbor lists sorted by id; `incoming` selects in-neighbors.
std::vector<std::vector<NodeId>> sorted_adjacency(const AttributedGraph& g, bool incoming) {
  std::vector<std::vector<NodeId>> adj(g.num_nodes());
  for (NodeId v = 0; v < g.num_nodes(); ++v) {
    const auto nbrs = incoming ? g.in_neighbors(v) : g.out_neighbors(v);
    adj[v].assign(nbrs.begin(), nbrs.end());
    std::sort(adj[v].begin(), adj[v].end());
  }
  return adj;
}

class SeriesRecorder {
 public:
  explicit SeriesRecorder(const AttributedGraph& g)
      : size0_(static_cast<double>(g.class_size(kMajority))),
        size1_(static_cast<double>(g.class_size(kMinority))),
        n_(static_cast<double>(g.num_nodes())) {}

  void count(ClassLabel c) { ++(c == kMajority ? active0_ : active1_); }

  void record(CascadeTrace& trace) const {
    trace.frac_class0.push_back(size0_ > 0 ? static_cast<double>(active0_) / size0_ : 0.0);
    trace.frac_class1.push_back(size1_ > 0 ? static_cast<double>(active1_) / size1_ : 0.0);
    trace.frac_all.push_back(static_cast<double>(active0_ + active1_) / n_);
  }

 private:
  double size0_;
  double size1_;
  double n_;
  std::size_t active0_ = 0;
  std::size_t active1_ = 0;
};

CascadeTrace start_trace(const AttributedGraph& g, std::span<const NodeId> seeds,
                         SeriesRecorder& recorder, std::vector<NodeId>& frontier) {
  CascadeTrace trace;
  trace.activation_time.assign(g.num_nodes(), kNever);
  for (NodeId s : seeds) {
    if (trace.activation_time[s] == 0) continue;
    trace.activation_time[s] = 0;
    recorder.count(g.label(s));
    frontier.push_back(s);
  }
  std::sort(frontier.begin(), frontier.end());
  trace.seeds = frontier;
  recorder.record(trace);
  return trace;
}

}  // namespace

CascadeTrace cascade(const AttributedGraph& g, std::span<const NodeId> seeds, double p_in,
                     double p_out, Rng& rng, std::size_t max_steps) {
  check_seeds(g, seeds);
  if (!(p_in >= 0.0 && p_in <= 1.0) || !(p_out >= 0.0 && p_out <= 1.0)) {
    throw std::invalid_argument("transmission probabilities must lie in [0, 1]");
  }
  if (max_steps == 0) max_steps = 10 * g.num_nodes();
  const auto adj = sorted_adjacency(g, false);
  SeriesRecorder recorder(g);
  std::vector<NodeId> frontier;
  CascadeTrace trace = start_trace(g, seeds, recorder, frontier);
  trace.process = Contagion::kIndependentCascade;
  trace.p_in = p_in;
  trace.p_out = p_out;

  std::vector<NodeId> next;
  for (std::size_t t = 1; t <= max_steps && !frontier.empty(); ++t) {
    next.clear();
    for (NodeId u : frontier) {
      for (NodeId v : adj[u]) {
        if (trace.activation_time[v] != kNever) continue;
        const double p = g.label(u) == g.label(v) ? p_in : p_out;
        if (rng.uniform() < p) {
          trace.activation_time[v] = static_cast<std::int64_t>(t);
          recorder.count(g.label(v));
          next.push_back(v);
        }
      }
    }
    if (next.empty()) break;
    std::sort(next.begin(), next.end());
    frontier.swap(next);
    recorder.record(trace);
  }
  return trace;
}

CascadeTrace threshold_cascade(const AttributedGraph& g, std::span<const NodeId> seeds,
                               double theta, std::size_t max_steps) {
  check_seeds(g, seeds);
  if (!(theta > 0.0 && theta <= 1.0)) throw std::invalid_argument("theta must lie in (0, 1]");
  if (max_steps == 0) max_steps = 10 * g.num_nodes();
  const std::size_t n = g.num_nodes();
  SeriesRecorder recorder(g);
  std::vector<NodeId> frontier;
  CascadeTrace trace = start_trace(g, seeds, recorder, frontier);
  trace.process = Contagion::kThreshold;
  trace.theta = theta;

  std::vector<std::size_t> active_in(n, 0);
  auto spread_from = [&](std::span<const NodeId> nodes) {
    for (NodeId u : nodes) {
      for (NodeId v : g.out_neighbors(u)) ++active_in[v];
    }
  };
  spread_from(frontier);
  std::vector<NodeId> next;
  for (std::size_t t = 1; t <= max_steps; ++t) {
    next.clear();
    for (NodeId v = 0; v < n; ++v) {
      if (trace.activation_time[v] != kNever) continue;
      const std::size_t k = g.in_degree(v);
      if (k == 0) continue;
      if (static_cast<double>(active_in[v]) / static_cast<double>(k) >= theta) next.push_back(v);
    }
    if (next.empty()) break;
    for (NodeId v : next) {
      trace.activation_time[v] = static_cast<std::int64_t>(t);
      recorder.count(g.label(v));
    }
    spread_from(next);
    recorder.record(trace);
  }
  return trace;
}

EqualityReport equality_report(const CascadeTrace& trace, std::span<const ClassLabel> labels) {
  if (labels.size() != trace.activation_time.size()) {
    throw std::invalid_argument("labels and cascade trace disagree on n");
  }
  const bool has0 = std::find(labels.begin(), labels.end(), kMajority) != labels.end();
  const bool has1 = std::find(labels.begin(), labels.end(), kMinority) != labels.end();
  EqualityReport report;
  for (std::size_t t = 0; t < trace.steps(); ++t) {
    double e = 1.0;
    if (has0 && has1) {
      const double lo = std::min(trace.frac_class0[t], trace.frac_class1[t]);
      const double hi = std::max(trace.frac_class0[t], trace.frac_class1[t]);
      if (hi > 0.0) e = lo / hi;
    }
    report.equality.push_back(e);
  }
  report.efficiency = first_reaching(trace.frac_all, kEfficiencyThreshold);
  if (trace.steps() > 0) {
    report.terminal_class0 = trace.frac_class0.back();
    report.terminal_class1 = trace.frac_class1.back();
  }
  return report;
}

std::optional<std::size_t> first_reaching(std::span<const double> series, double level) {
  for (std::size_t t = 0; t < series.size(); ++t) {
    if (series[t] >= level) return t;
  }
  return std::nullopt;
}

std::string_view seeding_name(SeedingCondition c) {
  switch (c) {
    case SeedingCondition::kUniform: return "uniform";
    case SeedingCondition::kMajorityOnly: return "majority-only";
    case SeedingCondition::kMinorityOnly: return "minority-only";
    case SeedingCondition::kTopDegree: return "top-degree";
  }
  return "unknown";
}

SeedingCondition parse_seeding(std::string_view name) {
  for (SeedingCondition c : {SeedingCondition::kUniform, SeedingCondition::kMajorityOnly,
                             SeedingCondition::kMinorityOnly, SeedingCondition::kTopDegree}) {
    if (name == seeding_name(c)) return c;
  }
  throw std::invalid_argument("unknown seeding condition '" + std::string(name) + "'");
}

std::vector<NodeId> seeding(const AttributedGraph& g, SeedingCondition condition,
                            std::size_t count, Rng& rng) {
  if (count < 1) throw std::invalid_argument("seed count must be at least 1");
  std::vector<NodeId> pool;
  if (condition == SeedingCondition::kTopDegree) {
    pool = rank_nodes(g, RankMetric::kDegree);
    if (count > pool.size()) throw std::invalid_argument("seed count exceeds the node count");
    pool.resize(count);
    std::sort(pool.begin(), pool.end());
    return pool;
  }
  for (NodeId v = 0; v < g.num_nodes(); ++v) {
    const bool eligible = condition == SeedingCondition::kUniform ||
                          (condition == SeedingCondition::kMajorityOnly && g.label(v) == kMajority) ||
                          (condition == SeedingCondition::kMinorityOnly && g.label(v) == kMinority);
    if (eligible) pool.push_back(v);
  }
  if (count > pool.size()) {
    throw std::invalid_argument("seed count " + std::to_string(count) + " exceeds the " +
                                std::to_string(pool.size()) + " eligible nodes");
  }
  for (std::size_t i = 0; i < count; ++i) std::swap(pool[i], pool[i + rng.below(pool.size() - i)]);
  pool.resize(count);
  std::sort(pool.begin(), pool.end());
  return pool;
}

}  // namespace socnet
