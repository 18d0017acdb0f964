#include "replay.hpp"

#include <stdexcept>
#include <string>

#include "fenwick.hpp"

namespace socnet::detail {

namespace {

[[noreturn]] void not_replayable(std::size_t index, const std::string& why) {
  throw std::invalid_argument("trace not replayable at event " + std::to_string(index) + ": " +
                              why);
}

void replay_undirected(const GrowthTrace& trace, ReplayContexts& out) {
  const std::size_t n = trace.labels.size();
  AttributedGraph g(false, trace.labels);
  std::array<Fenwick<std::int64_t>, 2> degree_by_class{Fenwick<std::int64_t>(n),
                                                       Fenwick<std::int64_t>(n)};
  std::vector<std::uint32_t> stamp(n, 0);
  std::uint32_t epoch = 0;
  std::vector<NodeId> chosen;
  NodeId block_source = 0;
  bool in_block = false;

  for (std::size_t i = 0; i < trace.events.size(); ++i) {
    const EdgeEvent& e = trace.events[i];
    if (e.source >= n || e.target >= n) not_replayable(i, "node id out of range");
    if (e.kind == EventKind::kDirectedPick) not_replayable(i, "directed event in undirected trace");
    if (e.kind == EventKind::kSeed) {
      if (!g.add_edge(e.source, e.target)) not_replayable(i, "duplicate edge or self-loop");
      degree_by_class[trace.labels[e.source]].add(e.source, 1);
      degree_by_class[trace.labels[e.target]].add(e.target, 1);
      in_block = false;
      continue;
    }
    const NodeId v = e.source;
    const NodeId t = e.target;
    if (t >= v) not_replayable(i, "target must precede the arriving node");
    if (!in_block || block_source != v) {
      chosen.clear();
      block_source = v;
      in_block = true;
    }

    UndirectedPick pick;
    pick.newcomer = trace.labels[v];
    pick.target_class = trace.labels[t];
    pick.first_pick = chosen.empty();
    pick.flagged_fallback = e.kind == EventKind::kFallbackUniform;
    pick.target_degree = static_cast<double>(g.degree(t));
    std::int64_t deg[2] = {degree_by_class[0].prefix(v), degree_by_class[1].prefix(v)};
    for (NodeId c : chosen) deg[trace.labels[c]] -= static_cast<std::int64_t>(g.degree(c));
    pick.eligible_degree[0] = static_cast<double>(deg[0]);
    pick.eligible_degree[1] = static_cast<double>(deg[1]);
    pick.eligible_count = static_cast<double>(v - chosen.size());

    if (!chosen.empty()) {
      ++epoch;
      stamp[v] = epoch;
      for (NodeId c : chosen) stamp[c] = epoch;
      std::size_t size = 0;
      for (NodeId c : chosen) {
        for (NodeId u : g.neighbors(c)) {
          if (stamp[u] != epoch && u < v) {
            stamp[u] = epoch;
            ++size;
            if (u == t) pick.target_in_triad = true;
          }
        }
      }
      pick.triad_size = static_cast<double>(size);
    }

    if (!g.add_edge(v, t)) not_replayable(i, "duplicate edge");
    degree_by_class[trace.labels[v]].add(v, 1);
    degree_by_class[trace.labels[t]].add(t, 1);
    chosen.push_back(t);
    out.undirected.push_back(pick);
    if (pick.flagged_fallback) {
      ++out.fallback_events;
    } else {
      ++out.scored_events;
    }
  }
}

void replay_directed(const GrowthTrace& trace, ReplayContexts& out) {
  const std::size_t n = trace.labels.size();
  AttributedGraph g(true, trace.labels);
  double base_total[2] = {0.0, 0.0};
  double count_total[2] = {0.0, 0.0};
  for (ClassLabel c : trace.labels) {
    base_total[c] += 1.0;
    count_total[c] += 1.0;
  }
  for (std::size_t i = 0; i < trace.events.size(); ++i) {
    const EdgeEvent& e = trace.events[i];
    if (e.source >= n || e.target >= n) not_replayable(i, "node id out of range");
    if (e.kind != EventKind::kDirectedPick) not_replayable(i, "undirected event in directed trace");
    const NodeId s = e.source;
    const NodeId t = e.target;
    if (s == t || g.has_edge(s, t)) not_replayable(i, "duplicate edge or self-loop");

    DirectedPick pick;
    pick.source_class = trace.labels[s];
    pick.target_class = trace.labels[t];
    pick.target_base = static_cast<double>(g.in_degree(t)) + 1.0;
    for (int c = 0; c < 2; ++c) {
      pick.eligible_base[c] = base_total[c];
      pick.eligible_count[c] = count_total[c];
    }
    pick.eligible_base[pick.source_class] -= static_cast<double>(g.in_degree(s)) + 1.0;
    pick.eligible_count[pick.source_class] -= 1.0;
    for (NodeId u : g.out_neighbors(s)) {
      pick.eligible_base[trace.labels[u]] -= static_cast<double>(g.in_degree(u)) + 1.0;
      pick.eligible_count[trace.labels[u]] -= 1.0;
    }
    g.add_edge(s, t);
    base_total[pick.target_class] += 1.0;
    out.directed_picks.push_back(pick);
    ++out.scored_events;
  }
}

}  // namespace

ReplayContexts build_contexts(const GrowthTrace& trace) {
  if (trace.labels.empty()) throw std::invalid_argument("trace has no nodes");
  ReplayContexts out;
  out.directed = trace.directed;
  if (trace.directed) {
    replay_directed(trace, out);
  } else {
    replay_undirected(trace, out);
  }
  return out;
}

double attachment_probability(const UndirectedPick& pick, bool neutral, double h) {
  double mult[2] = {1.0, 1.0};
  if (!neutral) {
    mult[pick.newcomer] = h;
    mult[1 - pick.newcomer] = 1.0 - h;
  }
  const double total = mult[0] * pick.eligible_degree[0] + mult[1] * pick.eligible_degree[1];
  if (!(total > 0.0)) return 1.0 / pick.eligible_count;
  return mult[pick.target_class] * pick.target_degree / total;
}

double pick_probability(const UndirectedPick& pick, Model model, double h, double p_tc) {
  if (pick.flagged_fallback) return 1.0 / pick.eligible_count;
  switch (model) {
    case Model::kPA: return attachment_probability(pick, true, h);
    case Model::kPAH: return attachment_probability(pick, false, h);
    case Model::kPATCH: {
      const double attach = attachment_probability(pick, false, h);
      if (pick.first_pick || pick.triad_size == 0.0) return attach;
      const double triad = pick.target_in_triad ? 1.0 / pick.triad_size : 0.0;
      return p_tc * triad + (1.0 - p_tc) * attach;
    }
    default: throw std::invalid_argument("directed model on undirected pick");
  }
}

double pick_probability(const DirectedPick& pick, Model model, double h) {
  double mult[2] = {1.0, 1.0};
  if (model != Model::kDPA) {
    mult[pick.source_class] = h;
    mult[1 - pick.source_class] = 1.0 - h;
  }
  double total = 0.0;
  double weight = 0.0;
  switch (model) {
    case Model::kDPA:
    case Model::kDPAH:
      total = mult[0] * pick.eligible_base[0] + mult[1] * pick.eligible_base[1];
      weight = mult[pick.target_class] * pick.target_base;
      break;
    case Model::kDH:
      total = mult[0] * pick.eligible_count[0] + mult[1] * pick.eligible_count[1];
      weight = mult[pick.target_class];
      break;
    default: throw std::invalid_argument("undirected model on directed pick");
  }
  if (!(total > 0.0)) return 0.0;
  return weight / total;
}

}  // namespace socnet::detail
