#pragma once

#include <cstddef>
#include <vector>

#include "socnet/generators.hpp"

namespace socnet::detail {

// State seen by one undirected pick, reduced to what the PA/PAH/PATCH
// kernels need. Eligible = nodes with id < source minus targets the source
// already chose in its arrival block.
struct UndirectedPick {
  ClassLabel newcomer = 0;
  ClassLabel target_class = 0;
  bool first_pick = true;
  bool flagged_fallback = false;
  bool target_in_triad = false;
  double target_degree = 0.0;
  double eligible_degree[2] = {0.0, 0.0};
  double eligible_count = 0.0;
  double triad_size = 0.0;  // neighbors of chosen targets, 0 on first pick
};

// State seen by one directed pick. Eligible = all t != s with (s, t) absent.
struct DirectedPick {
  ClassLabel source_class = 0;
  ClassLabel target_class = 0;
  double target_base = 0.0;  // indeg(t) + 1
  double eligible_base[2] = {0.0, 0.0};
  double eligible_count[2] = {0.0, 0.0};
};

struct ReplayContexts {
  bool directed = false;
  std::vector<UndirectedPick> undirected;
  std::vector<DirectedPick> directed_picks;
  std::size_t scored_events = 0;    // picks not flagged fallback-uniform
  std::size_t fallback_events = 0;  // picks flagged fallback-uniform
};

// One pass over the trace. Throws std::invalid_argument if the trace cannot
// be replayed.
ReplayContexts build_contexts(const GrowthTrace& trace);

double pick_probability(const UndirectedPick& pick, Model model, double h, double p_tc);
double pick_probability(const DirectedPick& pick, Model model, double h);

// PAH probability (PA when `neutral`).
double attachment_probability(const UndirectedPick& pick, bool neutral, double h);

}  // namespace socnet::detail
