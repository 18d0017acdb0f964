#include "socnet/generators.hpp"

#include <algorithm>
#include <array>
#include <cctype>
#include <cmath>
#include <string>

#include "fenwick.hpp"

namespace socnet {

namespace {

// Sub-streams of GenParams::seed.
constexpr std::uint64_t kLabelStream = 0;
constexpr std::uint64_t kGrowthStream = 1;
constexpr std::uint64_t kActivityStream = 2;

// Consecutive failed source draws before the directed generator gives up.
constexpr std::size_t kMaxSourceRetries = 1000;
// Target redraws before the exact exclusion of a source's out-neighbors.
constexpr std::size_t kMaxRedraws = 8;

using IntTree = detail::Fenwick<std::int64_t>;

std::string lower(std::string_view s) {
  std::string out(s);
  for (char& c : out) c = static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
  return out;
}

// Splits a draw r in [0, a0 + a1) between two class trees whose totals are
// weighted by mult0 and mult1, then searches the selected tree.
NodeId pick_weighted(const std::array<IntTree, 2>& trees, double mult0, double mult1,
                     double a0, double a1, double r) {
  int cls = r < a0 ? 0 : 1;
  if (cls == 0 && !(a0 > 0.0)) cls = 1;
  if (cls == 1 && !(a1 > 0.0)) cls = 0;
  const double x = cls == 0 ? r / mult0 : (r - a0) / mult1;
  return static_cast<NodeId>(trees[cls].find(x));
}

// idx-th element of {0, ..., limit-1} minus `excluded` (sorted ascending).
NodeId nth_eligible(std::uint64_t idx, std::span<const NodeId> excluded_sorted) {
  for (NodeId c : excluded_sorted) {
    if (c <= idx) ++idx;
  }
  return static_cast<NodeId>(idx);
}

void validate_common(const GenParams& p) {
  if (p.n == 0) throw std::invalid_argument("n must be at least 1");
  if (!(p.f_m >= 0.0 && p.f_m <= 0.5)) {
    throw std::invalid_argument("minority fraction must lie in [0, 0.5]");
  }
}

std::vector<ClassLabel> draw_labels(const GenParams& p) {
  Rng label_rng(derive_seed(p.seed, kLabelStream));
  return assign_classes(p.n, p.f_m, label_rng);
}

class UndirectedGrowth {
 public:
  UndirectedGrowth(const GenParams& p, const PickObserver& observer)
      : p_(p),
        observer_(observer),
        kernel_(p.model == Model::kPA ? MixingMatrix::ones() : p.H),
        labels_(draw_labels(p)),
        graph_(false, labels_),
        rng_(derive_seed(p.seed, kGrowthStream)),
        trees_{IntTree(p.n), IntTree(p.n)},
        stamp_(p.n, 0) {
    trace_.directed = false;
    trace_.labels = labels_;
  }

  Generated run() {
    const NodeId m = p_.m;
    for (NodeId j = 1; j < m; ++j) {
      for (NodeId i = 0; i < j; ++i) {
        graph_.add_edge(j, i);
        trace_.events.push_back({j, i, EventKind::kSeed});
      }
    }
    for (NodeId i = 0; i < m; ++i) trees_[labels_[i]].add(i, graph_.degree(i));

    for (NodeId v = m; v < p_.n; ++v) arrive(v);
    return {std::move(graph_), std::move(trace_)};
  }

 private:
  void arrive(NodeId v) {
    chosen_.clear();
    for (NodeId pick = 0; pick < p_.m; ++pick) {
      bool triadic = false;
      if (p_.model == Model::kPATCH && pick > 0) {
        if (p_.p_tc >= 1.0) {
          triadic = true;
        } else if (p_.p_tc > 0.0) {
          triadic = rng_.uniform() < p_.p_tc;
        }
      }
      NodeId target = 0;
      EventKind kind = EventKind::kPahPick;
      if (!(triadic && triadic_pick(v, target))) {
        kind = attachment_pick(v, target);
      } else {
        kind = EventKind::kTcPick;
      }
      trees_[labels_[target]].add(target, -static_cast<std::int64_t>(graph_.degree(target)));
      graph_.add_edge(v, target);
      trace_.events.push_back({v, target, kind});
      chosen_.push_back(target);
    }
    for (NodeId t : chosen_) trees_[labels_[t]].add(t, graph_.degree(t));
    trees_[labels_[v]].add(v, graph_.degree(v));
  }

  // Uniform over neighbors of already-chosen targets that are neither the
  // newcomer nor chosen. Returns false when that set is empty.
  bool triadic_pick(NodeId v, NodeId& target) {
    ++epoch_;
    stamp_[v] = epoch_;
    for (NodeId c : chosen_) stamp_[c] = epoch_;
    candidates_.clear();
    for (NodeId c : chosen_) {
      for (NodeId u : graph_.neighbors(c)) {
        if (stamp_[u] != epoch_ && u < v) {
          stamp_[u] = epoch_;
          candidates_.push_back(u);
        }
      }
    }
    if (candidates_.empty()) return false;
    const auto idx = rng_.below(candidates_.size());
    target = candidates_[idx];
    if (observer_) {
      probabilities_.assign(candidates_.size(), 1.0 / static_cast<double>(candidates_.size()));
      notify(v, target, EventKind::kTcPick);
    }
    return true;
  }

  EventKind attachment_pick(NodeId v, NodeId& target) {
    const ClassLabel c = labels_[v];
    const double mult0 = kernel_(c, 0);
    const double mult1 = kernel_(c, 1);
    const double a0 = mult0 * static_cast<double>(trees_[0].total());
    const double a1 = mult1 * static_cast<double>(trees_[1].total());
    const double total = a0 + a1;
    EventKind kind = EventKind::kPahPick;
    if (!(total > 0.0)) {
      sorted_chosen_ = chosen_;
      std::sort(sorted_chosen_.begin(), sorted_chosen_.end());
      target = nth_eligible(rng_.below(v - chosen_.size()), sorted_chosen_);
      kind = EventKind::kFallbackUniform;
    } else {
      target = pick_weighted(trees_, mult0, mult1, a0, a1, rng_.uniform() * total);
    }
    if (observer_) {
      eligible_candidates(v);
      const auto mode = p_.model == Model::kPA ? UndirectedKernel::kPA : UndirectedKernel::kPAH;
      probabilities_ = target_weights_undirected(graph_, c, candidates_, p_.H, mode);
      double sum = 0.0;
      for (double w : probabilities_) sum += w;
      for (double& w : probabilities_) {
        w = sum > 0.0 ? w / sum : 1.0 / static_cast<double>(probabilities_.size());
      }
      notify(v, target, kind);
    }
    return kind;
  }

  void eligible_candidates(NodeId v) {
    candidates_.clear();
    for (NodeId u = 0; u < v; ++u) {
      if (std::find(chosen_.begin(), chosen_.end(), u) == chosen_.end()) candidates_.push_back(u);
    }
  }

  void notify(NodeId v, NodeId target, EventKind kind) {
    observer_(PickView{trace_.events.size(), v, target, kind, candidates_, probabilities_});
  }

  const GenParams& p_;
  const PickObserver& observer_;
  MixingMatrix kernel_;
  std::vector<ClassLabel> labels_;
  AttributedGraph graph_;
  GrowthTrace trace_;
  Rng rng_;
  std::array<IntTree, 2> trees_;
  std::vector<std::uint32_t> stamp_;
  std::uint32_t epoch_ = 0;
  std::vector<NodeId> chosen_;
  std::vector<NodeId> sorted_chosen_;
  std::vector<NodeId> candidates_;
  std::vector<double> probabilities_;
};

Generated grow_undirected(const GenParams& p, const PickObserver& observer) {
  validate_common(p);
  if (p.m < 1 || p.m >= p.n) throw std::invalid_argument("need 1 <= m < n");
  if (!(p.p_tc >= 0.0 && p.p_tc <= 1.0)) {
    throw std::invalid_argument("triadic-closure probability must lie in [0, 1]");
  }
  return UndirectedGrowth(p, observer).run();
}

Generated grow_directed(const GenParams& p, const PickObserver& observer) {
  validate_common(p);
  if (!(p.gamma_a > 1.0)) throw std::invalid_argument("activity exponent must exceed 1");
  const std::size_t max_edges = static_cast<std::size_t>(p.n) * (p.n - 1);
  if (!(p.d > 0.0) || p.d > 1.0 || directed_edge_target(p.n, p.d) > max_edges) {
    throw std::invalid_argument("density target exceeds n * (n - 1)");
  }
  const std::size_t target_edges = directed_edge_target(p.n, p.d);
  if (target_edges < 1) throw std::invalid_argument("density yields fewer than one edge");

  const std::vector<ClassLabel> labels = draw_labels(p);
  Rng activity_rng(derive_seed(p.seed, kActivityStream));
  const std::vector<double> activity = sample_activity(p.n, p.gamma_a, activity_rng);
  Rng rng(derive_seed(p.seed, kGrowthStream));

  const bool uses_indegree = p.model != Model::kDH;
  const MixingMatrix kernel = p.model == Model::kDPA ? MixingMatrix::ones() : p.H;

  AttributedGraph graph(true, labels);
  GrowthTrace trace{true, labels, {}};
  trace.events.reserve(target_edges);

  detail::Fenwick<double> sources(p.n);
  std::array<IntTree, 2> trees{IntTree(p.n), IntTree(p.n)};
  for (NodeId v = 0; v < p.n; ++v) {
    sources.add(v, activity[v]);
    trees[labels[v]].add(v, 1);
  }
  auto base = [&](NodeId t) -> std::int64_t {
    return uses_indegree ? static_cast<std::int64_t>(graph.in_degree(t)) + 1 : 1;
  };

  std::vector<NodeId> candidates;
  std::vector<double> probabilities;
  std::vector<char> marked(observer ? p.n : 0, 0);
  std::size_t failures = 0;
  while (graph.num_edges() < target_edges) {
    if (!(sources.total() > 0.0)) throw SaturationError(graph.num_edges(), target_edges);
    const auto s = static_cast<NodeId>(sources.find(rng.uniform() * sources.total()));
    const ClassLabel cs = labels[s];

    trees[cs].add(s, -base(s));
    const double mult0 = kernel(cs, 0);
    const double mult1 = kernel(cs, 1);
    NodeId target = 0;
    bool placeable = false;
    double a0 = mult0 * static_cast<double>(trees[0].total());
    double a1 = mult1 * static_cast<double>(trees[1].total());
    if (a0 + a1 > 0.0) {
      // Redrawing on an existing out-neighbor leaves the conditional law unchanged.
      for (std::size_t k = 0; k < kMaxRedraws && !placeable; ++k) {
        target = pick_weighted(trees, mult0, mult1, a0, a1, rng.uniform() * (a0 + a1));
        placeable = !graph.has_edge(s, target);
      }
      if (!placeable) {
        for (NodeId t : graph.out_neighbors(s)) trees[labels[t]].add(t, -base(t));
        a0 = mult0 * static_cast<double>(trees[0].total());
        a1 = mult1 * static_cast<double>(trees[1].total());
        placeable = a0 + a1 > 0.0;
        if (placeable) target = pick_weighted(trees, mult0, mult1, a0, a1, rng.uniform() * (a0 + a1));
        for (NodeId t : graph.out_neighbors(s)) trees[labels[t]].add(t, base(t));
      }
    }

    if (placeable && observer) {
      candidates.clear();
      marked[s] = 1;
      for (NodeId t : graph.out_neighbors(s)) marked[t] = 1;
      for (NodeId t = 0; t < p.n; ++t) {
        if (!marked[t]) candidates.push_back(t);
      }
      marked[s] = 0;
      for (NodeId t : graph.out_neighbors(s)) marked[t] = 0;
      probabilities = target_weights_directed(graph, s, candidates, p.H, p.model);
      double sum = 0.0;
      for (double w : probabilities) sum += w;
      for (double& w : probabilities) w /= sum;
      observer(PickView{trace.events.size(), s, target, EventKind::kDirectedPick, candidates,
                        probabilities});
    }

    trees[cs].add(s, base(s));

    if (!placeable) {
      if (++failures >= kMaxSourceRetries) throw SaturationError(graph.num_edges(), target_edges);
      continue;
    }
    failures = 0;
    graph.add_edge(s, target);
    trace.events.push_back({s, target, EventKind::kDirectedPick});
    if (uses_indegree) trees[labels[target]].add(target, 1);
    // Sources with no remaining dyads leave the activity draw.
    if (graph.out_degree(s) + 1 == p.n) sources.set(s, 0.0);
  }
  return {std::move(graph), std::move(trace)};
}

}  // namespace

SaturationError::SaturationError(std::size_t placed, std::size_t target)
    : std::runtime_error("directed generator saturated: placed " + std::to_string(placed) +
                         " of " + std::to_string(target) + " edges"),
      placed_(placed),
      target_(target) {}

std::string_view model_name(Model model) {
  switch (model) {
    case Model::kPA: return "pa";
    case Model::kPAH: return "pah";
    case Model::kPATCH: return "patch";
    case Model::kDPA: return "dpa";
    case Model::kDH: return "dh";
    case Model::kDPAH: return "dpah";
  }
  return "unknown";
}

Model parse_model(std::string_view name) {
  const std::string s = lower(name);
  for (Model m : {Model::kPA, Model::kPAH, Model::kPATCH, Model::kDPA, Model::kDH, Model::kDPAH}) {
    if (s == model_name(m)) return m;
  }
  throw std::invalid_argument("unknown model '" + std::string(name) + "'");
}

bool is_directed(Model model) {
  return model == Model::kDPA || model == Model::kDH || model == Model::kDPAH;
}

std::string_view event_kind_name(EventKind kind) {
  switch (kind) {
    case EventKind::kSeed: return "seed";
    case EventKind::kPahPick: return "pah-pick";
    case EventKind::kTcPick: return "tc-pick";
    case EventKind::kFallbackUniform: return "fallback-uniform";
    case EventKind::kDirectedPick: return "directed-pick";
  }
  return "unknown";
}

EventKind parse_event_kind(std::string_view name) {
  for (EventKind k : {EventKind::kSeed, EventKind::kPahPick, EventKind::kTcPick,
                      EventKind::kFallbackUniform, EventKind::kDirectedPick}) {
    if (name == event_kind_name(k)) return k;
  }
  throw std::invalid_argument("unknown event kind '" + std::string(name) + "'");
}

std::vector<double> target_weights_undirected(const AttributedGraph& state,
                                              ClassLabel newcomer_class,
                                              std::span<const NodeId> eligible,
                                              const MixingMatrix& H, UndirectedKernel kernel) {
  if (eligible.empty()) throw std::invalid_argument("eligible set is empty");
  std::vector<double> weights;
  weights.reserve(eligible.size());
  for (NodeId i : eligible) {
    const auto deg = static_cast<double>(state.degree(i));
    weights.push_back(kernel == UndirectedKernel::kPA ? deg
                                                      : H(newcomer_class, state.label(i)) * deg);
  }
  return weights;
}

std::vector<double> target_weights_directed(const AttributedGraph& state, NodeId source,
                                            std::span<const NodeId> eligible,
                                            const MixingMatrix& H, Model model) {
  if (eligible.empty()) throw std::invalid_argument("eligible set is empty");
  const ClassLabel cs = state.label(source);
  std::vector<double> weights;
  weights.reserve(eligible.size());
  for (NodeId t : eligible) {
    const double pa = static_cast<double>(state.in_degree(t)) + 1.0;
    switch (model) {
      case Model::kDPA: weights.push_back(pa); break;
      case Model::kDH: weights.push_back(H(cs, state.label(t))); break;
      case Model::kDPAH: weights.push_back(H(cs, state.label(t)) * pa); break;
      default: throw std::invalid_argument("not a directed model");
    }
  }
  return weights;
}

double pareto_activity(double u, double gamma_a) {
  if (!(gamma_a > 1.0)) throw std::invalid_argument("activity exponent must exceed 1");
  return std::pow(1.0 - u, -1.0 / (gamma_a - 1.0));
}

std::vector<double> sample_activity(std::size_t n, double gamma_a, Rng& rng) {
  if (!(gamma_a > 1.0)) throw std::invalid_argument("activity exponent must exceed 1");
  std::vector<double> activity(n);
  for (double& a : activity) a = pareto_activity(rng.uniform(), gamma_a);
  return activity;
}

std::size_t directed_edge_target(std::uint32_t n, double d) {
  const double pairs = static_cast<double>(n) * (static_cast<double>(n) - 1.0);
  const double target = std::nearbyint(d * pairs);
  return target > 0.0 ? static_cast<std::size_t>(target) : 0;
}

Generated generate(const GenParams& params, const PickObserver& observer) {
  return is_directed(params.model) ? grow_directed(params, observer)
                                   : grow_undirected(params, observer);
}

Generated gen_pa(std::uint32_t n, std::uint32_t m, std::uint64_t seed, double f_m) {
  GenParams p;
  p.model = Model::kPA;
  p.n = n;
  p.m = m;
  p.f_m = f_m;
  p.seed = seed;
  return generate(p);
}

Generated gen_pah(std::uint32_t n, std::uint32_t m, double f_m, const MixingMatrix& H,
                  std::uint64_t seed) {
  GenParams p;
  p.model = Model::kPAH;
  p.n = n;
  p.m = m;
  p.f_m = f_m;
  p.H = H;
  p.seed = seed;
  return generate(p);
}

Generated gen_patch(std::uint32_t n, std::uint32_t m, double f_m, const MixingMatrix& H,
                    double p_tc, std::uint64_t seed) {
  GenParams p;
  p.model = Model::kPATCH;
  p.n = n;
  p.m = m;
  p.f_m = f_m;
  p.H = H;
  p.p_tc = p_tc;
  p.seed = seed;
  return generate(p);
}

Generated gen_directed(Model model, std::uint32_t n, double d, double f_m, const MixingMatrix& H,
                       double gamma_a, std::uint64_t seed) {
  if (!is_directed(model)) throw std::invalid_argument("gen_directed needs DPA, DH or DPAH");
  GenParams p;
  p.model = model;
  p.n = n;
  p.d = d;
  p.f_m = f_m;
  p.H = H;
  p.gamma_a = gamma_a;
  p.seed = seed;
  return generate(p);
}

AttributedGraph replay_graph(const GrowthTrace& trace) {
  AttributedGraph g(trace.directed, trace.labels);
  for (std::size_t i = 0; i < trace.events.size(); ++i) {
    const EdgeEvent& e = trace.events[i];
    if (e.source >= g.num_nodes() || e.target >= g.num_nodes() || !g.add_edge(e.source, e.target)) {
      throw std::invalid_argument("trace event " + std::to_string(i) +
                                  " is out of range, a self-loop or a duplicate edge");
    }
  }
  return g;
}

}  // namespace socnet
