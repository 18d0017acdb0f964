#pragma once

#include <cstddef>
#include <cstdint>
#include <functional>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "socnet/graph.hpp"
#include "socnet/rng.hpp"

namespace socnet {

enum class Model { kPA, kPAH, kPATCH, kDPA, kDH, kDPAH };

std::string_view model_name(Model model);
/// Case-insensitive: "pa", "pah", "patch", "dpa", "dh", "dpah".
Model parse_model(std::string_view name);
bool is_directed(Model model);

enum class EventKind : std::uint8_t { kSeed, kPahPick, kTcPick, kFallbackUniform, kDirectedPick };

std::string_view event_kind_name(EventKind kind);
EventKind parse_event_kind(std::string_view name);

struct EdgeEvent {
  NodeId source = 0;  // the arriving node (undirected) or edge source (directed)
  NodeId target = 0;
  EventKind kind = EventKind::kPahPick;

  friend bool operator==(const EdgeEvent&, const EdgeEvent&) = default;
};

/// Ordered edge events. Undirected traces start with the seed clique
/// (kind kSeed); each later event is a pick by `source` among nodes with
/// smaller ids. Replaying the events from an empty graph over `labels`
/// reproduces the generated graph.
struct GrowthTrace {
  bool directed = false;
  std::vector<ClassLabel> labels;
  std::vector<EdgeEvent> events;

  friend bool operator==(const GrowthTrace&, const GrowthTrace&) = default;
};

/// Parameters for all six models. Fields a model does not use are ignored.
struct GenParams {
  Model model = Model::kPA;
  std::uint32_t n = 0;
  std::uint32_t m = 2;     // edges per arriving node (undirected family)
  double f_m = 0.0;        // minority fraction
  MixingMatrix H;          // defaults to neutral
  double p_tc = 0.0;       // triadic-closure probability (PATCH)
  double d = 0.01;         // edge density (directed family)
  double gamma_a = 2.5;    // activity exponent (directed family)
  std::uint64_t seed = 0;
};

struct Generated {
  AttributedGraph graph;
  GrowthTrace trace;
};

/// Snapshot of one realized pick, handed to an optional observer. The
/// probabilities are the normalized distribution the sampler drew from.
struct PickView {
  std::size_t event_index = 0;
  NodeId source = 0;
  NodeId chosen = 0;
  EventKind kind = EventKind::kPahPick;
  std::span<const NodeId> candidates;
  std::span<const double> probabilities;
};

using PickObserver = std::function<void(const PickView&)>;

/// Thrown when the directed generator cannot place the requested edge count.
class SaturationError : public std::runtime_error {
 public:
  SaturationError(std::size_t placed, std::size_t target);
  std::size_t placed() const { return placed_; }
  std::size_t target() const { return target_; }

 private:
  std::size_t placed_;
  std::size_t target_;
};

/// Attachment kernel of the undirected models.
enum class UndirectedKernel { kPA, kPAH };

/// Unnormalized weights over `eligible`: deg(i) for PA,
/// H[newcomer][class_i] * deg(i) for PAH. A zero total means the caller
/// must fall back to a uniform pick.
std::vector<double> target_weights_undirected(const AttributedGraph& state,
                                              ClassLabel newcomer_class,
                                              std::span<const NodeId> eligible,
                                              const MixingMatrix& H, UndirectedKernel kernel);

/// Unnormalized target weights for a directed source: (indeg+1) for DPA,
/// H[class_s][class_t] for DH, their product for DPAH.
std::vector<double> target_weights_directed(const AttributedGraph& state, NodeId source,
                                            std::span<const NodeId> eligible,
                                            const MixingMatrix& H, Model model);

/// Inverse Pareto(x_min = 1) CDF at u in [0, 1).
double pareto_activity(double u, double gamma_a);

/// i.i.d. Pareto(x_min = 1) activities, a = (1 - u)^(-1 / (gamma_a - 1)).
std::vector<double> sample_activity(std::size_t n, double gamma_a, Rng& rng);

/// Dispatches on params.model. The observer, when set, sees every pick.
Generated generate(const GenParams& params, const PickObserver& observer = {});

/// Labels are all majority unless f_m > 0; the PA kernel ignores them.
Generated gen_pa(std::uint32_t n, std::uint32_t m, std::uint64_t seed, double f_m = 0.0);
Generated gen_pah(std::uint32_t n, std::uint32_t m, double f_m, const MixingMatrix& H,
                  std::uint64_t seed);
Generated gen_patch(std::uint32_t n, std::uint32_t m, double f_m, const MixingMatrix& H,
                    double p_tc, std::uint64_t seed);
Generated gen_directed(Model model, std::uint32_t n, double d, double f_m,
                       const MixingMatrix& H, double gamma_a, std::uint64_t seed);

/// Directed edge target: round(d * n * (n - 1)), half to even.
std::size_t directed_edge_target(std::uint32_t n, double d);

/// Rebuilds the graph from a trace; throws std::invalid_argument when an
/// event is out of range, a self-loop or a duplicate.
AttributedGraph replay_graph(const GrowthTrace& trace);

}  // namespace socnet
