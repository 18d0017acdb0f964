#pragma once

#include <array>
#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <vector>

#include "socnet/generators.hpp"
#include "socnet/graph.hpp"

namespace socnet {

/// Edge counts by (source class, target class). Undirected graphs keep
/// unordered counts: same-class edges in counts[0][0] and counts[1][1],
/// cross-class edges in counts[0][1], counts[1][0] = 0.
struct MixingCounts {
  bool directed = false;
  std::array<std::array<std::uint64_t, 2>, 2> counts{};
  std::uint64_t total = 0;
  /// Same-class edges / all edges; missing on an edgeless graph.
  std::optional<double> h_hat;
  /// Per-class descriptive homophily: share of a class's edge endpoints
  /// (out-edges when directed) that land on the same class.
  std::array<std::optional<double>, 2> class_h_hat;
};

MixingCounts mixing_counts(const AttributedGraph& g);

/// Candidate parameters for scoring a trace. `h` is the symmetric
/// homophily, `p_tc` the triadic-closure probability; unused ones are ignored.
struct ModelParams {
  Model model = Model::kPA;
  double h = 0.5;
  double p_tc = 0.0;
};

struct LogLikelihood {
  double log_l = 0.0;           // natural log, <= 0, -inf for an impossible event
  std::size_t n_events = 0;     // scored picks (not flagged fallback-uniform)
  std::size_t n_fallback = 0;   // picks flagged fallback-uniform
};

/// Replays the trace and accumulates ln p(event) under `params`. Picks
/// flagged fallback-uniform, and picks whose candidate weights sum to zero,
/// contribute ln(1 / |eligible|). PATCH
/// marginalizes over the attachment / triadic branch.
/// Throws std::invalid_argument when the model family does not match the trace.
LogLikelihood replay_loglik(const GrowthTrace& trace, const ModelParams& params);

/// Full normalized distribution over eligible targets for every pick of the
/// trace under `params`, in event order (seed events skipped). O(n) per pick;
/// meant for instrumentation and checks, not fitting.
struct PickDistribution {
  std::size_t event_index = 0;
  std::vector<NodeId> candidates;
  std::vector<double> probabilities;
};
std::vector<PickDistribution> replay_distributions(const GrowthTrace& trace,
                                                   const ModelParams& params);

struct FitReport {
  Model model = Model::kPA;
  std::optional<double> h_hat;
  std::optional<double> ptc_hat;
  double log_l = 0.0;
  int k = 0;
  std::size_t n_events = 0;
  double aic = 0.0;
  double bic = 0.0;
  /// ln of the grid-integrated marginal likelihood (uniform priors).
  double log_evidence = 0.0;
};

/// Number of free parameters: PA, DPA 0; PAH, DH, DPAH 1; PATCH 2.
int free_parameters(Model model);

/// AIC = 2k - 2 logL.
double aic(int k, double log_l);
/// BIC = k ln(n_events) - 2 logL.
double bic(int k, double log_l, std::size_t n_events);

/// Grid maximum likelihood: h in {0, 0.01, ..., 1}; PATCH over the 101 x 101
/// (h, p_tc) grid. Ties go to the smaller parameter value (h first).
FitReport fit_model(const GrowthTrace& trace, Model model);

/// Raw log-likelihood grid behind fit_model: 1 value for k = 0, 101 values
/// indexed by h for k = 1, 101 x 101 row-major (h, p_tc) for PATCH.
std::vector<double> loglik_grid(const GrowthTrace& trace, Model model);

/// Grid value i/100 for i in [0, 100].
double grid_value(std::size_t i);
inline constexpr std::size_t kGridPoints = 101;

struct LrtResult {
  double statistic = 0.0;
  int df = 0;
  double p_value = 1.0;
};

/// True for PA < PAH, PAH < PATCH, PA < PATCH and DPA < DPAH.
bool is_nested(Model nested, Model full);

/// Lambda = max(0, 2 (logL_full - logL_nested)), chi-square upper tail with
/// df = k_full - k_nested. Throws std::invalid_argument for non-nested pairs.
LrtResult lrt(const FitReport& nested, const FitReport& full);

/// Chi-square survival function via the regularized upper incomplete gamma.
double chi_square_sf(double statistic, int df);

/// log10(Z_a / Z_b) with Z the trapezoid-integrated likelihood over the fit grid.
double bayes_factor(const GrowthTrace& trace, Model model_a, Model model_b);
double log10_bayes_factor(const FitReport& a, const FitReport& b);

enum class Criterion { kBIC, kAIC, kLogLikelihood };

struct Comparison {
  Model model_a = Model::kPA;
  Model model_b = Model::kPA;
  std::optional<LrtResult> lrt;  // nested pairs only, oriented nested -> full
  double log10_bf = 0.0;         // log10(Z_a / Z_b)
};

struct SelectionTable {
  Criterion criterion = Criterion::kBIC;
  std::vector<FitReport> reports;       // best first
  std::vector<Comparison> comparisons;  // every pair, candidate order
};

/// Fits each candidate, compares every pair and sorts by the criterion
/// (ascending BIC/AIC, descending logL; ties keep candidate order).
SelectionTable select_model(const GrowthTrace& trace, std::span<const Model> candidates,
                            Criterion criterion = Criterion::kBIC, bool sort = true);

/// Trace for a network without arrival order. Undirected: nodes arrive in id
/// order and pick their lower-id neighbors in ascending order (a pick whose
/// eligible nodes all have degree 0 is flagged fallback-uniform). Directed:
/// edges in a uniformly shuffled order drawn from `seed`.
GrowthTrace order_assumed_trace(const AttributedGraph& g, std::uint64_t seed);

}  // namespace socnet
