#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <string_view>
#include <vector>

#include "socnet/graph.hpp"
#include "socnet/rng.hpp"

namespace socnet {

inline constexpr std::int64_t kNever = -1;

/// Share of all nodes that must be informed for the efficiency time.
inline constexpr double kEfficiencyThreshold = 0.5;

enum class Contagion { kIndependentCascade, kThreshold };

/// One spreading run. Series entry t holds informed fractions after step t,
/// for t = 0 (seeds only) up to the last step.
struct CascadeTrace {
  Contagion process = Contagion::kIndependentCascade;
  std::vector<std::int64_t> activation_time;  // kNever when never reached
  std::vector<NodeId> seeds;
  double p_in = 0.0;
  double p_out = 0.0;
  double theta = 0.0;
  std::vector<double> frac_class0;
  std::vector<double> frac_class1;
  std::vector<double> frac_all;

  std::size_t steps() const { return frac_all.size(); }
};

/// Discrete-time independent cascade. A node activated at t makes one
/// attempt at t + 1 on each inactive neighbor (out-neighbor when directed),
/// succeeding w.p. p_in within its class and p_out across classes. Attempts
/// run over newly active nodes in ascending id, neighbors in ascending id,
/// one uniform draw per attempt. max_steps = 0 means 10 n.
CascadeTrace cascade(const AttributedGraph& g, std::span<const NodeId> seeds, double p_in,
                     double p_out, Rng& rng, std::size_t max_steps = 0);

/// Synchronous threshold model: an inactive node with at least one
/// (in-)neighbor activates at t + 1 iff the active share of its
/// (in-)neighbors at t is >= theta. Deterministic; stops at a fixed point.
CascadeTrace threshold_cascade(const AttributedGraph& g, std::span<const NodeId> seeds,
                               double theta, std::size_t max_steps = 0);

struct EqualityReport {
  /// e(t) = min over non-empty classes / max over non-empty classes of the
  /// informed fraction; 1 when the maximum is 0 or only one class exists.
  std::vector<double> equality;
  std::optional<std::size_t> efficiency;  // first t with frac_all >= 0.5
  double terminal_class0 = 0.0;
  double terminal_class1 = 0.0;
};

EqualityReport equality_report(const CascadeTrace& trace, std::span<const ClassLabel> labels);

enum class SeedingCondition { kUniform, kMajorityOnly, kMinorityOnly, kTopDegree };

std::string_view seeding_name(SeedingCondition c);
SeedingCondition parse_seeding(std::string_view name);

/// `count` distinct seeds, ascending. Uniform conditions sample without
/// replacement from their pool; top-degree follows the ranking tie rule.
std::vector<NodeId> seeding(const AttributedGraph& g, SeedingCondition condition,
                            std::size_t count, Rng& rng);

/// First t where frac >= level in `series`, if any.
std::optional<std::size_t> first_reaching(std::span<const double> series, double level);

}  // namespace socnet
