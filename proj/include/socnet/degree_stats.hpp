#pragma once

#include <cstdint>
#include <span>

#include "socnet/graph.hpp"

namespace socnet {

/// Hurwitz zeta function sum_{k>=0} (k + q)^-s for s > 1, q > 0.
double hurwitz_zeta(double s, double q);

/// Discrete power-law maximum-likelihood exponent for the values >= k_min:
/// maximizes -alpha * sum(ln k) - n_tail * ln zeta(alpha, k_min) over
/// alpha in (1, 10]. Throws std::invalid_argument with no tail values.
double power_law_exponent(std::span<const std::uint32_t> values, std::uint32_t k_min);

/// Mean local clustering coefficient over all nodes of an undirected graph
/// (nodes with degree < 2 contribute 0).
double mean_clustering(const AttributedGraph& g);

}  // namespace socnet
