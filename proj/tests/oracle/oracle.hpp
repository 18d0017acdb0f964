#pragma once

// Straightforward re-implementations used as test oracles. Everything here
// is written from the model definitions with plain containers and O(n) or
// worse loops; nothing reuses the library's replay or sampling code.

#include <cstddef>
#include <cstdint>
#include <vector>

#include "socnet/generators.hpp"
#include "socnet/graph.hpp"

namespace oracle {

struct Loglik {
  double log_l = 0.0;
  std::size_t scored = 0;
  std::size_t fallback = 0;
};

/// Full-vector replay: rebuilds the candidate set and every weight from
/// scratch for each event.
Loglik brute_loglik(const socnet::GrowthTrace& trace, socnet::Model model, double h, double p_tc);

/// Full distribution of every non-seed pick, in event order.
std::vector<std::vector<double>> brute_distributions(const socnet::GrowthTrace& trace,
                                                     socnet::Model model, double h, double p_tc);

/// Grid argmax by exhaustive evaluation, smaller parameter first on ties.
struct GridFit {
  double log_l = 0.0;
  double h = 0.0;
  double p_tc = 0.0;
};
GridFit brute_grid_fit(const socnet::GrowthTrace& trace, socnet::Model model);

/// PageRank by Gaussian elimination of (I - d M) x = (1 - d)/n 1 with
/// dangling columns spread uniformly.
std::vector<double> pagerank_dense(const socnet::AttributedGraph& g, double damping);

/// sum_ij |x_i - x_j| / (2 n^2 mean).
double gini_pairwise(const std::vector<double>& x);

/// Chi-square upper tail for df 1 and 2 in closed form.
double chi_square_sf(double x, int df);

/// Triangle-counting clustering, networkx convention.
double mean_clustering(const socnet::AttributedGraph& g);

/// Discrete power-law log-likelihood by direct summation of the zeta tail.
double power_law_loglik(const std::vector<std::uint32_t>& values, std::uint32_t k_min,
                        double alpha);

/// Edge set rebuilt by adding every event of the trace in order.
std::vector<socnet::Edge> replay_edges(const socnet::GrowthTrace& trace);

}  // namespace oracle
