#include "oracle/oracle.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <set>
#include <stdexcept>
#include <utility>

namespace oracle {

using socnet::EventKind;
using socnet::GrowthTrace;
using socnet::Model;
using socnet::NodeId;

namespace {

double affinity(int a, int b, double h) { return a == b ? h : 1.0 - h; }

struct State {
  std::vector<std::set<NodeId>> out;
  std::vector<std::set<NodeId>> in;
  std::set<std::pair<NodeId, NodeId>> edges;
};

// Calls visit(event_index, candidates, probabilities) for every non-seed pick.
template <typename Visit>
void walk(const GrowthTrace& trace, Model model, double h, double p_tc, Visit visit) {
  const std::size_t n = trace.labels.size();
  State st;
  st.out.resize(n);
  st.in.resize(n);
  std::vector<NodeId> chosen;
  NodeId current = 0;
  bool open = false;

  auto add = [&](NodeId a, NodeId b) {
    if (trace.directed) {
      st.out[a].insert(b);
      st.in[b].insert(a);
      st.edges.insert({a, b});
    } else {
      st.out[a].insert(b);
      st.out[b].insert(a);
      st.edges.insert({std::min(a, b), std::max(a, b)});
    }
  };

  for (std::size_t i = 0; i < trace.events.size(); ++i) {
    const auto& e = trace.events[i];
    if (e.kind == EventKind::kSeed) {
      add(e.source, e.target);
      open = false;
      continue;
    }
    std::vector<NodeId> cand;
    std::vector<double> prob;
    if (trace.directed) {
      const int cs = trace.labels[e.source];
      double total = 0.0;
      for (NodeId t = 0; t < n; ++t) {
        if (t == e.source || st.edges.count({e.source, t})) continue;
        const int ct = trace.labels[t];
        const double base = static_cast<double>(st.in[t].size()) + 1.0;
        double w = 0.0;
        if (model == Model::kDPA) w = base;
        if (model == Model::kDH) w = affinity(cs, ct, h);
        if (model == Model::kDPAH) w = affinity(cs, ct, h) * base;
        cand.push_back(t);
        prob.push_back(w);
        total += w;
      }
      for (double& p : prob) p = total > 0.0 ? p / total : 0.0;
    } else {
      const NodeId v = e.source;
      if (!open || current != v) {
        chosen.clear();
        current = v;
        open = true;
      }
      const int cv = trace.labels[v];
      double total = 0.0;
      for (NodeId u = 0; u < v; ++u) {
        if (std::find(chosen.begin(), chosen.end(), u) != chosen.end()) continue;
        const double deg = static_cast<double>(st.out[u].size());
        const double w = model == Model::kPA ? deg : affinity(cv, trace.labels[u], h) * deg;
        cand.push_back(u);
        prob.push_back(w);
        total += w;
      }
      const bool uniform = e.kind == EventKind::kFallbackUniform || total == 0.0;
      for (double& p : prob) p = uniform ? 1.0 / static_cast<double>(prob.size()) : p / total;
      if (model == Model::kPATCH && !chosen.empty() && e.kind != EventKind::kFallbackUniform) {
        std::set<NodeId> triad;
        for (NodeId c : chosen) {
          for (NodeId u : st.out[c]) {
            if (u != v && std::find(chosen.begin(), chosen.end(), u) == chosen.end()) {
              triad.insert(u);
            }
          }
        }
        if (!triad.empty()) {
          for (std::size_t k = 0; k < cand.size(); ++k) {
            const double tc = triad.count(cand[k]) ? 1.0 / static_cast<double>(triad.size()) : 0.0;
            prob[k] = p_tc * tc + (1.0 - p_tc) * prob[k];
          }
        }
      }
      chosen.push_back(e.target);
    }
    visit(i, cand, prob);
    add(e.source, e.target);
  }
}

}  // namespace

Loglik brute_loglik(const GrowthTrace& trace, Model model, double h, double p_tc) {
  Loglik out;
  long double sum = 0.0L;
  bool impossible = false;
  walk(trace, model, h, p_tc,
       [&](std::size_t i, const std::vector<NodeId>& cand, const std::vector<double>& prob) {
         const auto& e = trace.events[i];
         if (e.kind == EventKind::kFallbackUniform) {
           ++out.fallback;
         } else {
           ++out.scored;
         }
         const auto it = std::find(cand.begin(), cand.end(), e.target);
         if (it == cand.end()) throw std::logic_error("target not eligible");
         const double p = prob[static_cast<std::size_t>(it - cand.begin())];
         if (p <= 0.0) {
           impossible = true;
         } else {
           sum += std::log(static_cast<long double>(p));
         }
       });
  out.log_l = impossible ? -std::numeric_limits<double>::infinity() : static_cast<double>(sum);
  return out;
}

std::vector<std::vector<double>> brute_distributions(const GrowthTrace& trace, Model model,
                                                     double h, double p_tc) {
  std::vector<std::vector<double>> out;
  walk(trace, model, h, p_tc,
       [&](std::size_t, const std::vector<NodeId>&, const std::vector<double>& prob) {
         out.push_back(prob);
       });
  return out;
}

GridFit brute_grid_fit(const GrowthTrace& trace, Model model) {
  GridFit best{-std::numeric_limits<double>::infinity(), 0.0, 0.0};
  const bool has_h = model != Model::kPA && model != Model::kDPA;
  const bool has_tc = model == Model::kPATCH;
  for (int i = 0; i <= (has_h ? 100 : 0); ++i) {
    for (int j = 0; j <= (has_tc ? 100 : 0); ++j) {
      const double h = has_h ? i / 100.0 : 0.5;
      const double p = has_tc ? j / 100.0 : 0.0;
      const double ll = brute_loglik(trace, model, h, p).log_l;
      if (ll > best.log_l) best = {ll, has_h ? h : 0.0, p};
    }
  }
  return best;
}

std::vector<double> pagerank_dense(const socnet::AttributedGraph& g, double damping) {
  const std::size_t n = g.num_nodes();
  // a[row][col] of (I - d M), augmented with the right-hand side.
  std::vector<std::vector<double>> a(n, std::vector<double>(n + 1, 0.0));
  for (std::size_t r = 0; r < n; ++r) {
    a[r][r] = 1.0;
    a[r][n] = (1.0 - damping) / static_cast<double>(n);
  }
  for (NodeId src = 0; src < n; ++src) {
    std::vector<NodeId> outs;
    for (const auto& e : g.edges()) {
      if (e.source == src) outs.push_back(e.target);
      if (!g.directed() && e.target == src) outs.push_back(e.source);
    }
    if (outs.empty()) {
      for (std::size_t r = 0; r < n; ++r) a[r][src] -= damping / static_cast<double>(n);
    } else {
      for (NodeId t : outs) a[t][src] -= damping / static_cast<double>(outs.size());
    }
  }
  for (std::size_t c = 0; c < n; ++c) {
    std::size_t pivot = c;
    for (std::size_t r = c + 1; r < n; ++r) {
      if (std::abs(a[r][c]) > std::abs(a[pivot][c])) pivot = r;
    }
    std::swap(a[c], a[pivot]);
    for (std::size_t r = 0; r < n; ++r) {
      if (r == c) continue;
      const double f = a[r][c] / a[c][c];
      for (std::size_t k = c; k <= n; ++k) a[r][k] -= f * a[c][k];
    }
  }
  std::vector<double> x(n);
  for (std::size_t r = 0; r < n; ++r) x[r] = a[r][n] / a[r][r];
  return x;
}

double gini_pairwise(const std::vector<double>& x) {
  double diff = 0.0;
  double sum = 0.0;
  for (double a : x) {
    sum += a;
    for (double b : x) diff += std::abs(a - b);
  }
  const double n = static_cast<double>(x.size());
  return diff / (2.0 * n * n * (sum / n));
}

double chi_square_sf(double x, int df) {
  if (df == 1) return std::erfc(std::sqrt(x / 2.0));
  if (df == 2) return std::exp(-x / 2.0);
  throw std::invalid_argument("oracle covers df 1 and 2 only");
}

double mean_clustering(const socnet::AttributedGraph& g) {
  const std::size_t n = g.num_nodes();
  double total = 0.0;
  for (NodeId v = 0; v < n; ++v) {
    std::vector<NodeId> nb;
    for (NodeId u = 0; u < n; ++u) {
      if (g.has_edge(v, u)) nb.push_back(u);
    }
    if (nb.size() < 2) continue;
    double links = 0.0;
    for (std::size_t i = 0; i < nb.size(); ++i) {
      for (std::size_t j = i + 1; j < nb.size(); ++j) {
        if (g.has_edge(nb[i], nb[j])) links += 1.0;
      }
    }
    const double k = static_cast<double>(nb.size());
    total += 2.0 * links / (k * (k - 1.0));
  }
  return total / static_cast<double>(n);
}

double power_law_loglik(const std::vector<std::uint32_t>& values, std::uint32_t k_min,
                        double alpha) {
  constexpr double kCut = 2e6;
  long double zeta = 0.0L;
  for (double k = kCut; k >= k_min; k -= 1.0) zeta += std::pow(static_cast<long double>(k), -alpha);
  // Euler-Maclaurin remainder beyond the cut.
  zeta += std::pow(kCut, 1.0 - alpha) / (alpha - 1.0) - 0.5 * std::pow(kCut, -alpha);
  double log_sum = 0.0;
  double count = 0.0;
  for (auto v : values) {
    if (v < k_min) continue;
    log_sum += std::log(static_cast<double>(v));
    count += 1.0;
  }
  return -alpha * log_sum - count * std::log(static_cast<double>(zeta));
}

std::vector<socnet::Edge> replay_edges(const GrowthTrace& trace) {
  std::set<std::pair<NodeId, NodeId>> edges;
  for (const auto& e : trace.events) {
    NodeId a = e.source;
    NodeId b = e.target;
    if (!trace.directed && a > b) std::swap(a, b);
    if (a == b || !edges.insert({a, b}).second) throw std::logic_error("trace repeats an edge");
  }
  std::vector<socnet::Edge> out;
  for (const auto& [a, b] : edges) out.push_back({a, b});
  return out;
}

}  // namespace oracle
