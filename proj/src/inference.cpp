#include "socnet/inference.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <stdexcept>
#include <string>

#include <boost/math/special_functions/gamma.hpp>

#include "fenwick.hpp"
#include "replay.hpp"
#include "socnet/parallel.hpp"

namespace socnet {

namespace {

constexpr double kNegInf = -std::numeric_limits<double>::infinity();
constexpr double kGridStep = 0.01;

// Neumaier compensated sum; -inf is absorbing.
class LogSum {
 public:
  void add(double x) {
    if (infinite_) return;
    if (std::isinf(x) || std::isnan(x)) {
      infinite_ = true;
      return;
    }
    const double t = sum_ + x;
    if (std::abs(sum_) >= std::abs(x)) {
      compensation_ += (sum_ - t) + x;
    } else {
      compensation_ += (x - t) + sum_;
    }
    sum_ = t;
  }
  void add_log(double p) { add(p > 0.0 ? std::log(p) : kNegInf); }
  double value() const { return infinite_ ? kNegInf : sum_ + compensation_; }

 private:
  double sum_ = 0.0;
  double compensation_ = 0.0;
  bool infinite_ = false;
};

void check_family(const GrowthTrace& trace, Model model) {
  if (trace.directed != is_directed(model)) {
    throw std::invalid_argument("model '" + std::string(model_name(model)) +
                                "' does not match the " +
                                (trace.directed ? "directed" : "undirected") + " trace");
  }
}

double loglik_at(const detail::ReplayContexts& ctx, Model model, double h, double p_tc) {
  LogSum sum;
  if (ctx.directed) {
    for (const auto& pick : ctx.directed_picks) sum.add_log(detail::pick_probability(pick, model, h));
  } else {
    for (const auto& pick : ctx.undirected) sum.add_log(detail::pick_probability(pick, model, h, p_tc));
  }
  return sum.value();
}

// One h-row of the PATCH grid. The attachment term is computed once per
// pick; only picks whose target lies in a non-empty triad need the full
// mixture for every p_tc.
void patch_row(const detail::ReplayContexts& ctx, double h, std::span<double> row) {
  LogSum fixed;                // picks without a triadic option
  LogSum outside;              // target outside a non-empty triad: ln P_attach part
  std::size_t outside_count = 0;
  std::vector<std::pair<double, double>> inside;  // (1 / |triad|, P_attach)
  for (const auto& pick : ctx.undirected) {
    if (pick.flagged_fallback) {
      fixed.add_log(1.0 / pick.eligible_count);
      continue;
    }
    const double attach = detail::attachment_probability(pick, false, h);
    if (pick.first_pick || pick.triad_size == 0.0) {
      fixed.add_log(attach);
    } else if (!pick.target_in_triad) {
      outside.add_log(attach);
      ++outside_count;
    } else {
      inside.emplace_back(1.0 / pick.triad_size, attach);
    }
  }
  const double base = fixed.value() + outside.value();
  for (std::size_t j = 0; j < kGridPoints; ++j) {
    const double p = grid_value(j);
    LogSum sum;
    sum.add(base);
    if (outside_count > 0) sum.add(static_cast<double>(outside_count) * std::log1p(-p));
    for (const auto& [triad, attach] : inside) sum.add_log(p * triad + (1.0 - p) * attach);
    row[j] = sum.value();
  }
}

std::vector<double> grid_from_contexts(const detail::ReplayContexts& ctx, Model model) {
  switch (free_parameters(model)) {
    case 0: return {loglik_at(ctx, model, 0.5, 0.0)};
    case 1: {
      std::vector<double> grid(kGridPoints);
      parallel_for(kGridPoints, [&](std::size_t i) {
        grid[i] = loglik_at(ctx, model, grid_value(i), 0.0);
      });
      return grid;
    }
    default: {
      std::vector<double> grid(kGridPoints * kGridPoints);
      parallel_for(kGridPoints, [&](std::size_t i) {
        patch_row(ctx, grid_value(i), std::span<double>(grid).subspan(i * kGridPoints, kGridPoints));
      });
      return grid;
    }
  }
}

double trapezoid_weight(std::size_t i) {
  return (i == 0 || i + 1 == kGridPoints) ? 0.5 * kGridStep : kGridStep;
}

double log_evidence(const std::vector<double>& grid, int k) {
  if (k == 0) return grid.front();
  double peak = kNegInf;
  for (double v : grid) peak = std::max(peak, v);
  if (std::isinf(peak)) return kNegInf;
  double sum = 0.0;
  for (std::size_t idx = 0; idx < grid.size(); ++idx) {
    double w = 0.0;
    if (k == 1) {
      w = trapezoid_weight(idx);
    } else {
      w = trapezoid_weight(idx / kGridPoints) * trapezoid_weight(idx % kGridPoints);
    }
    if (!std::isinf(grid[idx])) sum += w * std::exp(grid[idx] - peak);
  }
  return peak + std::log(sum);
}

FitReport report_from_grid(Model model, const std::vector<double>& grid, std::size_t n_events) {
  FitReport report;
  report.model = model;
  report.k = free_parameters(model);
  report.n_events = n_events;
  std::size_t best = 0;
  double best_value = kNegInf;
  for (std::size_t idx = 0; idx < grid.size(); ++idx) {
    const double v = std::isnan(grid[idx]) ? kNegInf : grid[idx];
    if (v > best_value) {
      best_value = v;
      best = idx;
    }
  }
  report.log_l = best_value;
  if (report.k == 1) {
    report.h_hat = grid_value(best);
  } else if (report.k == 2) {
    report.h_hat = grid_value(best / kGridPoints);
    report.ptc_hat = grid_value(best % kGridPoints);
  }
  report.aic = aic(report.k, report.log_l);
  report.bic = bic(report.k, report.log_l, n_events);
  report.log_evidence = log_evidence(grid, report.k);
  return report;
}

double criterion_value(const FitReport& r, Criterion c) {
  switch (c) {
    case Criterion::kBIC: return r.bic;
    case Criterion::kAIC: return r.aic;
    case Criterion::kLogLikelihood: return -r.log_l;
  }
  return r.bic;
}

}  // namespace

MixingCounts mixing_counts(const AttributedGraph& g) {
  MixingCounts mc;
  mc.directed = g.directed();
  for (const Edge& e : g.edges()) {
    ClassLabel a = g.label(e.source);
    ClassLabel b = g.label(e.target);
    if (!g.directed() && a != b) {
      a = 0;
      b = 1;
    }
    ++mc.counts[a][b];
  }
  mc.total = g.num_edges();
  if (mc.total == 0) return mc;
  const auto same = mc.counts[0][0] + mc.counts[1][1];
  mc.h_hat = static_cast<double>(same) / static_cast<double>(mc.total);
  for (int c = 0; c < 2; ++c) {
    double own = 0.0;
    double all = 0.0;
    if (g.directed()) {
      own = static_cast<double>(mc.counts[c][c]);
      all = own + static_cast<double>(mc.counts[c][1 - c]);
    } else {
      own = 2.0 * static_cast<double>(mc.counts[c][c]);
      all = own + static_cast<double>(mc.counts[0][1]);
    }
    if (all > 0.0) mc.class_h_hat[c] = own / all;
  }
  return mc;
}

double grid_value(std::size_t i) { return static_cast<double>(i) / 100.0; }

int free_parameters(Model model) {
  switch (model) {
    case Model::kPA:
    case Model::kDPA: return 0;
    case Model::kPAH:
    case Model::kDH:
    case Model::kDPAH: return 1;
    case Model::kPATCH: return 2;
  }
  return 0;
}

double aic(int k, double log_l) { return 2.0 * k - 2.0 * log_l; }

double bic(int k, double log_l, std::size_t n_events) {
  const double penalty = k == 0 ? 0.0 : k * std::log(static_cast<double>(n_events));
  return penalty - 2.0 * log_l;
}

LogLikelihood replay_loglik(const GrowthTrace& trace, const ModelParams& params) {
  check_family(trace, params.model);
  const auto ctx = detail::build_contexts(trace);
  return {loglik_at(ctx, params.model, params.h, params.p_tc), ctx.scored_events,
          ctx.fallback_events};
}

std::vector<PickDistribution> replay_distributions(const GrowthTrace& trace,
                                                   const ModelParams& params) {
  check_family(trace, params.model);
  const auto ctx = detail::build_contexts(trace);  // validates the trace
  const std::size_t n = trace.labels.size();
  const MixingMatrix H = MixingMatrix::symmetric(params.h);
  AttributedGraph g(trace.directed, trace.labels);
  std::vector<PickDistribution> out;
  std::vector<NodeId> chosen;
  NodeId block_source = 0;
  bool in_block = false;
  for (std::size_t i = 0; i < trace.events.size(); ++i) {
    const EdgeEvent& e = trace.events[i];
    if (e.kind == EventKind::kSeed) {
      g.add_edge(e.source, e.target);
      in_block = false;
      continue;
    }
    PickDistribution dist;
    dist.event_index = i;
    if (trace.directed) {
      for (NodeId t = 0; t < n; ++t) {
        if (t != e.source && !g.has_edge(e.source, t)) dist.candidates.push_back(t);
      }
      dist.probabilities = target_weights_directed(g, e.source, dist.candidates, H, params.model);
    } else {
      if (!in_block || block_source != e.source) {
        chosen.clear();
        block_source = e.source;
        in_block = true;
      }
      for (NodeId u = 0; u < e.source; ++u) {
        if (std::find(chosen.begin(), chosen.end(), u) == chosen.end()) dist.candidates.push_back(u);
      }
      const auto kernel = params.model == Model::kPA ? UndirectedKernel::kPA : UndirectedKernel::kPAH;
      dist.probabilities =
          target_weights_undirected(g, trace.labels[e.source], dist.candidates, H, kernel);
      const double total = std::accumulate(dist.probabilities.begin(), dist.probabilities.end(), 0.0);
      const bool uniform = !(total > 0.0) || e.kind == EventKind::kFallbackUniform;
      for (double& w : dist.probabilities) {
        w = uniform ? 1.0 / static_cast<double>(dist.probabilities.size()) : w / total;
      }
      if (params.model == Model::kPATCH && !chosen.empty() && e.kind != EventKind::kFallbackUniform) {
        std::vector<char> in_triad(n, 0);
        std::size_t size = 0;
        for (NodeId c : chosen) {
          for (NodeId u : g.neighbors(c)) {
            if (u < e.source && !in_triad[u] &&
                std::find(chosen.begin(), chosen.end(), u) == chosen.end()) {
              in_triad[u] = 1;
              ++size;
            }
          }
        }
        if (size > 0) {
          for (std::size_t k = 0; k < dist.candidates.size(); ++k) {
            const double triad = in_triad[dist.candidates[k]] ? 1.0 / static_cast<double>(size) : 0.0;
            dist.probabilities[k] = params.p_tc * triad + (1.0 - params.p_tc) * dist.probabilities[k];
          }
        }
      }
      chosen.push_back(e.target);
      g.add_edge(e.source, e.target);
      out.push_back(std::move(dist));
      continue;
    }
    const double total = std::accumulate(dist.probabilities.begin(), dist.probabilities.end(), 0.0);
    for (double& w : dist.probabilities) w = total > 0.0 ? w / total : 0.0;
    g.add_edge(e.source, e.target);
    out.push_back(std::move(dist));
  }
  return out;
}

std::vector<double> loglik_grid(const GrowthTrace& trace, Model model) {
  check_family(trace, model);
  return grid_from_contexts(detail::build_contexts(trace), model);
}

FitReport fit_model(const GrowthTrace& trace, Model model) {
  check_family(trace, model);
  const auto ctx = detail::build_contexts(trace);
  if (ctx.scored_events == 0) throw std::invalid_argument("trace has no scoreable events");
  return report_from_grid(model, grid_from_contexts(ctx, model), ctx.scored_events);
}

bool is_nested(Model nested, Model full) {
  return (nested == Model::kPA && (full == Model::kPAH || full == Model::kPATCH)) ||
         (nested == Model::kPAH && full == Model::kPATCH) ||
         (nested == Model::kDPA && full == Model::kDPAH);
}

double chi_square_sf(double statistic, int df) {
  if (df < 1) throw std::invalid_argument("chi-square needs df >= 1");
  if (!(statistic > 0.0)) return 1.0;
  if (std::isinf(statistic)) return 0.0;
  return boost::math::gamma_q(0.5 * df, 0.5 * statistic);
}

LrtResult lrt(const FitReport& nested, const FitReport& full) {
  if (!is_nested(nested.model, full.model)) {
    throw std::invalid_argument("'" + std::string(model_name(nested.model)) +
                                "' is not nested in '" + std::string(model_name(full.model)) + "'");
  }
  LrtResult r;
  r.df = full.k - nested.k;
  const double diff = full.log_l - nested.log_l;
  r.statistic = std::isnan(diff) ? 0.0 : std::max(0.0, 2.0 * diff);
  r.p_value = chi_square_sf(r.statistic, r.df);
  return r;
}

double log10_bayes_factor(const FitReport& a, const FitReport& b) {
  if (a.log_evidence == b.log_evidence) return 0.0;
  return (a.log_evidence - b.log_evidence) / std::log(10.0);
}

double bayes_factor(const GrowthTrace& trace, Model model_a, Model model_b) {
  return log10_bayes_factor(fit_model(trace, model_a), fit_model(trace, model_b));
}

SelectionTable select_model(const GrowthTrace& trace, std::span<const Model> candidates,
                            Criterion criterion, bool sort) {
  if (candidates.empty()) throw std::invalid_argument("no candidate models");
  for (Model m : candidates) {
    if (is_directed(m) != is_directed(candidates.front())) {
      throw std::invalid_argument("candidate models mix directed and undirected families");
    }
    check_family(trace, m);
  }
  const auto ctx = detail::build_contexts(trace);
  if (ctx.scored_events == 0) throw std::invalid_argument("trace has no scoreable events");

  std::vector<FitReport> fits;
  for (Model m : candidates) {
    fits.push_back(report_from_grid(m, grid_from_contexts(ctx, m), ctx.scored_events));
  }

  SelectionTable table;
  table.criterion = criterion;
  for (std::size_t i = 0; i < fits.size(); ++i) {
    for (std::size_t j = i + 1; j < fits.size(); ++j) {
      Comparison c;
      c.model_a = fits[i].model;
      c.model_b = fits[j].model;
      if (is_nested(fits[i].model, fits[j].model)) {
        c.lrt = lrt(fits[i], fits[j]);
      } else if (is_nested(fits[j].model, fits[i].model)) {
        c.lrt = lrt(fits[j], fits[i]);
      }
      c.log10_bf = log10_bayes_factor(fits[i], fits[j]);
      table.comparisons.push_back(c);
    }
  }
  table.reports = std::move(fits);
  if (sort) {
    std::stable_sort(table.reports.begin(), table.reports.end(),
                     [criterion](const FitReport& a, const FitReport& b) {
                       return criterion_value(a, criterion) < criterion_value(b, criterion);
                     });
  }
  return table;
}

GrowthTrace order_assumed_trace(const AttributedGraph& g, std::uint64_t seed) {
  GrowthTrace trace;
  trace.directed = g.directed();
  trace.labels.assign(g.labels().begin(), g.labels().end());
  if (g.directed()) {
    std::vector<Edge> edges = g.sorted_edges();
    Rng rng(seed);
    for (std::size_t i = edges.size(); i > 1; --i) std::swap(edges[i - 1], edges[rng.below(i)]);
    for (const Edge& e : edges) trace.events.push_back({e.source, e.target, EventKind::kDirectedPick});
    return trace;
  }
  const std::size_t n = g.num_nodes();
  std::vector<std::uint64_t> degree(n, 0);
  std::uint64_t lower_degree_sum = 0;  // sum of degrees of nodes < v
  std::vector<NodeId> lower;
  for (NodeId v = 0; v < n; ++v) {
    lower.clear();
    for (NodeId u : g.neighbors(v)) {
      if (u < v) lower.push_back(u);
    }
    std::sort(lower.begin(), lower.end());
    std::uint64_t chosen_degree = 0;
    for (NodeId u : lower) {
      const bool fallback = lower_degree_sum == chosen_degree;
      trace.events.push_back({v, u, fallback ? EventKind::kFallbackUniform : EventKind::kPahPick});
      chosen_degree += degree[u];
    }
    for (NodeId u : lower) ++degree[u];
    degree[v] += lower.size();
    lower_degree_sum += 2 * lower.size();
  }
  return trace;
}

}  // namespace socnet
