#include "socnet/cli.hpp"

#include <CLI11.hpp>

#include <algorithm>
#include <cmath>
#include <filesystem>
#include <functional>
#include <map>
#include <memory>
#include <optional>
#include <set>

#include "socnet/config.hpp"
#include "socnet/degree_stats.hpp"
#include "socnet/generators.hpp"
#include "socnet/inference.hpp"
#include "socnet/io.hpp"
#include "socnet/parallel.hpp"
#include "socnet/ranking.hpp"
#include "socnet/sampling.hpp"
#include "socnet/spreading.hpp"

namespace socnet::cli {

namespace fs = std::filesystem;

namespace {

struct Flag {
  std::string key;
  std::string help;
  bool boolean = false;
};

struct Command {
  std::string name;
  std::string description;
  std::vector<Flag> flags;
  std::function<void(RunConfig&, std::ostream&)> action;
};

std::string na(const std::optional<double>& v) { return v ? io::format_double(*v) : "NA"; }

std::vector<std::string> list(const std::string& text) {
  std::vector<std::string> out;
  for (auto& item : io::split(text, ',')) {
    if (!item.empty()) out.push_back(item);
  }
  return out;
}

void write_resolved(const RunConfig& cfg) {
  io::write_text(fs::path(cfg.get("out")) / "config.txt", cfg.to_text());
}

AttributedGraph load_network(const RunConfig& cfg) {
  return io::read_network(cfg.get("network"), cfg.get_bool("directed"));
}

// ---------------------------------------------------------------- generate

const std::vector<Flag> kGeneratorFlags = {
    {"model", "pa, pah, patch, dpa, dh or dpah"},
    {"n", "number of nodes"},
    {"m", "edges per arriving node (undirected models)"},
    {"fm", "minority fraction in [0, 0.5]"},
    {"h", "symmetric homophily"},
    {"h00", "mixing entry majority -> majority"},
    {"h01", "mixing entry majority -> minority"},
    {"h10", "mixing entry minority -> majority"},
    {"h11", "mixing entry minority -> minority"},
    {"ptc", "triadic-closure probability (patch)"},
    {"d", "edge density (directed models)"},
    {"gamma", "activity exponent (directed models)"},
};

void generator_defaults(RunConfig& cfg) {
  cfg.set_default("model", "pa");
  cfg.set_default("n", "1000");
  cfg.set_default("m", "2");
  const Model model = parse_model(cfg.get("model"));
  cfg.set_default("fm", model == Model::kPA ? "0" : "0.2");
  cfg.set_default("h", "0.5");
  const double h = cfg.get_double("h");
  cfg.set_default("h00", io::format_double(h));
  cfg.set_default("h01", io::format_double(1.0 - h));
  cfg.set_default("h10", io::format_double(1.0 - h));
  cfg.set_default("h11", io::format_double(h));
  cfg.set_default("ptc", "0");
  cfg.set_default("d", "0.01");
  cfg.set_default("gamma", "2.5");
  cfg.set_default("seed", "0");
}

GenParams generator_params(const RunConfig& cfg) {
  GenParams p;
  p.model = parse_model(cfg.get("model"));
  const auto n = cfg.get_uint("n");
  const auto m = cfg.get_uint("m");
  if (n > 0xFFFFFFF0ULL || m > 0xFFFFFFF0ULL) throw ConfigError("n or m too large");
  p.n = static_cast<std::uint32_t>(n);
  p.m = static_cast<std::uint32_t>(m);
  p.f_m = cfg.get_double("fm");
  try {
    p.H = MixingMatrix(cfg.get_double("h00"), cfg.get_double("h01"), cfg.get_double("h10"),
                       cfg.get_double("h11"));
  } catch (const std::invalid_argument& e) {
    throw ConfigError(e.what());
  }
  p.p_tc = cfg.get_double("ptc");
  p.d = cfg.get_double("d");
  p.gamma_a = cfg.get_double("gamma");
  p.seed = cfg.get_uint("seed");
  return p;
}

void cmd_generate(RunConfig& cfg, std::ostream& out) {
  generator_defaults(cfg);
  cfg.set_default("out", "out");
  const GenParams p = generator_params(cfg);
  const Generated result = generate(p);
  const fs::path dir = cfg.get("out");
  io::write_network(result.graph, dir / "network");
  io::write_trace(result.trace, dir / "trace.csv");
  write_resolved(cfg);
  out << "generated " << model_name(p.model) << ": " << result.graph.num_nodes() << " nodes, "
      << result.graph.num_edges() << " edges -> " << dir.string() << "\n";
}

// ---------------------------------------------------------------- fit / select

Criterion parse_criterion(const std::string& s) {
  if (s == "bic") return Criterion::kBIC;
  if (s == "aic") return Criterion::kAIC;
  if (s == "logl") return Criterion::kLogLikelihood;
  throw ConfigError("criterion must be bic, aic or logl");
}

void cmd_fit(RunConfig& cfg, std::ostream& out, bool sort) {
  cfg.set_default("directed", "false");
  cfg.set_default("trace", "");
  cfg.set_default("models", cfg.get_bool("directed") ? "dpa,dh,dpah" : "pa,pah,patch");
  cfg.set_default("criterion", "bic");
  cfg.set_default("order-seed", "0");
  cfg.set_default("out", "out");
  const Criterion criterion = parse_criterion(cfg.get("criterion"));
  std::vector<Model> models;
  for (const auto& name : list(cfg.get("models"))) models.push_back(parse_model(name));

  const AttributedGraph g = load_network(cfg);
  const bool order_assumed = cfg.get("trace").empty();
  const GrowthTrace trace = order_assumed ? order_assumed_trace(g, cfg.get_uint("order-seed"))
                                          : io::read_trace(cfg.get("trace"), g);
  if (!order_assumed && replay_graph(trace) != g) {
    throw io::IoError("trace " + cfg.get("trace") + " does not reproduce the network");
  }
  const SelectionTable table = select_model(trace, models, criterion, sort);

  std::string sel = "model,h_hat,ptc_hat,logL,k,n_events,AIC,BIC";
  sel += order_assumed ? ",order_assumed\n" : "\n";
  for (const FitReport& r : table.reports) {
    sel += std::string(model_name(r.model)) + "," + na(r.h_hat) + "," + na(r.ptc_hat) + "," +
           io::format_double(r.log_l) + "," + std::to_string(r.k) + "," +
           std::to_string(r.n_events) + "," + io::format_double(r.aic) + "," +
           io::format_double(r.bic);
    sel += order_assumed ? ",true\n" : "\n";
  }
  std::string cmp = "model_a,model_b,lrt_statistic,lrt_df,lrt_p_value,log10_bf\n";
  for (const Comparison& c : table.comparisons) {
    cmp += std::string(model_name(c.model_a)) + "," + std::string(model_name(c.model_b)) + ",";
    if (c.lrt) {
      cmp += io::format_double(c.lrt->statistic) + "," + std::to_string(c.lrt->df) + "," +
             io::format_double(c.lrt->p_value);
    } else {
      cmp += "NA,NA,NA";
    }
    cmp += "," + io::format_double(c.log10_bf) + "\n";
  }
  const fs::path dir = cfg.get("out");
  io::write_text(dir / "selection.csv", sel);
  io::write_text(dir / "comparisons.csv", cmp);
  write_resolved(cfg);
  out << (sort ? "best model: " : "fitted ") << model_name(table.reports.front().model)
      << (sort ? "" : " ...") << "\n";
}

// ---------------------------------------------------------------- rank

void cmd_rank(RunConfig& cfg, std::ostream& out) {
  cfg.set_default("directed", "false");
  cfg.set_default("metric", "degree");
  cfg.set_default("out", "out");
  const RankMetric metric = parse_metric(cfg.get("metric"));
  const AttributedGraph g = load_network(cfg);
  const RankReport report = rank_report(g, metric);

  std::string curve = "k_percent,minority_fraction\n";
  for (const auto& p : report.curve.points) {
    curve += std::to_string(p.k_percent) + "," + io::format_double(p.minority_fraction) + "\n";
  }
  std::string summary = "metric,f_m,gini,inequity_me,pagerank_converged\n";
  summary += std::string(metric_name(metric)) + "," + io::format_double(report.curve.f_m) + "," +
             io::format_double(report.gini) + "," + io::format_double(report.inequity) + "," +
             (report.pagerank_converged ? "true" : "false") + "\n";
  const fs::path dir = cfg.get("out");
  io::write_text(dir / "visibility.csv", curve);
  io::write_text(dir / "rank_summary.csv", summary);
  write_resolved(cfg);
  out << "gini " << io::format_double(report.gini) << ", inequity "
      << io::format_double(report.inequity) << "\n";
}

// ---------------------------------------------------------------- sample

std::vector<std::size_t> parse_budgets(const std::string& text, std::size_t n) {
  std::vector<std::size_t> budgets;
  for (const auto& item : list(text)) {
    if (item.find('.') != std::string::npos) {
      const double f = parse_range(item).front();
      if (!(f > 0.0 && f <= 1.0)) throw ConfigError("fractional budget must lie in (0, 1]");
      budgets.push_back(std::max<std::size_t>(1, static_cast<std::size_t>(std::nearbyint(f * n))));
    } else {
      RunConfig tmp({"b"});
      tmp.set("b", item);
      budgets.push_back(tmp.get_uint("b"));
    }
  }
  if (budgets.empty()) throw ConfigError("no budgets given");
  return budgets;
}

void cmd_sample(RunConfig& cfg, std::ostream& out) {
  cfg.set_default("directed", "false");
  cfg.set_default("strategies", "uniform-node,uniform-edge,snowball,random-walk,top-degree");
  cfg.set_default("budgets", "0.1");
  cfg.set_default("reps", "100");
  cfg.set_default("seed", "0");
  cfg.set_default("threads", "0");
  cfg.set_default("out", "out");
  std::vector<SamplingStrategy> strategies;
  for (const auto& s : list(cfg.get("strategies"))) strategies.push_back(parse_strategy(s));
  const AttributedGraph g = load_network(cfg);
  const auto budgets = parse_budgets(cfg.get("budgets"), g.num_nodes());
  const BiasReport report =
      benchmark(g, strategies, budgets, cfg.get_uint("reps"), cfg.get_uint("seed"),
                static_cast<unsigned>(cfg.get_uint("threads")));

  std::string records = "strategy,budget,rep,minority_fraction,mean_degree\n";
  for (const auto& r : report.records) {
    records += std::string(strategy_name(r.strategy)) + "," + std::to_string(r.budget) + "," +
               std::to_string(r.rep) + "," + io::format_double(r.minority_fraction) + "," +
               io::format_double(r.mean_degree) + "\n";
  }
  std::string summary =
      "strategy,budget,reps,population_minority_fraction,population_mean_degree,"
      "minority_bias_mean,minority_bias_sd,minority_abs_bias_mean,degree_bias_mean,"
      "degree_bias_sd\n";
  for (const auto& s : report.summary) {
    summary += std::string(strategy_name(s.strategy)) + "," + std::to_string(s.budget) + "," +
               std::to_string(s.reps) + "," +
               io::format_double(report.population_minority_fraction) + "," +
               io::format_double(report.population_mean_degree) + "," +
               io::format_double(s.minority_bias_mean) + "," +
               io::format_double(s.minority_bias_sd) + "," +
               io::format_double(s.minority_abs_bias_mean) + "," +
               io::format_double(s.degree_bias_mean) + "," + io::format_double(s.degree_bias_sd) +
               "\n";
  }
  const fs::path dir = cfg.get("out");
  io::write_text(dir / "bias_records.csv", records);
  io::write_text(dir / "bias_summary.csv", summary);
  write_resolved(cfg);
  out << report.summary.size() << " sampling cells written to " << dir.string() << "\n";
}

// ---------------------------------------------------------------- spread

void cmd_spread(RunConfig& cfg, std::ostream& out) {
  cfg.set_default("directed", "false");
  cfg.set_default("process", "ic");
  cfg.set_default("pin", "0.1");
  cfg.set_default("pout", "0.1");
  cfg.set_default("theta", "0.5");
  cfg.set_default("seeding", "uniform");
  cfg.set_default("count", "5");
  cfg.set_default("seed", "0");
  cfg.set_default("max-steps", "0");
  cfg.set_default("out", "out");
  const std::string process = cfg.get("process");
  if (process != "ic" && process != "threshold") throw ConfigError("process must be ic or threshold");
  const SeedingCondition condition = parse_seeding(cfg.get("seeding"));
  const AttributedGraph g = load_network(cfg);
  const std::uint64_t seed = cfg.get_uint("seed");
  Rng seed_rng(derive_seed(seed, 0));
  const auto seeds = seeding(g, condition, cfg.get_uint("count"), seed_rng);
  const auto max_steps = cfg.get_uint("max-steps");
  CascadeTrace trace;
  if (process == "ic") {
    Rng rng(derive_seed(seed, 1));
    trace = cascade(g, seeds, cfg.get_double("pin"), cfg.get_double("pout"), rng, max_steps);
  } else {
    trace = threshold_cascade(g, seeds, cfg.get_double("theta"), max_steps);
  }
  const EqualityReport report = equality_report(trace, g.labels());

  std::string series = "t,frac_class0,frac_class1,frac_all\n";
  std::string equality = "t,equality\n";
  for (std::size_t t = 0; t < trace.steps(); ++t) {
    series += std::to_string(t) + "," + io::format_double(trace.frac_class0[t]) + "," +
              io::format_double(trace.frac_class1[t]) + "," + io::format_double(trace.frac_all[t]) +
              "\n";
    equality += std::to_string(t) + "," + io::format_double(report.equality[t]) + "\n";
  }
  std::string summary = "efficiency,terminal_class0,terminal_class1,final_equality\n";
  summary += (report.efficiency ? std::to_string(*report.efficiency) : std::string("never")) + "," +
             io::format_double(report.terminal_class0) + "," +
             io::format_double(report.terminal_class1) + "," +
             io::format_double(report.equality.back()) + "\n";
  const fs::path dir = cfg.get("out");
  io::write_text(dir / "series.csv", series);
  io::write_text(dir / "equality.csv", equality);
  io::write_text(dir / "equality_summary.csv", summary);
  write_resolved(cfg);
  out << "cascade ran " << trace.steps() - 1 << " steps, informed "
      << io::format_double(trace.frac_all.back()) << "\n";
}

// ---------------------------------------------------------------- sweep

const std::vector<std::string> kSweepable = {"d", "fm", "gamma", "h", "m", "n", "ptc"};

struct SweepRow {
  std::string metric;
  std::string value;
};

std::vector<SweepRow> sweep_metrics(const GenParams& p) {
  std::vector<SweepRow> rows;
  std::optional<Generated> result;
  try {
    result.emplace(generate(p));
  } catch (const SaturationError&) {
    return {{"saturation_error", "1"}};
  }
  const AttributedGraph& g = result->graph;
  rows.push_back({"edges", std::to_string(g.num_edges())});
  rows.push_back({"h_hat", na(mixing_counts(g).h_hat)});
  const RankMetric metric = g.directed() ? RankMetric::kInDegree : RankMetric::kDegree;
  const auto scores = metric_scores(g, metric);
  std::optional<double> gini_value;
  if (std::any_of(scores.begin(), scores.end(), [](double s) { return s > 0.0; })) {
    gini_value = gini(scores);
  }
  rows.push_back({"gini", na(gini_value)});
  const std::size_t minority = g.class_size(kMinority);
  std::optional<double> top10;
  std::optional<double> inequity;
  if (minority > 0 && minority < g.num_nodes()) {
    const auto ranking = rank_by_scores(scores);
    top10 = top_k_minority_fraction(g, ranking, 10);
    inequity = rank_report(g, metric).inequity;
  }
  rows.push_back({"top10_minority", na(top10)});
  rows.push_back({"inequity_me", na(inequity)});
  if (!g.directed()) rows.push_back({"clustering", io::format_double(mean_clustering(g))});
  return rows;
}

void cmd_sweep(RunConfig& cfg, std::ostream& out) {
  cfg.set_default("model", "pah");
  cfg.set_default("reps", "10");
  cfg.set_default("threads", "0");
  cfg.set_default("out", "out");
  // Range-valued keys are resolved per cell, so defaults must not see them.
  std::set<std::string> pinned;
  for (const char* entry : {"h00", "h01", "h10", "h11"}) {
    if (cfg.has(entry)) pinned.insert(entry);
  }
  std::map<std::string, std::vector<double>> ranges;
  for (const auto& key : kSweepable) {
    if (cfg.has(key) && is_range(cfg.get(key))) ranges[key] = parse_range(cfg.get(key));
  }
  RunConfig base = cfg;
  for (const auto& [key, values] : ranges) base.set(key, io::format_double(values.front()));
  generator_defaults(base);
  for (const auto& [key, value] : base.values()) cfg.set_default(key, value);

  std::vector<std::map<std::string, double>> cells(1);
  for (const auto& [key, values] : ranges) {
    std::vector<std::map<std::string, double>> grown;
    for (const auto& cell : cells) {
      for (double v : values) {
        auto next = cell;
        next[key] = v;
        grown.push_back(std::move(next));
      }
    }
    cells = std::move(grown);
  }
  const std::size_t reps = cfg.get_uint("reps");
  if (reps < 1) throw ConfigError("reps must be at least 1");
  const std::uint64_t base_seed = base.get_uint("seed");

  std::vector<GenParams> jobs;
  for (const auto& cell : cells) {
    RunConfig cell_cfg = base;
    for (const auto& [key, v] : cell) cell_cfg.set(key, io::format_double(v));
    if (cell.contains("h")) {
      // A swept h drives the mixing matrix unless entries were pinned.
      for (const char* entry : {"h00", "h01", "h10", "h11"}) {
        if (!pinned.contains(entry)) {
          const bool diag = std::string(entry) == "h00" || std::string(entry) == "h11";
          cell_cfg.set(entry, io::format_double(diag ? cell.at("h") : 1.0 - cell.at("h")));
        }
      }
    }
    GenParams p = generator_params(cell_cfg);
    for (std::size_t rep = 0; rep < reps; ++rep) {
      p.seed = base_seed + rep;
      jobs.push_back(p);
    }
  }

  std::vector<std::vector<SweepRow>> results(jobs.size());
  std::vector<std::string> errors(jobs.size());
  parallel_for(
      jobs.size(),
      [&](std::size_t i) {
        try {
          results[i] = sweep_metrics(jobs[i]);
        } catch (const std::invalid_argument& e) {
          errors[i] = e.what();
        }
      },
      static_cast<unsigned>(cfg.get_uint("threads")));
  for (const auto& e : errors) {
    if (!e.empty()) throw ConfigError(e);
  }

  std::string table = "cell";
  for (const auto& [key, values] : ranges) table += "," + key;
  table += ",seed,metric,value\n";
  for (std::size_t i = 0; i < jobs.size(); ++i) {
    const std::size_t cell = i / reps;
    std::string prefix = std::to_string(cell);
    for (const auto& [key, v] : cells[cell]) prefix += "," + io::format_double(v);
    prefix += "," + std::to_string(jobs[i].seed);
    for (const auto& row : results[i]) table += prefix + "," + row.metric + "," + row.value + "\n";
  }
  const fs::path dir = cfg.get("out");
  io::write_text(dir / "sweep.csv", table);
  write_resolved(cfg);
  out << cells.size() << " cells x " << reps << " seeds written to " << dir.string() << "\n";
}

std::vector<Command> commands() {
  const std::vector<Flag> network = {{"network", "network path prefix"},
                                     {"directed", "treat the network as directed", true}};
  auto with = [](std::vector<Flag> a, const std::vector<Flag>& b) {
    a.insert(a.end(), b.begin(), b.end());
    return a;
  };
  std::vector<Command> cmds;
  cmds.push_back({"generate", "generate a network and its growth trace",
                  with(kGeneratorFlags, {{"seed", "random seed"}, {"out", "output directory"}}),
                  cmd_generate});
  const std::vector<Flag> fit_flags =
      with(network, {{"trace", "growth trace file (order assumed when absent)"},
                     {"models", "comma-separated candidate models"},
                     {"criterion", "bic, aic or logl"},
                     {"order-seed", "seed for the assumed directed edge order"},
                     {"out", "output directory"}});
  cmds.push_back({"fit", "fit candidate models", fit_flags,
                  [](RunConfig& c, std::ostream& o) { cmd_fit(c, o, false); }});
  cmds.push_back({"select", "fit and rank candidate models", fit_flags,
                  [](RunConfig& c, std::ostream& o) { cmd_fit(c, o, true); }});
  cmds.push_back({"rank", "minority visibility in a node ranking",
                  with(network, {{"metric", "degree, indegree or pagerank"},
                                 {"out", "output directory"}}),
                  cmd_rank});
  cmds.push_back({"sample", "benchmark sampling strategies",
                  with(network, {{"strategies", "comma-separated strategies"},
                                 {"budgets", "comma-separated node counts or fractions"},
                                 {"reps", "repetitions per cell"},
                                 {"seed", "random seed"},
                                 {"threads", "worker threads (0 = all cores)"},
                                 {"out", "output directory"}}),
                  cmd_sample});
  cmds.push_back({"spread", "run a contagion and report access equality",
                  with(network, {{"process", "ic or threshold"},
                                 {"pin", "within-class transmission probability"},
                                 {"pout", "cross-class transmission probability"},
                                 {"theta", "activation threshold"},
                                 {"seeding", "uniform, majority-only, minority-only, top-degree"},
                                 {"count", "number of seeds"},
                                 {"seed", "random seed"},
                                 {"max-steps", "step cap (0 = 10 n)"},
                                 {"out", "output directory"}}),
                  cmd_spread});
  cmds.push_back({"sweep", "generate an ensemble over parameter ranges",
                  with(kGeneratorFlags, {{"seed", "first seed"},
                                         {"reps", "seeds per cell"},
                                         {"threads", "worker threads (0 = all cores)"},
                                         {"out", "output directory"}}),
                  cmd_sweep});
  return cmds;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Attributed social network models, inference and experiments", "socnet"};
  app.require_subcommand(1);
  app.set_help_flag("--help", "print this help");
  const auto cmds = commands();
  // Flag storage per subcommand; only flags given on the command line override.
  std::map<std::string, std::map<std::string, std::string>> values;
  std::map<std::string, std::map<std::string, bool>> bools;
  std::map<std::string, std::string> config_files;
  std::map<std::string, CLI::App*> subs;
  for (const auto& cmd : cmds) {
    CLI::App* sub = app.add_subcommand(cmd.name, cmd.description);
    sub->set_help_flag("--help", "print this help");
    subs[cmd.name] = sub;
    sub->add_option("--config", config_files[cmd.name], "key=value configuration file");
    for (const auto& flag : cmd.flags) {
      if (flag.boolean) {
        sub->add_flag("--" + flag.key, bools[cmd.name][flag.key], flag.help);
      } else {
        sub->add_option("--" + flag.key, values[cmd.name][flag.key], flag.help);
      }
    }
  }

  std::vector<const char*> argv{"socnet"};
  for (const auto& a : args) argv.push_back(a.c_str());
  try {
    app.parse(static_cast<int>(argv.size()), argv.data());
  } catch (const CLI::CallForHelp&) {
    for (const auto& [name, sub] : subs) {
      if (sub->parsed()) {
        out << sub->help();
        return kExitOk;
      }
    }
    out << app.help();
    return kExitOk;
  } catch (const CLI::ParseError& e) {
    if (e.get_exit_code() == 0) {
      out << app.help();
      return kExitOk;
    }
    err << "error: " << e.what() << "\n";
    return kExitUsage;
  }

  for (const auto& cmd : cmds) {
    CLI::App* sub = subs[cmd.name];
    if (!sub->parsed()) continue;
    std::set<std::string> keys;
    for (const auto& flag : cmd.flags) keys.insert(flag.key);
    try {
      RunConfig cfg(keys);
      if (!config_files[cmd.name].empty()) cfg.load_file(config_files[cmd.name]);
      for (const auto& flag : cmd.flags) {
        if (sub->count("--" + flag.key) == 0) continue;
        if (flag.boolean) {
          cfg.set(flag.key, bools[cmd.name][flag.key] ? "true" : "false");
        } else {
          cfg.set(flag.key, values[cmd.name][flag.key]);
        }
      }
      cmd.action(cfg, out);
      return kExitOk;
    } catch (const std::invalid_argument& e) {
      err << "error: " << e.what() << "\n";
      return kExitUsage;
    } catch (const std::exception& e) {
      err << "error: " << e.what() << "\n";
      return kExitRuntime;
    }
  }
  err << "error: no subcommand\n";
  return kExitUsage;
}

}  // namespace socnet::cli
