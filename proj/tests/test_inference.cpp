#include <doctest.h>

#include <cmath>
#include <limits>
#include <numeric>

#include "oracle/oracle.hpp"
#include "socnet/generators.hpp"
#include "socnet/inference.hpp"

using namespace socnet;

namespace {

GrowthTrace manual(bool directed, std::vector<ClassLabel> labels, std::vector<EdgeEvent> events) {
  return GrowthTrace{directed, std::move(labels), std::move(events)};
}

Generated small(Model model, std::uint32_t n, std::uint64_t seed, double h = 0.7,
                double p_tc = 0.5) {
  GenParams p;
  p.model = model;
  p.n = n;
  p.m = 2;
  p.f_m = 0.3;
  p.H = MixingMatrix::symmetric(h);
  p.p_tc = p_tc;
  p.d = 0.03;
  p.seed = seed;
  return generate(p);
}

}  // namespace

TEST_CASE("mixing counts") {
  auto g = new_graph(false, {0, 0, 1, 1});
  g.add_edge(0, 1);
  g.add_edge(2, 3);
  g.add_edge(0, 2);
  g.add_edge(1, 3);
  auto mc = mixing_counts(g);
  CHECK(*mc.h_hat == 0.5);
  CHECK(mc.counts[0][1] == 2);
  CHECK(mc.counts[1][0] == 0);

  auto same = new_graph(false, {0, 0, 1, 1});
  same.add_edge(0, 1);
  same.add_edge(2, 3);
  CHECK(*mixing_counts(same).h_hat == 1.0);

  auto bip = new_graph(false, {0, 0, 1, 1});
  for (NodeId a : {0u, 1u}) {
    for (NodeId b : {2u, 3u}) bip.add_edge(a, b);
  }
  CHECK(*mixing_counts(bip).h_hat == 0.0);
  CHECK_FALSE(mixing_counts(new_graph(false, {0, 1})).h_hat.has_value());

  auto d = new_graph(true, {0, 1});
  d.add_edge(0, 1);
  mc = mixing_counts(d);
  CHECK(mc.counts[0][1] == 1);
  CHECK(mc.counts[1][0] == 0);
  CHECK(*mc.class_h_hat[0] == 0.0);
  CHECK_FALSE(mc.class_h_hat[1].has_value());
}

TEST_CASE("three-node PA trace by hand") {
  for (NodeId second : {0u, 1u}) {
    const auto t = manual(false, {0, 0, 0},
                          {{1, 0, EventKind::kFallbackUniform}, {2, second, EventKind::kPahPick}});
    const auto ll = replay_loglik(t, {Model::kPA});
    CHECK(ll.log_l == std::log(0.5));
    CHECK(ll.log_l == doctest::Approx(-0.6931).epsilon(1e-4));
    CHECK(ll.n_events == 1);
    CHECK(ll.n_fallback == 1);
  }
  // The same structure produced by the generator.
  const auto g = gen_pa(3, 1, 12);
  CHECK(replay_loglik(g.trace, {Model::kPA}).log_l == std::log(0.5));
}

TEST_CASE("impossible event gives minus infinity") {
  const auto t = manual(false, {0, 0, 0, 0},
                        {{1, 0, EventKind::kFallbackUniform}, {3, 2, EventKind::kPahPick}});
  CHECK(std::isinf(replay_loglik(t, {Model::kPA}).log_l));
  CHECK(replay_loglik(t, {Model::kPA}).log_l < 0);
  // Flagged, the same pick is uniform over three eligible nodes.
  const auto flagged = manual(false, {0, 0, 0, 0},
                              {{1, 0, EventKind::kFallbackUniform}, {3, 2, EventKind::kFallbackUniform}});
  CHECK(replay_loglik(flagged, {Model::kPA}).log_l == doctest::Approx(std::log(1.0 / 3.0)));
}

TEST_CASE("unreplayable traces and family mismatch are rejected") {
  const auto future = manual(false, {0, 0, 0}, {{1, 2, EventKind::kPahPick}});
  CHECK_THROWS_AS(replay_loglik(future, {Model::kPA}), std::invalid_argument);
  const auto dup = manual(false, {0, 0, 0}, {{1, 0, EventKind::kSeed}, {1, 0, EventKind::kPahPick}});
  CHECK_THROWS_AS(replay_loglik(dup, {Model::kPA}), std::invalid_argument);
  const auto g = small(Model::kPAH, 50, 1);
  CHECK_THROWS_AS(replay_loglik(g.trace, {Model::kDPA}), std::invalid_argument);
  CHECK_THROWS_AS(fit_model(g.trace, Model::kDH), std::invalid_argument);
  const auto only_seed = gen_pa(2, 1, 0);
  CHECK_THROWS_AS(fit_model(only_seed.trace, Model::kPA), std::invalid_argument);
}

TEST_CASE("neutral PAH scores equal PA scores") {
  for (std::uint64_t seed = 0; seed < 5; ++seed) {
    const auto g = small(Model::kPAH, 300, seed, 0.8);
    CHECK(replay_loglik(g.trace, {Model::kPAH, 0.5}).log_l ==
          replay_loglik(g.trace, {Model::kPA}).log_l);
    const auto d = small(Model::kDPAH, 150, seed, 0.8);
    CHECK(replay_loglik(d.trace, {Model::kDPAH, 0.5}).log_l ==
          replay_loglik(d.trace, {Model::kDPA}).log_l);
  }
}

TEST_CASE("replay matches the brute-force oracle") {
  Rng r(99);
  for (int i = 0; i < 24; ++i) {
    const Model gen_model = static_cast<Model>(i % 6);
    const auto g = small(gen_model, 40 + static_cast<std::uint32_t>(r.below(120)), r.next(),
                         r.uniform(), r.uniform());
    std::vector<Model> scorers;
    if (is_directed(gen_model)) {
      scorers = {Model::kDPA, Model::kDH, Model::kDPAH};
    } else {
      scorers = {Model::kPA, Model::kPAH, Model::kPATCH};
    }
    for (Model m : scorers) {
      const double h = r.uniform();
      const double p = r.uniform();
      const auto fast = replay_loglik(g.trace, {m, h, p});
      const auto slow = oracle::brute_loglik(g.trace, m, h, p);
      CHECK(fast.n_events == slow.scored);
      CHECK(fast.n_fallback == slow.fallback);
      if (std::isinf(slow.log_l)) {
        CHECK(std::isinf(fast.log_l));
      } else {
        CHECK(std::abs(fast.log_l - slow.log_l) <= 1e-9);
      }
    }
  }
}

TEST_CASE("per-pick distributions sum to one and match the oracle") {
  for (Model m : {Model::kPA, Model::kPAH, Model::kPATCH, Model::kDPA, Model::kDH, Model::kDPAH}) {
    const auto g = small(m, 80, 4);
    const ModelParams params{m, 0.65, 0.4};
    const auto dists = replay_distributions(g.trace, params);
    const auto ref = oracle::brute_distributions(g.trace, m, 0.65, 0.4);
    REQUIRE(dists.size() == ref.size());
    for (std::size_t i = 0; i < dists.size(); ++i) {
      const double s = std::accumulate(dists[i].probabilities.begin(), dists[i].probabilities.end(), 0.0);
      CHECK(s == doctest::Approx(1.0).epsilon(1e-12));
      REQUIRE(dists[i].probabilities.size() == ref[i].size());
      for (std::size_t k = 0; k < ref[i].size(); ++k) {
        CHECK(std::abs(dists[i].probabilities[k] - ref[i][k]) < 1e-12);
      }
    }
  }
}

TEST_CASE("generator pick distributions equal replay distributions at the true parameters") {
  GenParams p;
  p.model = Model::kPAH;
  p.n = 120;
  p.m = 2;
  p.f_m = 0.3;
  p.H = MixingMatrix::symmetric(0.75);
  p.seed = 21;
  std::vector<std::vector<double>> seen;
  const auto g = generate(p, [&](const PickView& v) {
    seen.emplace_back(v.probabilities.begin(), v.probabilities.end());
  });
  const auto dists = replay_distributions(g.trace, {Model::kPAH, 0.75});
  REQUIRE(dists.size() == seen.size());
  for (std::size_t i = 0; i < seen.size(); ++i) {
    REQUIRE(seen[i].size() == dists[i].probabilities.size());
    for (std::size_t k = 0; k < seen[i].size(); ++k) {
      CHECK(std::abs(seen[i][k] - dists[i].probabilities[k]) < 1e-12);
    }
  }
}

TEST_CASE("likelihood under the generating parameters is finite") {
  for (std::uint64_t seed = 0; seed < 6; ++seed) {
    for (Model m : {Model::kPA, Model::kPAH, Model::kPATCH, Model::kDPA, Model::kDH, Model::kDPAH}) {
      const auto g = small(m, 150, seed, 0.9, 0.7);
      const auto ll = replay_loglik(g.trace, {m, 0.9, 0.7});
      CHECK(std::isfinite(ll.log_l));
      CHECK(ll.log_l <= 0.0);
    }
  }
  // Extreme homophily traces stay finite because forced picks are flagged.
  for (double h : {0.0, 1.0}) {
    const auto g = gen_pah(300, 2, 0.3, MixingMatrix::symmetric(h), 3);
    CHECK(std::isfinite(replay_loglik(g.trace, {Model::kPAH, h}).log_l));
  }
}

TEST_CASE("grid fit equals exhaustive brute-force search") {
  for (std::uint64_t seed = 0; seed < 3; ++seed) {
    for (Model m : {Model::kPA, Model::kPAH, Model::kPATCH, Model::kDPA, Model::kDH, Model::kDPAH}) {
      const auto g = small(m, 30, seed, 0.8, 0.6);
      const auto fit = fit_model(g.trace, m);
      const auto ref = oracle::brute_grid_fit(g.trace, m);
      CHECK(std::abs(fit.log_l - ref.log_l) <= 1e-9);
      const double at = replay_loglik(g.trace, {m, fit.h_hat.value_or(0.5), fit.ptc_hat.value_or(0.0)}).log_l;
      CHECK(std::abs(at - fit.log_l) <= 1e-9);
      if (fit.h_hat) CHECK(std::abs(*fit.h_hat - ref.h) < 0.02);
    }
  }
}

TEST_CASE("fit report formulas") {
  CHECK(aic(1, -10.0) == 22.0);
  CHECK(bic(1, -10.0, 100) == 20.0 + std::log(100.0));
  CHECK(std::abs(bic(1, -10.0, 100) - 24.6052) < 5e-5);
  CHECK(bic(0, -10.0, 100) == 20.0);
  const auto g = small(Model::kPATCH, 200, 8);
  for (Model m : {Model::kPA, Model::kPAH, Model::kPATCH}) {
    const auto r = fit_model(g.trace, m);
    CHECK(r.k == free_parameters(m));
    CHECK(r.aic == doctest::Approx(2.0 * r.k - 2.0 * r.log_l).epsilon(1e-14));
    CHECK(r.bic == doctest::Approx(r.k * std::log(static_cast<double>(r.n_events)) - 2.0 * r.log_l)
                       .epsilon(1e-14));
    CHECK(r.log_l <= 0.0);
    CHECK(r.h_hat.has_value() == (m != Model::kPA));
    CHECK(r.ptc_hat.has_value() == (m == Model::kPATCH));
  }
  CHECK(free_parameters(Model::kDPA) == 0);
  CHECK(free_parameters(Model::kDH) == 1);
  CHECK(free_parameters(Model::kDPAH) == 1);
}

TEST_CASE("likelihood ratio test") {
  FitReport nested{Model::kPA};
  nested.log_l = -12.0;
  FitReport full{Model::kPAH};
  full.log_l = -10.0;
  full.k = 1;
  const auto r = lrt(nested, full);
  CHECK(r.statistic == 4.0);
  CHECK(r.df == 1);
  CHECK(r.p_value == doctest::Approx(0.0455003).epsilon(1e-6));

  const auto same = lrt(nested, FitReport{Model::kPAH, {}, {}, -12.0, 1});
  CHECK(same.statistic == 0.0);
  CHECK(same.p_value == 1.0);

  CHECK(chi_square_sf(0.0, 2) == 1.0);
  for (double x : {0.1, 1.0, 3.84, 10.0, 40.0}) {
    CHECK(chi_square_sf(x, 1) == doctest::Approx(oracle::chi_square_sf(x, 1)).epsilon(1e-12));
    CHECK(chi_square_sf(x, 2) == doctest::Approx(oracle::chi_square_sf(x, 2)).epsilon(1e-12));
  }
  CHECK_THROWS_AS(lrt(FitReport{Model::kDH}, FitReport{Model::kDPAH}), std::invalid_argument);
  CHECK(is_nested(Model::kPAH, Model::kPATCH));
  CHECK(is_nested(Model::kDPA, Model::kDPAH));
  CHECK_FALSE(is_nested(Model::kPATCH, Model::kPAH));
}

TEST_CASE("nesting monotonicity at the MLE") {
  for (std::uint64_t seed = 0; seed < 6; ++seed) {
    const auto g = small(static_cast<Model>(seed % 3), 200, seed);
    const double pa = fit_model(g.trace, Model::kPA).log_l;
    const double pah = fit_model(g.trace, Model::kPAH).log_l;
    const double patch = fit_model(g.trace, Model::kPATCH).log_l;
    CHECK(pah >= pa - 1e-9);
    CHECK(patch >= pah - 1e-9);
    const auto d = small(Model::kDPAH, 120, seed);
    CHECK(fit_model(d.trace, Model::kDPAH).log_l >= fit_model(d.trace, Model::kDPA).log_l - 1e-9);
  }
}

TEST_CASE("bayes factors") {
  const auto g = small(Model::kPAH, 300, 2, 0.9);
  CHECK(bayes_factor(g.trace, Model::kPAH, Model::kPAH) == 0.0);
  CHECK(bayes_factor(g.trace, Model::kPAH, Model::kPA) ==
        doctest::Approx(-bayes_factor(g.trace, Model::kPA, Model::kPAH)));
  // A k = 0 model's evidence is its likelihood.
  const auto pa = fit_model(g.trace, Model::kPA);
  CHECK(pa.log_evidence == pa.log_l);
  // Evidence never exceeds the maximum likelihood under a unit-mass prior.
  const auto pah = fit_model(g.trace, Model::kPAH);
  CHECK(pah.log_evidence <= pah.log_l + 1e-12);
  // Trapezoid rule over the raw grid.
  const auto grid = loglik_grid(g.trace, Model::kPAH);
  long double z = 0.0L;
  for (std::size_t i = 0; i < grid.size(); ++i) {
    const double w = (i == 0 || i + 1 == grid.size()) ? 0.005 : 0.01;
    z += w * std::exp(static_cast<long double>(grid[i] - pah.log_l));
  }
  CHECK(pah.log_evidence == doctest::Approx(pah.log_l + std::log(static_cast<double>(z))).epsilon(1e-12));
}

TEST_CASE("select_model") {
  const auto g = small(Model::kPAH, 400, 5, 0.9);
  const std::vector<Model> one{Model::kPA};
  const auto single = select_model(g.trace, one);
  CHECK(single.reports.size() == 1);
  CHECK(single.comparisons.empty());

  const std::vector<Model> mixed{Model::kPA, Model::kDPA};
  CHECK_THROWS_AS(select_model(g.trace, mixed), std::invalid_argument);
  CHECK_THROWS_AS(select_model(g.trace, std::vector<Model>{}), std::invalid_argument);

  const std::vector<Model> all{Model::kPA, Model::kPAH, Model::kPATCH};
  const auto table = select_model(g.trace, all);
  CHECK(table.reports.size() == 3);
  CHECK(table.comparisons.size() == 3);
  for (std::size_t i = 1; i < table.reports.size(); ++i) {
    CHECK(table.reports[i - 1].bic <= table.reports[i].bic);
  }
  for (const auto& c : table.comparisons) CHECK(c.lrt.has_value());
  const auto by_aic = select_model(g.trace, all, Criterion::kAIC);
  for (std::size_t i = 1; i < by_aic.reports.size(); ++i) {
    CHECK(by_aic.reports[i - 1].aic <= by_aic.reports[i].aic);
  }
  const auto unsorted = select_model(g.trace, all, Criterion::kBIC, false);
  CHECK(unsorted.reports[0].model == Model::kPA);
  CHECK(unsorted.reports[2].model == Model::kPATCH);

  const std::vector<Model> directed{Model::kDPA, Model::kDH, Model::kDPAH};
  const auto d = small(Model::kDPAH, 150, 5, 0.9);
  const auto dt = select_model(d.trace, directed);
  int with_lrt = 0;
  for (const auto& c : dt.comparisons) with_lrt += c.lrt.has_value();
  CHECK(with_lrt == 1);
}

TEST_CASE("homophily recovery at moderate size") {
  const auto g = gen_pah(3000, 2, 0.2, MixingMatrix::symmetric(0.8), 1);
  const auto fit = fit_model(g.trace, Model::kPAH);
  CHECK(*fit.h_hat >= 0.75);
  CHECK(*fit.h_hat <= 0.85);
}

TEST_CASE("order-assumed traces") {
  const auto g = small(Model::kPATCH, 200, 3);
  const auto t = order_assumed_trace(g.graph, 0);
  CHECK(replay_graph(t) == g.graph);
  CHECK(t.events.front().kind == EventKind::kFallbackUniform);
  CHECK(std::isfinite(replay_loglik(t, {Model::kPAH, 0.7}).log_l));

  const auto d = small(Model::kDPAH, 100, 3);
  const auto a = order_assumed_trace(d.graph, 5);
  CHECK(replay_graph(a) == d.graph);
  CHECK(a == order_assumed_trace(d.graph, 5));
  CHECK_FALSE(a == order_assumed_trace(d.graph, 6));
}
